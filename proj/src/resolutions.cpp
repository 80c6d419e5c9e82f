#include "homforge/resolutions.hpp"

#include <algorithm>
#include <functional>

namespace homforge {

// ---- koszul ------------------------------------------------------------------

Complex koszul(const AlgebraPtr& A, const std::vector<RingElem>& elems) {
    if (elems.empty()) throw UserError("koszul complex needs at least one element");
    int n = static_cast<int>(elems.size());
    bool graded = A->backend() == Backend::graded;
    std::vector<int> edeg(n, 0);
    if (graded) {
        for (int i = 0; i < n; ++i) {
            auto d = elems[i].homogeneous_degree();
            if (!d) throw UserError("koszul over the graded backend needs homogeneous elements");
            edeg[i] = *d;
        }
    }
    // subsets of {0..n-1} of size p, ordered lexicographically
    std::vector<std::vector<std::vector<int>>> subsets(n + 1);
    std::vector<int> cur;
    std::function<void(int, int)> gen = [&](int start, int left) {
        if (left == 0) {
            subsets[cur.size()].push_back(cur);
            return;
        }
        for (int i = start; i <= n - left; ++i) {
            cur.push_back(i);
            gen(i + 1, left - 1);
            cur.pop_back();
        }
    };
    for (int p = 0; p <= n; ++p) {
        cur.clear();
        gen(0, p);
    }
    std::map<int, FreeModule> terms;
    for (int p = 0; p <= n; ++p) {
        FreeModule t{static_cast<int>(subsets[p].size()), std::nullopt};
        if (graded) {
            std::vector<int> dg;
            for (auto& S : subsets[p]) {
                int d = 0;
                for (int i : S) d += edeg[i];
                dg.push_back(-d);
            }
            t.degrees = std::move(dg);
        }
        terms[-p] = std::move(t);
    }
    std::map<int, MatrixOverA> diffs;
    for (int p = 1; p <= n; ++p) {
        // d^{-p} : Lambda^p -> Lambda^{p-1}
        MatrixOverA d(A, static_cast<int>(subsets[p - 1].size()),
                      static_cast<int>(subsets[p].size()));
        std::map<std::vector<int>, int> index;
        for (std::size_t t = 0; t < subsets[p - 1].size(); ++t)
            index[subsets[p - 1][t]] = static_cast<int>(t);
        for (std::size_t c = 0; c < subsets[p].size(); ++c) {
            const auto& S = subsets[p][c];
            for (std::size_t j = 0; j < S.size(); ++j) {
                std::vector<int> T = S;
                T.erase(T.begin() + static_cast<long>(j));
                int r = index[T];
                RingElem coeff = (j % 2 == 0) ? elems[S[j]] : -elems[S[j]];
                d.at(r, static_cast<int>(c)) = d.at(r, static_cast<int>(c)) + coeff;
            }
        }
        diffs.emplace(-p, std::move(d));
    }
    return Complex::make(A, std::move(terms), std::move(diffs));
}

// ---- k-presented modules -------------------------------------------------------

namespace {

std::vector<Scalar> avec_to_k(const AlgebraPtr& alg, const std::vector<RingElem>& v) {
    const Field& F = alg->field();
    int dA = alg->dim();
    std::vector<Scalar> out(v.size() * dA, F.zero());
    for (std::size_t g = 0; g < v.size(); ++g)
        for (auto& [m, c] : v[g].terms()) out[g * dA + alg->basis_index(m)] = c;
    return out;
}

std::vector<RingElem> k_to_avec(const AlgebraPtr& alg, const std::vector<Scalar>& v,
                                int gens) {
    const Field& F = alg->field();
    int dA = alg->dim();
    std::vector<RingElem> out(gens, alg->zero());
    for (int g = 0; g < gens; ++g) {
        RingElem acc = alg->zero();
        for (int b = 0; b < dA; ++b) {
            const Scalar& c = v[g * dA + b];
            if (!F.is_zero(c)) acc = acc + alg->monomial_elem(alg->basis()[b], c);
        }
        out[g] = acc;
    }
    return out;
}

KMat row(const Field& F, const std::vector<Scalar>& v) {
    KMat m(F, 1, static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) m.at(0, static_cast<int>(i)) = v[i];
    return m;
}

std::vector<Scalar> row_of(const KMat& m, int r) {
    std::vector<Scalar> v(m.cols(), m.field().zero());
    for (int c = 0; c < m.cols(); ++c) v[c] = m.at(r, c);
    return v;
}

}  // namespace

KMat KModule::action_of(const RingElem& a) const {
    const Field& F = alg->field();
    KMat out(F, dim, dim);
    for (auto& [m, c] : a.terms()) {
        KMat acc = KMat::identity(F, dim);
        for (std::size_t v = 0; v < m.e.size(); ++v)
            for (int e = 0; e < m.e[v]; ++e) acc = action[v].mul(acc);
        out = out.add(acc.scaled(c));
    }
    return out;
}

KMat KModule::annihilator() const {
    const Field& F = alg->field();
    int dA = alg->dim();
    // a |-> action(a) is k-linear; kernel in A's k-coordinates
    KMat sys(F, dim * dim, dA);
    for (int b = 0; b < dA; ++b) {
        KMat ab = action_of(alg->monomial_elem(alg->basis()[b], F.one()));
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) sys.at(r * dim + c, b) = ab.at(r, c);
    }
    return kernel_basis(sys);
}

KModule kmodule_free(const AlgebraPtr& A, int rank) {
    KModule N;
    N.alg = A;
    N.dim = rank * A->dim();
    for (std::size_t v = 0; v < A->vars().size(); ++v)
        N.action.push_back(
            MatrixOverA::scalar(A, rank, A->variable(static_cast<int>(v))).k_expand());
    return N;
}

KModule kmodule_e_power(const AlgebraPtr& A, int rank) {
    KModule N;
    N.alg = A;
    N.dim = rank * A->dim();
    for (std::size_t v = 0; v < A->vars().size(); ++v)
        N.action.push_back(
            MatrixOverA::scalar(A, rank, A->variable(static_cast<int>(v))).k_expand(true));
    return N;
}

KModule kmodule_from_presentation(const ModulePresentation& M) {
    const AlgebraPtr& A = M.alg;
    if (A->backend() != Backend::artinian)
        throw UnsupportedBackend("k-presented modules require the artinian backend");
    const Field& F = A->field();
    int dA = A->dim();
    int full = M.generators * dA;
    // image of the relations as a subspace of A^g
    KMat rel = M.relations.cols() > 0 ? M.relations.k_expand() : KMat(F, full, 0);
    KMat img = row_space_basis(rel.transpose());
    KMat fullbasis = KMat::identity(F, full);
    KMat reps = complete_basis(img, fullbasis);
    KMat img_and_reps = img.vstack(reps);
    KModule N;
    N.alg = A;
    N.dim = reps.rows();
    auto project = [&](const std::vector<Scalar>& v) {
        auto sol = solve(img_and_reps.transpose(), v);
        if (!sol) throw InternalInconsistency("projection outside span");
        std::vector<Scalar> out(N.dim, F.zero());
        for (int i = 0; i < N.dim; ++i) out[i] = (*sol)[img.rows() + i];
        return out;
    };
    for (std::size_t v = 0; v < A->vars().size(); ++v) {
        KMat act = MatrixOverA::scalar(A, M.generators, A->variable(static_cast<int>(v)))
                       .k_expand();
        KMat out(F, N.dim, N.dim);
        for (int c = 0; c < N.dim; ++c) {
            auto img_vec = act.apply(row_of(reps, c));
            auto p = project(img_vec);
            for (int r = 0; r < N.dim; ++r) out.at(r, c) = p[r];
        }
        N.action.push_back(std::move(out));
    }
    return N;
}

// ---- minimal resolutions --------------------------------------------------------

ResolutionSlice minimal_resolution_of(const KModule& N, int bound) {
    const AlgebraPtr& A = N.alg;
    const Field& F = A->field();
    int dA = A->dim();
    ResolutionSlice out;
    if (bound < 0) throw UserError("resolution bound must be non-negative");
    if (N.dim == 0) {
        out.complex = Complex::zero(A);
        out.betti = {};
        out.augmentation = KMat(F, 0, 0);
        return out;
    }
    // minimal generators: a basis of N / mN
    std::vector<std::vector<Scalar>> mrows;
    for (std::size_t v = 0; v < N.action.size(); ++v)
        for (int c = 0; c < N.dim; ++c) {
            std::vector<Scalar> e(N.dim, F.zero());
            e[c] = F.one();
            mrows.push_back(N.action[v].apply(e));
        }
    KMat mN(F, static_cast<int>(mrows.size()), N.dim);
    for (std::size_t r = 0; r < mrows.size(); ++r)
        for (int c = 0; c < N.dim; ++c) mN.at(static_cast<int>(r), c) = mrows[r][c];
    KMat gens = complete_basis(row_space_basis(mN), KMat::identity(F, N.dim));
    int b0 = gens.rows();
    out.betti.push_back(b0);
    // augmentation A^{b0} -> N
    KMat eps(F, N.dim, b0 * dA);
    for (int g = 0; g < b0; ++g)
        for (int b = 0; b < dA; ++b) {
            auto col = N.action_of(A->monomial_elem(A->basis()[b], F.one())).apply(row_of(gens, g));
            for (int r = 0; r < N.dim; ++r) eps.at(r, g * dA + b) = col[r];
        }
    out.augmentation = eps;

    std::map<int, FreeModule> terms{{0, FreeModule{b0, std::nullopt}}};
    std::map<int, MatrixOverA> diffs;
    KMat K = kernel_basis(eps);  // syzygies inside A^{b0}
    if (bound == 0) out.truncated = K.rows() > 0;
    int prev = b0;
    for (int step = 1; step <= bound; ++step) {
        if (K.rows() == 0) break;
        // minimal generators of the syzygy module: K / mK
        std::vector<std::vector<Scalar>> mk;
        for (std::size_t v = 0; v < A->vars().size(); ++v) {
            KMat act = MatrixOverA::scalar(A, prev, A->variable(static_cast<int>(v))).k_expand();
            for (int r = 0; r < K.rows(); ++r) mk.push_back(act.apply(row_of(K, r)));
        }
        KMat mkm(F, static_cast<int>(mk.size()), prev * dA);
        for (std::size_t r = 0; r < mk.size(); ++r)
            for (int c = 0; c < prev * dA; ++c) mkm.at(static_cast<int>(r), c) = mk[r][c];
        KMat mingens = complete_basis(row_space_basis(mkm), K);
        int bi = mingens.rows();
        if (bi == 0) throw InternalInconsistency("nonzero syzygy module with no generators");
        out.betti.push_back(bi);
        MatrixOverA d(A, prev, bi);
        for (int c = 0; c < bi; ++c) {
            auto col = k_to_avec(A, row_of(mingens, c), prev);
            for (int r = 0; r < prev; ++r) d.at(r, c) = col[r];
        }
        terms[-step] = FreeModule{bi, std::nullopt};
        diffs.emplace(-step, d);
        if (step < bound) K = kernel_basis(d.k_expand());
        else out.truncated = kernel_basis(d.k_expand()).rows() > 0;
        prev = bi;
    }
    out.betti.resize(static_cast<std::size_t>(bound) + 1, 0);
    out.complex = Complex::make(A, std::move(terms), std::move(diffs));
    return out;
}

namespace {

/// Internal-degree-respecting resolution over the graded backend, certified
/// inside the window.
ResolutionSlice graded_minimal_resolution(const ModulePresentation& M, int bound) {
    const AlgebraPtr& A = M.alg;
    const Field& F = A->field();
    int window = A->graded_window();
    if (!M.degrees || static_cast<int>(M.degrees->size()) != M.generators)
        throw UserError("graded resolution needs generator degrees");
    ResolutionSlice out;
    std::map<int, FreeModule> terms{{0, FreeModule{M.generators, M.degrees}}};
    std::map<int, MatrixOverA> diffs;
    out.betti.push_back(M.generators);

    MatrixOverA cur = M.relations;  // columns generate the current syzygy source
    std::vector<int> cur_deg = *M.degrees;
    for (int step = 1; step <= bound; ++step) {
        // minimal homogeneous generators of ker(prev) = column span of relations
        // at step 1; afterwards the kernel of the previous differential
        std::vector<std::pair<int, std::vector<RingElem>>> gens;  // (degree, column)
        if (step == 1) {
            // minimalize the presented relation columns degreewise
            for (int d = 0; d <= window; ++d) {
                for (int c = 0; c < cur.cols(); ++c) {
                    std::vector<RingElem> col(cur.rows(), A->zero());
                    int cd = -1;
                    bool zero = true, homog = true;
                    for (int r = 0; r < cur.rows(); ++r) {
                        col[r] = cur.at(r, c);
                        if (col[r].is_zero()) continue;
                        zero = false;
                        auto hd = col[r].homogeneous_degree();
                        if (!hd) homog = false;
                        else {
                            int total = *hd - cur_deg[r];
                            if (cd < 0) cd = total;
                            else if (cd != total) homog = false;
                        }
                    }
                    if (zero || !homog) {
                        if (!zero) throw UserError("graded resolution needs homogeneous relations");
                        continue;
                    }
                    if (cd == d) gens.emplace_back(d, col);
                }
            }
        } else {
            // kernel of the previous differential, degree by degree
            const MatrixOverA& prev = diffs.at(-(step - 1));
            const auto& tgt_deg = *terms.at(-(step - 1) + 1).degrees;
            const auto& src_deg = *terms.at(-(step - 1)).degrees;
            // span of x_v * (lower-degree kernel) per degree, to pick minimal gens
            std::map<int, KMat> kernel_by_deg;
            for (int d = 0; d <= window; ++d) {
                KMat sl = prev.slice(tgt_deg, src_deg, d);
                kernel_by_deg.emplace(d, kernel_basis(sl));
            }
            for (int d = 0; d <= window; ++d) {
                const KMat& K = kernel_by_deg.at(d);
                if (K.rows() == 0) continue;
                auto basis_d = graded_slice_basis(A, src_deg, d);
                // image of multiplication by each variable from degree d-1
                std::vector<std::vector<Scalar>> mk;
                if (d > 0) {
                    auto basis_prev = graded_slice_basis(A, src_deg, d - 1);
                    std::map<std::pair<int, std::vector<int>>, int> idx;
                    for (std::size_t t = 0; t < basis_d.size(); ++t)
                        idx[{basis_d[t].first, basis_d[t].second.e}] = static_cast<int>(t);
                    const KMat& Kp = kernel_by_deg.at(d - 1);
                    for (std::size_t v = 0; v < A->vars().size(); ++v) {
                        for (int r = 0; r < Kp.rows(); ++r) {
                            std::vector<Scalar> img(basis_d.size(), F.zero());
                            for (std::size_t t = 0; t < basis_prev.size(); ++t) {
                                if (F.is_zero(Kp.at(r, static_cast<int>(t)))) continue;
                                Monomial m = basis_prev[t].second;
                                m.e[v] += 1;
                                if (A->kills(m)) continue;
                                auto it = idx.find({basis_prev[t].first, m.e});
                                if (it == idx.end()) continue;
                                img[it->second] =
                                    F.add(img[it->second], Kp.at(r, static_cast<int>(t)));
                            }
                            mk.push_back(std::move(img));
                        }
                    }
                }
                KMat mkm(F, static_cast<int>(mk.size()), static_cast<int>(basis_d.size()));
                for (std::size_t r = 0; r < mk.size(); ++r)
                    for (std::size_t c = 0; c < basis_d.size(); ++c)
                        mkm.at(static_cast<int>(r), static_cast<int>(c)) = mk[r][c];
                KMat newg = complete_basis(row_space_basis(mkm), K);
                for (int g = 0; g < newg.rows(); ++g) {
                    std::vector<RingElem> col(src_deg.size(), A->zero());
                    for (std::size_t t = 0; t < basis_d.size(); ++t) {
                        const Scalar& c = newg.at(g, static_cast<int>(t));
                        if (F.is_zero(c)) continue;
                        col[basis_d[t].first] =
                            col[basis_d[t].first] + A->monomial_elem(basis_d[t].second, c);
                    }
                    gens.emplace_back(d, col);
                }
            }
        }
        if (gens.empty()) break;
        int prev_rank = terms.at(-(step - 1)).rank;
        MatrixOverA d(A, prev_rank, static_cast<int>(gens.size()));
        std::vector<int> deg;
        for (std::size_t c = 0; c < gens.size(); ++c) {
            for (int r = 0; r < prev_rank; ++r) d.at(r, static_cast<int>(c)) = gens[c].second[r];
            deg.push_back(-gens[c].first);  // slice degree d means generator degree -d + ...
        }
        // generator degree g of the new column with entries of degree
        // entry = tgt_deg - g, entry total degree = d - (-src...); the slice
        // convention gives g = -(d) + 0 shifted by nothing for the free cover
        // built on degree-0 generators; recompute from the first nonzero entry
        for (std::size_t c = 0; c < gens.size(); ++c) {
            const auto& src_deg = *terms.at(-(step - 1)).degrees;
            for (int r = 0; r < prev_rank; ++r) {
                if (d.at(r, static_cast<int>(c)).is_zero()) continue;
                deg[c] = src_deg[r] - *d.at(r, static_cast<int>(c)).homogeneous_degree();
                break;
            }
        }
        terms[-step] = FreeModule{static_cast<int>(gens.size()), deg};
        diffs.emplace(-step, d);
        out.betti.push_back(static_cast<int>(gens.size()));
        if (step == bound) out.truncated = true;
    }
    out.betti.resize(static_cast<std::size_t>(bound) + 1, 0);
    out.complex = Complex::make(A, std::move(terms), std::move(diffs));
    out.augmentation = KMat(F, 0, 0);
    return out;
}

}  // namespace

ResolutionSlice minimal_resolution(const ModulePresentation& M, int bound) {
    if (bound < 0) throw UserError("resolution bound must be non-negative");
    if (M.alg->backend() == Backend::graded) return graded_minimal_resolution(M, bound);
    return minimal_resolution_of(kmodule_from_presentation(M), bound);
}

// ---- module complexes ------------------------------------------------------------

int KModComplex::dim(int i) const {
    auto it = terms.find(i);
    return it == terms.end() ? 0 : it->second.dim;
}

KMat KModComplex::diff(int i) const {
    auto it = diffs.find(i);
    if (it != diffs.end()) return it->second;
    return KMat(alg->field(), dim(i + 1), dim(i));
}

std::optional<std::pair<int, int>> KModComplex::support() const {
    int lo = 0, hi = 0;
    bool any = false;
    for (auto& [i, t] : terms) {
        if (t.dim == 0) continue;
        if (!any) lo = hi = i;
        lo = std::min(lo, i);
        hi = std::max(hi, i);
        any = true;
    }
    if (!any) return std::nullopt;
    return std::make_pair(lo, hi);
}

void KModComplex::validate() const {
    auto s = support();
    if (!s) return;
    for (int i = s->first; i < s->second; ++i) {
        if (!diff(i + 1).mul(diff(i)).is_zero())
            throw InternalInconsistency("module complex: d^2 != 0 at " + std::to_string(i));
        for (std::size_t v = 0; v < alg->vars().size(); ++v) {
            const KModule& src = terms.at(i);
            auto it = terms.find(i + 1);
            if (it == terms.end()) continue;
            if (!diff(i).mul(src.action[v]).eq(it->second.action[v].mul(diff(i))))
                throw InternalInconsistency("module complex differential is not A-linear");
        }
    }
}

KModComplex kmod_from_complex(const Complex& C) {
    KModComplex M;
    M.alg = C.algebra();
    bool contra = C.e_power_terms();
    auto s = C.support();
    if (!s) return M;
    for (int i = s->first; i <= s->second; ++i) {
        if (C.rank(i) == 0) continue;
        M.terms.emplace(i, contra ? kmodule_e_power(M.alg, C.rank(i))
                                  : kmodule_free(M.alg, C.rank(i)));
    }
    for (int i = s->first; i < s->second; ++i) {
        if (C.rank(i) == 0 || C.rank(i + 1) == 0) continue;
        KMat d = C.diff(i).k_expand(contra);
        if (!d.is_zero()) M.diffs.emplace(i, std::move(d));
    }
    return M;
}

KModComplex kmod_stalk(const KModule& N, int degree) {
    KModComplex M;
    M.alg = N.alg;
    if (N.dim > 0) M.terms.emplace(degree, N);
    return M;
}

int KModComplex::cohomology_dim(int i) const {
    KMat din = diff(i - 1), dout = diff(i);
    return kernel_basis(dout).rows() - rank(din);
}

KMat free_term_coords(const Complex& P, int i, bool contragredient) {
    (void)contragredient;
    return KMat::identity(P.algebra()->field(), P.rank(i) * P.algebra()->dim());
}

// ---- min free model -----------------------------------------------------------------

namespace {

struct ModelCtx {
    AlgebraPtr alg;
    bool truncated = false;
};

/// Placement of a resolution slice ending at cohomological degree t.
FreeModel place_resolution(const ResolutionSlice& R, const KModule& N, int t,
                           ModelCtx& ctx) {
    const Field& F = N.alg->field();
    std::map<int, FreeModule> terms;
    std::map<int, MatrixOverA> diffs;
    if (auto s = R.complex.support()) {
        for (int i = s->first; i <= s->second; ++i)
            if (R.complex.rank(i) > 0) terms[i + t] = FreeModule{R.complex.rank(i), std::nullopt};
        for (int i = s->first; i < s->second; ++i) {
            MatrixOverA d = R.complex.diff(i);
            if (!d.is_zero()) diffs.emplace(i + t, d);
        }
    }
    FreeModel out;
    out.complex = Complex::make(ctx.alg, std::move(terms), std::move(diffs));
    if (N.dim > 0) out.quasi_iso.emplace(t, R.augmentation);
    out.truncated = R.truncated;
    ctx.truncated = ctx.truncated || R.truncated;
    (void)F;
    return out;
}

/// Strict lift: w_tilde with q_N o w_tilde = phi, built degreewise descending.
/// phi must be an A-linear k-level chain map P_S -> N.
std::optional<ChainMap> lift_strict(const Complex& P_S, const Complex& P_N,
                                    const std::map<int, KMat>& q_N,
                                    const KModComplex& N, const std::map<int, KMat>& phi,
                                    int hard_floor) {
    AlgebraPtr alg = P_S.algebra();
    const Field& F = alg->field();
    int dA = alg->dim();
    auto qn = [&](int i) -> KMat {
        auto it = q_N.find(i);
        if (it != q_N.end()) return it->second;
        return KMat(F, N.dim(i), P_N.rank(i) * dA);
    };
    auto ph = [&](int i) -> KMat {
        auto it = phi.find(i);
        if (it != phi.end()) return it->second;
        return KMat(F, N.dim(i), P_S.rank(i) * dA);
    };
    auto sup = P_S.support();
    std::map<int, MatrixOverA> comps;
    if (!sup) return ChainMap::zero(P_S, P_N);
    auto wt = [&](int i) -> MatrixOverA {
        auto it = comps.find(i);
        if (it != comps.end()) return it->second;
        return MatrixOverA(alg, P_N.rank(i), P_S.rank(i));
    };
    bool clean = true;
    for (int r = sup->second; r >= sup->first; --r) {
        int cols = P_S.rank(r);
        if (cols == 0) continue;
        MatrixOverA comp(alg, P_N.rank(r), cols);
        KMat qr = qn(r);
        KMat phir = ph(r);
        MatrixOverA wnext = wt(r + 1);
        MatrixOverA dps = P_S.diff(r);
        for (int j = 0; j < cols; ++j) {
            // stage 1: xi with q(xi) = phi(e_j)
            std::vector<Scalar> rhs(N.dim(r), F.zero());
            for (int t = 0; t < N.dim(r); ++t) rhs[t] = phir.at(t, j * dA + 0);
            std::vector<RingElem> xi(P_N.rank(r), alg->zero());
            if (N.dim(r) > 0 && P_N.rank(r) > 0) {
                auto sol = solve(qr, rhs);
                if (!sol) return std::nullopt;
                xi = k_to_avec(alg, *sol, P_N.rank(r));
            } else if (N.dim(r) > 0) {
                bool allzero = true;
                for (auto& s : rhs) allzero = allzero && F.is_zero(s);
                if (!allzero) return std::nullopt;
            }
            // stage 2: correct inside ker(q) so the chain square commutes:
            // delta = d(xi) - wnext(d e_j) must become d(c), q(c) = 0
            std::vector<RingElem> delta(P_N.rank(r + 1), alg->zero());
            MatrixOverA dpn = P_N.diff(r);
            for (int t = 0; t < P_N.rank(r + 1); ++t) {
                RingElem acc = alg->zero();
                for (int u = 0; u < P_N.rank(r); ++u) acc = acc + dpn.at(t, u) * xi[u];
                for (int u = 0; u < P_S.rank(r + 1); ++u)
                    acc = acc - wnext.at(t, u) * dps.at(u, j);
                delta[t] = acc;
            }
            bool dz = true;
            for (auto& e : delta) dz = dz && e.is_zero();
            if (!dz) {
                KMat dk = dpn.k_expand();
                KMat qk = qr;
                KMat sysm = dk.vstack(qk);
                auto dvec = avec_to_k(alg, delta);
                std::vector<Scalar> rhs2(sysm.rows(), F.zero());
                for (std::size_t t = 0; t < dvec.size(); ++t) rhs2[t] = dvec[t];
                auto sol = solve(sysm, rhs2);
                if (!sol) {
                    if (r > hard_floor) return std::nullopt;
                    clean = false;  // truncation edge: leave the square broken
                } else {
                    auto c = k_to_avec(alg, *sol, P_N.rank(r));
                    for (int t = 0; t < P_N.rank(r); ++t) xi[t] = xi[t] - c[t];
                }
            }
            for (int t = 0; t < P_N.rank(r); ++t) comp.at(t, j) = xi[t];
        }
        if (!comp.is_zero()) comps.emplace(r, std::move(comp));
    }
    if (clean) return ChainMap::make(P_S, P_N, std::move(comps));
    return ChainMap::make_trusted(P_S, P_N, std::move(comps));
}

FreeModel model_recursive(const KModComplex& M, int cutoff, int slack, ModelCtx& ctx) {
    const Field& F = ctx.alg->field();
    int dA = ctx.alg->dim();
    auto sup = M.support();
    FreeModel out;
    if (!sup) {
        out.complex = Complex::zero(ctx.alg);
        return out;
    }
    if (sup->first == sup->second) {
        int t = sup->first;
        const KModule& N = M.terms.at(t);
        ResolutionSlice R = minimal_resolution_of(N, std::max(0, t - (cutoff - slack)));
        return place_resolution(R, N, t, ctx);
    }
    int lo = sup->first;
    // split off the bottom term
    KModComplex N;
    N.alg = M.alg;
    for (auto& [i, term] : M.terms)
        if (i > lo) N.terms.emplace(i, term);
    for (auto& [i, d] : M.diffs)
        if (i > lo) N.diffs.emplace(i, d);
    KModComplex S = kmod_stalk(M.terms.at(lo), lo + 1);
    FreeModel FN = model_recursive(N, cutoff, slack + 2, ctx);
    FreeModel FS = model_recursive(S, cutoff, slack + 2, ctx);
    // w : S -> N is the bottom differential of M
    std::map<int, KMat> w;
    if (M.dim(lo) > 0 && N.dim(lo + 1) > 0) w.emplace(lo + 1, M.diff(lo));
    // phi = w o q_S
    std::map<int, KMat> phi;
    {
        auto itq = FS.quasi_iso.find(lo + 1);
        auto itw = w.find(lo + 1);
        if (itq != FS.quasi_iso.end() && itw != w.end())
            phi.emplace(lo + 1, itw->second.mul(itq->second));
    }
    auto wt = lift_strict(FS.complex, FN.complex, FN.quasi_iso, N, phi, cutoff);
    if (!wt) throw InternalInconsistency("comparison lift failed above the truncation floor");
    bool rough = ctx.truncated;
    Complex C = cone(*wt, !rough);
    // q on the cone: degree n carries (u, v) in P_S^{n+1} + P_N^n to
    // q_N(v) at n > lo and to -q_S(u) at n = lo
    std::map<int, KMat> q;
    auto csup = C.support();
    if (csup) {
        for (int n = csup->first; n <= csup->second; ++n) {
            int ru = FS.complex.rank(n + 1), rv = FN.complex.rank(n);
            int dn = M.dim(n);
            if (dn == 0 || ru + rv == 0) continue;
            KMat qn(F, dn, (ru + rv) * dA);
            if (n == lo) {
                auto it = FS.quasi_iso.find(n + 1);
                if (it != FS.quasi_iso.end())
                    for (int r = 0; r < dn; ++r)
                        for (int c = 0; c < ru * dA; ++c)
                            qn.at(r, c) = F.neg(it->second.at(r, c));
            }
            auto itn = FN.quasi_iso.find(n);
            if (itn != FN.quasi_iso.end() && rv > 0)
                for (int r = 0; r < dn; ++r)
                    for (int c = 0; c < rv * dA; ++c)
                        qn.at(r, ru * dA + c) = itn->second.at(r, c);
            if (!qn.is_zero()) q.emplace(n, std::move(qn));
        }
    }
    out.complex = C;
    out.quasi_iso = std::move(q);
    out.truncated = ctx.truncated;
    return out;
}

}  // namespace

FreeModel min_free_model(const KModComplex& M, int cutoff) {
    ModelCtx ctx{M.alg, false};
    M.validate();
    FreeModel out = model_recursive(M, cutoff, 0, ctx);
    out.truncated = ctx.truncated;
    if (out.truncated) {
        out.complex = out.complex.truncate_below(cutoff);
        for (auto it = out.quasi_iso.begin(); it != out.quasi_iso.end();)
            it = it->first < cutoff ? out.quasi_iso.erase(it) : std::next(it);
    } else {
        // fully materialized: rebuild through the checked constructor
        std::map<int, FreeModule> terms;
        std::map<int, MatrixOverA> diffs;
        if (auto s = out.complex.support()) {
            for (int i = s->first; i <= s->second; ++i)
                if (out.complex.rank(i) > 0)
                    terms[i] = FreeModule{out.complex.rank(i), std::nullopt};
            for (int i = s->first; i < s->second; ++i) {
                MatrixOverA d = out.complex.diff(i);
                if (!d.is_zero()) diffs.emplace(i, d);
            }
        }
        out.complex = Complex::make(M.alg, std::move(terms), std::move(diffs));
    }
    return out;
}

bool verify_quasi_iso(const Complex& P, const KModComplex& M,
                      const std::map<int, KMat>& q, int certified_above) {
    const Field& F = P.algebra()->field();
    auto qn = [&](int i) -> KMat {
        auto it = q.find(i);
        if (it != q.end()) return it->second;
        return KMat(F, M.dim(i), P.rank(i) * P.algebra()->dim());
    };
    auto sp = P.support();
    auto sm = M.support();
    if (!sp && !sm) return true;
    int lo = std::min(sp ? sp->first : INT32_MAX, sm ? sm->first : INT32_MAX);
    int hi = std::max(sp ? sp->second : INT32_MIN, sm ? sm->second : INT32_MIN);
    for (int i = std::max(lo - 1, certified_above + 1); i <= hi + 1; ++i) {
        // chain map: q^{i+1} d_P = d_M q^i
        if (!qn(i + 1).mul(P.diff(i).k_expand()).eq(M.diff(i).mul(qn(i)))) return false;
        // equal cohomology dimensions
        KMat dP = P.diff(i).k_expand(), dPin = P.diff(i - 1).k_expand();
        KMat dM = M.diff(i), dMin = M.diff(i - 1);
        int hp = kernel_basis(dP).rows() - rank(dPin);
        int hm = kernel_basis(dM).rows() - rank(dMin);
        if (hp != hm) return false;
        if (hp == 0) continue;
        // injectivity of the induced map: reps of H(P) stay independent in M/B_M
        KMat cyc = kernel_basis(dP);
        KMat bnd = row_space_basis(dPin.transpose());
        KMat reps = complete_basis(bnd, cyc);
        KMat bm = row_space_basis(dMin.transpose());
        KMat acc = bm;
        for (int r = 0; r < reps.rows(); ++r) {
            auto v = qn(i).apply(row_of(reps, r));
            KMat cand = acc.vstack(row(F, v));
            if (rank(cand) == acc.rows()) return false;  // class dies in H(M)
            acc = row_space_basis(cand);
        }
    }
    return true;
}

ProjResolution proj_resolution_of_complex(const Complex& C, int bound) {
    if (C.algebra()->backend() != Backend::artinian)
        throw UnsupportedBackend("projective resolutions require the artinian backend");
    if (bound < 0) throw UserError("resolution bound must be non-negative");
    ProjResolution out;
    auto s = C.support();
    if (!s) {
        out.complex = Complex::zero(C.algebra());
        return out;
    }
    if (!C.e_power_terms()) {
        // already a bounded free complex: its minimal model is homotopy-minimal
        MinimizeResult m = minimize(C);
        out.complex = m.minimal;
        // witness: k-expansion of the inclusion into C
        if (auto ms = m.minimal.support())
            for (int i = ms->first; i <= ms->second; ++i)
                if (m.minimal.rank(i) > 0)
                    out.quasi_iso.emplace(i, m.include.component(i).k_expand());
        return out;
    }
    KModComplex M = kmod_from_complex(C);
    int cutoff = s->first - bound;
    FreeModel fm = min_free_model(M, cutoff);
    MinimizeResult m = minimize(fm.complex);
    out.truncated = fm.truncated;
    out.complex = m.minimal;
    if (auto ms = m.minimal.support()) {
        for (int i = ms->first; i <= ms->second; ++i) {
            if (m.minimal.rank(i) == 0) continue;
            auto it = fm.quasi_iso.find(i);
            if (it == fm.quasi_iso.end()) continue;
            out.quasi_iso.emplace(i, it->second.mul(m.include.component(i).k_expand()));
        }
    }
    return out;
}

KModule cohomology_kmodule(const Complex& C, int i) {
    Cohomology H = cohomology(C, i);
    const Field& F = C.algebra()->field();
    KModule N;
    N.alg = C.algebra();
    N.dim = H.kdim;
    KMat all = H.boundaries.vstack(H.reps);
    for (std::size_t v = 0; v < C.algebra()->vars().size(); ++v) {
        KMat act = term_action(C, i, C.algebra()->variable(static_cast<int>(v)));
        KMat out(F, N.dim, N.dim);
        for (int r = 0; r < N.dim; ++r) {
            auto img = act.apply(row_of(H.reps, r));
            auto sol = solve(all.transpose(), img);
            if (!sol) throw InternalInconsistency("action leaves the cycle space");
            for (int t = 0; t < N.dim; ++t) out.at(t, r) = (*sol)[H.boundaries.rows() + t];
        }
        N.action.push_back(std::move(out));
    }
    return N;
}

ModulePresentation presentation_of(const KModule& N) {
    ResolutionSlice R = minimal_resolution_of(N, 1);
    ModulePresentation M;
    M.alg = N.alg;
    M.generators = R.betti.empty() ? 0 : R.betti[0];
    M.relations = R.betti.size() > 1 ? R.complex.diff(-1)
                                     : MatrixOverA(N.alg, M.generators, 0);
    return M;
}

Complex inj_resolution_via_matlis(const Complex& C, int bound) {
    if (C.algebra()->backend() != Backend::artinian)
        throw UnsupportedBackend("injective resolutions require the artinian backend");
    if (C.is_zero()) return C;
    // E-dual, resolve, E-dual back: terms are finite powers of E
    Complex ed = matlis_dual_raw(C);
    ProjResolution p = proj_resolution_of_complex(ed, bound);
    return matlis_dual_raw(p.complex);
}

}  // namespace homforge
