#include "homforge/homotopy.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace homforge {

std::uint64_t Rng::next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Scalar Rng::scalar(const Field& F) {
    if (F.kind() == Field::Kind::prime)
        return F.from_int(static_cast<long>(next() % F.characteristic()));
    return F.from_int(static_cast<long>(next() % 17) - 8);
}

Scalar Rng::nonzero_scalar(const Field& F) {
    for (int tries = 0; tries < 64; ++tries) {
        Scalar s = scalar(F);
        if (!F.is_zero(s)) return s;
    }
    return F.one();
}

// ---- null homotopy -----------------------------------------------------------

namespace {

/// System with a single degree -1 unknown s and the equation ds + sd = rhs.
LinearMapSystem homotopy_system(const Complex& X, const Complex& Y, int* var_out,
                                int internal_offset) {
    LinearMapSystem sys(X.algebra());
    int s = sys.add_unknown(X, Y, -1, internal_offset);
    int eq = sys.add_equation(X, Y, 0);
    Complex Yc = Y, Xc = X;
    sys.add_term(eq, s, 0, [Yc](int i) { return Yc.diff(i - 1); },
                 [Xc](int i) { return MatrixOverA::identity(Xc.algebra(), Xc.rank(i)); },
                 X.algebra()->one());
    sys.add_term(eq, s, 1,
                 [Yc](int i) { return MatrixOverA::identity(Yc.algebra(), Yc.rank(i)); },
                 [Xc](int i) { return Xc.diff(i); }, X.algebra()->one());
    *var_out = s;
    return sys;
}

}  // namespace

NullHomotopyVerdict is_null_homotopic(const ChainMap& f, int internal_offset) {
    int var = 0;
    LinearMapSystem sys = homotopy_system(f.source(), f.target(), &var, internal_offset);
    sys.add_rhs_chain_map(0, f);
    auto sol = sys.solve_particular();
    NullHomotopyVerdict v;
    if (!sol) return v;
    v.null_homotopic = true;
    Homotopy h{f.source(), f.target(), sol->vars[var]};
    if (!h.boundary().eq(f)) throw InternalInconsistency("homotopy witness fails ds + sd = f");
    v.witness = std::move(h);
    return v;
}

// ---- Hom_K -------------------------------------------------------------------

HomSpaceK::HomSpaceK(Complex U, Complex V, int shift, int internal_offset)
    : src_(std::move(U)), tgt_shifted_(V.shift(shift)), sys_(src_.algebra()) {
    AlgebraPtr alg = src_.algebra();
    var_ = sys_.add_unknown(src_, tgt_shifted_, 0, internal_offset);
    int eq = sys_.add_equation(src_, tgt_shifted_, 1);
    Complex S = src_, T = tgt_shifted_;
    sys_.add_term(eq, var_, 0, [T](int i) { return T.diff(i); },
                  [S](int i) { return MatrixOverA::identity(S.algebra(), S.rank(i)); },
                  alg->one());
    sys_.add_term(eq, var_, 1,
                  [T](int i) { return MatrixOverA::identity(T.algebra(), T.rank(i + 1)); },
                  [S](int i) { return S.diff(i); }, -alg->one());
    auto solutions = sys_.solve_homogeneous_basis();
    const Field& F = alg->field();
    int width = sys_.var_dim(var_);
    chain_ = KMat(F, static_cast<int>(solutions.size()), width);
    for (std::size_t r = 0; r < solutions.size(); ++r) {
        auto v = sys_.var_to_kvec(var_, solutions[r].vars[var_]);
        for (int c = 0; c < width; ++c) chain_.at(static_cast<int>(r), c) = v[c];
    }
    chain_ = row_space_basis(chain_);

    // null-homotopic subspace: boundaries of arbitrary degree -1 maps
    LinearMapSystem hsys(alg);
    int hvar = hsys.add_unknown(src_, tgt_shifted_, -1, internal_offset);
    auto units = hsys.unit_assignments(hvar);
    KMat nulls(F, static_cast<int>(units.size()), width);
    for (std::size_t r = 0; r < units.size(); ++r) {
        Homotopy h{src_, tgt_shifted_, units[r].vars[hvar]};
        auto vec = sys_.var_to_kvec(var_, h.boundary().components());
        for (int c = 0; c < width; ++c) nulls.at(static_cast<int>(r), c) = vec[c];
    }
    null_ = row_space_basis(nulls);
    reps_ = complete_basis(null_, chain_);
    for (int r = 0; r < reps_.rows(); ++r) {
        std::vector<Scalar> v(width, F.zero());
        for (int c = 0; c < width; ++c) v[c] = reps_.at(r, c);
        basis_.push_back(ChainMap::make(src_, tgt_shifted_, sys_.kvec_to_var(var_, v)));
    }
}

std::vector<Scalar> HomSpaceK::coords(const ChainMap& f) const {
    const Field& F = src_.algebra()->field();
    auto vec = sys_.var_to_kvec(var_, f.components());
    if (reps_.rows() == 0) {
        return {};
    }
    KMat all = null_.vstack(reps_);
    auto sol = solve(all.transpose(), vec);
    if (!sol) throw InternalInconsistency("chain map outside the computed Hom space");
    std::vector<Scalar> out(reps_.rows(), F.zero());
    for (int i = 0; i < reps_.rows(); ++i) out[i] = (*sol)[null_.rows() + i];
    return out;
}

ChainMap HomSpaceK::from_coords(const std::vector<Scalar>& c) const {
    const Field& F = src_.algebra()->field();
    std::vector<Scalar> vec(reps_.cols(), F.zero());
    for (int i = 0; i < reps_.rows(); ++i)
        for (int j = 0; j < reps_.cols(); ++j)
            vec[j] = F.add(vec[j], F.mul(c.at(i), reps_.at(i, j)));
    return ChainMap::make(src_, tgt_shifted_, sys_.kvec_to_var(var_, vec));
}

int hom_space_K_dim(const Complex& U, const Complex& V) {
    return HomSpaceK(U, V, 0).dim();
}

// ---- minimize ----------------------------------------------------------------

bool is_minimal(const Complex& X) {
    auto s = X.support();
    if (!s) return true;
    for (int i = s->first; i < s->second; ++i) {
        MatrixOverA d = X.diff(i);
        for (int r = 0; r < d.rows(); ++r)
            for (int c = 0; c < d.cols(); ++c)
                if (d.at(r, c).is_unit()) return false;
    }
    return true;
}

namespace {

Homotopy compose_homotopy(const Homotopy& h_acc, const ChainMap& incl, const Homotopy& h_step,
                          const ChainMap& proj) {
    // h_acc + incl o h_step o proj, all on the outer complex
    std::map<int, MatrixOverA> maps;
    auto s = h_acc.source.support();
    if (s) {
        for (int i = s->first; i <= s->second + 1; ++i) {
            MatrixOverA m = h_acc.component(i).add(
                incl.component(i - 1).mul(h_step.component(i)).mul(proj.component(i)));
            if (!m.is_zero()) maps.emplace(i, std::move(m));
        }
    }
    return Homotopy{h_acc.source, h_acc.target, std::move(maps)};
}

}  // namespace

MinimizeResult minimize(const Complex& X) {
    AlgebraPtr alg = X.algebra();
    Complex cur = X;
    ChainMap proj = ChainMap::identity(X);
    ChainMap incl = ChainMap::identity(X);
    Homotopy h{X, X, {}};
    bool input_minimal = true;

    while (true) {
        auto sup = cur.support();
        int pi = 0, pr = -1, pc = -1;
        if (sup) {
            for (int i = sup->first; i < sup->second && pr < 0; ++i) {
                MatrixOverA d = cur.diff(i);
                for (int r = 0; r < d.rows() && pr < 0; ++r)
                    for (int c = 0; c < d.cols(); ++c)
                        if (d.at(r, c).is_unit()) {
                            pi = i;
                            pr = r;
                            pc = c;
                            break;
                        }
            }
        }
        if (pr < 0) break;
        input_minimal = false;

        MatrixOverA M = cur.diff(pi);
        RingElem u = M.at(pr, pc);
        RingElem uinv = u.inverse();
        int ri = cur.rank(pi), ro = cur.rank(pi + 1);
        bool graded = alg->backend() == Backend::graded;

        // next complex: drop generator pc at degree pi and pr at degree pi+1
        std::map<int, FreeModule> terms;
        std::map<int, MatrixOverA> diffs;
        for (auto& [d, t] : cur.terms()) {
            FreeModule ft = t;
            if (d == pi || d == pi + 1) {
                int drop = (d == pi) ? pc : pr;
                ft.rank -= 1;
                if (ft.degrees) {
                    auto dg = *ft.degrees;
                    dg.erase(dg.begin() + drop);
                    ft.degrees = std::move(dg);
                }
            }
            if (ft.rank > 0) terms[d] = std::move(ft);
        }
        auto old_sup = *cur.support();
        for (int d = old_sup.first; d < old_sup.second; ++d) {
            MatrixOverA m = cur.diff(d);
            MatrixOverA nd(alg, 0, 0);
            if (d == pi) {
                nd = MatrixOverA(alg, ro - 1, ri - 1);
                for (int r = 0, rr = 0; r < ro; ++r) {
                    if (r == pr) continue;
                    for (int c = 0, cc = 0; c < ri; ++c) {
                        if (c == pc) continue;
                        nd.at(rr, cc) = m.at(r, c) - m.at(r, pc) * uinv * m.at(pr, c);
                        ++cc;
                    }
                    ++rr;
                }
            } else if (d == pi - 1) {
                nd = MatrixOverA(alg, ri - 1, m.cols());
                for (int r = 0, rr = 0; r < ri; ++r) {
                    if (r == pc) continue;
                    for (int c = 0; c < m.cols(); ++c) nd.at(rr, c) = m.at(r, c);
                    ++rr;
                }
            } else if (d == pi + 1) {
                nd = MatrixOverA(alg, m.rows(), ro - 1);
                for (int c = 0, cc = 0; c < ro; ++c) {
                    if (c == pr) continue;
                    for (int r = 0; r < m.rows(); ++r) nd.at(r, cc) = m.at(r, c);
                    ++cc;
                }
            } else {
                nd = m;
            }
            if (nd.rows() > 0 && nd.cols() > 0 && !nd.is_zero()) diffs.emplace(d, std::move(nd));
        }
        Complex next = Complex::make(alg, std::move(terms), std::move(diffs));
        (void)graded;

        // step witnesses
        std::map<int, MatrixOverA> pstep, istep, hstep;
        for (auto& [d, t] : cur.terms()) {
            int rc = t.rank;
            if (d == pi) {
                MatrixOverA p(alg, rc - 1, rc);  // drop e_pc
                for (int r = 0, rr = 0; r < rc; ++r) {
                    if (r == pc) continue;
                    p.at(rr, r) = alg->one();
                    ++rr;
                }
                pstep.emplace(d, std::move(p));
                MatrixOverA ins(alg, rc, rc - 1);  // f_j = e_j - uinv M[pr][j] e_pc
                for (int c = 0, cc = 0; c < rc; ++c) {
                    if (c == pc) continue;
                    ins.at(c, cc) = alg->one();
                    ins.at(pc, cc) = -(uinv * M.at(pr, c));
                    ++cc;
                }
                istep.emplace(d, std::move(ins));
            } else if (d == pi + 1) {
                MatrixOverA p(alg, rc - 1, rc);
                for (int r = 0, rr = 0; r < rc; ++r) {
                    if (r == pr) continue;
                    p.at(rr, r) = alg->one();
                    p.at(rr, pr) = -(uinv * M.at(r, pc));
                    ++rr;
                }
                pstep.emplace(d, std::move(p));
                MatrixOverA ins(alg, rc, rc - 1);
                for (int c = 0, cc = 0; c < rc; ++c) {
                    if (c == pr) continue;
                    ins.at(c, cc) = alg->one();
                    ++cc;
                }
                istep.emplace(d, std::move(ins));
            } else {
                pstep.emplace(d, MatrixOverA::identity(alg, rc));
                istep.emplace(d, MatrixOverA::identity(alg, rc));
            }
        }
        {
            MatrixOverA s(alg, ri, ro);
            s.at(pc, pr) = uinv;
            hstep.emplace(pi + 1, std::move(s));
        }
        ChainMap pm = ChainMap::make(cur, next, std::move(pstep));
        ChainMap im = ChainMap::make(next, cur, std::move(istep));
        Homotopy hs{cur, cur, std::move(hstep)};
        if (!pm.compose(im).eq(ChainMap::identity(next)))
            throw InternalInconsistency("minimize: projection o inclusion != id");
        if (!ChainMap::identity(cur).sub(im.compose(pm)).eq(hs.boundary()))
            throw InternalInconsistency("minimize: homotopy witness broken");

        h = compose_homotopy(h, incl, hs, proj);
        proj = pm.compose(proj);
        incl = incl.compose(im);
        cur = next;
    }

    MinimizeResult r;
    r.minimal = cur;
    r.project = proj;
    r.include = incl;
    r.h = h;
    r.is_minimal_input = input_minimal;
    return r;
}

int width(const Complex& X) {
    MinimizeResult m = minimize(X);
    auto s = m.minimal.support();
    if (!s) throw UserError("width is undefined for the zero complex");
    return s->second - s->first;
}

int rank_invariant(const Complex& X) { return minimize(X).minimal.total_rank(); }

int mu_hom(const Complex& X, int j) {
    if (X.algebra()->backend() != Backend::artinian)
        throw UnsupportedBackend("mu_hom requires the artinian backend");
    if (!is_minimal(X)) throw UserError("mu_hom requires a minimal complex");
    HomSpaceK H(X, X, j);
    int m = H.dim();
    if (m == 0) return 0;
    const Field& F = X.algebra()->field();
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t v = 0; v < X.algebra()->vars().size(); ++v) {
        RingElem xv = X.algebra()->variable(static_cast<int>(v));
        for (const ChainMap& f : H.basis()) rows.push_back(H.coords(f.scaled(xv)));
    }
    KMat mm(F, static_cast<int>(rows.size()), m);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < m; ++c) mm.at(static_cast<int>(r), c) = rows[r][c];
    return m - rank(mm);
}

// ---- isomorphism -------------------------------------------------------------

namespace {

std::optional<ChainMap> chain_map_inverse(const ChainMap& f) {
    const Complex& U = f.source();
    const Complex& V = f.target();
    LinearMapSystem sys(U.algebra());
    int g = sys.add_unknown(V, U, 0);
    ChainMap fc = f;
    int eq1 = sys.add_equation(V, V, 0);  // f o g = id_V
    sys.add_term(eq1, g, 0, [fc](int i) { return fc.component(i); },
                 [fcV = V](int i) { return MatrixOverA::identity(fcV.algebra(), fcV.rank(i)); },
                 U.algebra()->one());
    sys.add_rhs_chain_map(eq1, ChainMap::identity(V));
    int eq2 = sys.add_equation(U, U, 0);  // g o f = id_U
    sys.add_term(eq2, g, 0,
                 [Uc = U](int i) { return MatrixOverA::identity(Uc.algebra(), Uc.rank(i)); },
                 [fc](int i) { return fc.component(i); }, U.algebra()->one());
    sys.add_rhs_chain_map(eq2, ChainMap::identity(U));
    auto sol = sys.solve_particular();
    if (!sol) return std::nullopt;
    ChainMap gi = ChainMap::make(V, U, sol->vars[g]);
    if (!f.compose(gi).eq(ChainMap::identity(V)) || !gi.compose(f).eq(ChainMap::identity(U)))
        throw InternalInconsistency("inverse verification failed");
    return gi;
}

bool components_invertible_mod_m(const ChainMap& f) {
    auto s = f.source().support();
    if (!s) return true;
    for (int i = s->first; i <= s->second; ++i) {
        int r = f.source().rank(i);
        if (f.target().rank(i) != r) return false;
        if (r == 0) continue;
        KMat k = f.component(i).mod_m();
        if (rank(k) != r) return false;
    }
    return true;
}

}  // namespace

IsoVerdict iso_in_K(const Complex& X, const Complex& Y, std::uint64_t seed) {
    IsoVerdict out;
    out.seed = seed;
    out.min_x = minimize(X);
    out.min_y = minimize(Y);
    const Complex& U = out.min_x.minimal;
    const Complex& V = out.min_y.minimal;
    AlgebraPtr alg = X.algebra();
    if (U.is_zero() && V.is_zero()) {
        out.kind = IsoVerdictKind::isomorphic;
        out.iso = ChainMap::zero(U, V);
        out.iso_inverse = ChainMap::zero(V, U);
        return out;
    }
    auto su = U.support(), sv = V.support();
    if (!su || !sv || *su != *sv) {
        out.kind = IsoVerdictKind::not_isomorphic;
        out.separator = "minimal supports differ";
        return out;
    }
    for (int i = su->first; i <= su->second; ++i) {
        if (U.rank(i) != V.rank(i)) {
            out.kind = IsoVerdictKind::not_isomorphic;
            out.separator = "minimal term ranks differ at index " + std::to_string(i);
            return out;
        }
        if (alg->backend() == Backend::graded) {
            auto du = U.degrees(i), dv = V.degrees(i);
            std::sort(du.begin(), du.end());
            std::sort(dv.begin(), dv.end());
            if (du != dv) {
                out.kind = IsoVerdictKind::not_isomorphic;
                out.separator = "generator degrees differ at index " + std::to_string(i);
                return out;
            }
        }
    }
    for (int i = su->first; i <= su->second; ++i) {
        if (alg->backend() == Backend::artinian) {
            if (cohomology_dim(U, i) != cohomology_dim(V, i)) {
                out.kind = IsoVerdictKind::not_isomorphic;
                out.separator = "H^" + std::to_string(i) + " dimensions differ";
                return out;
            }
        } else {
            int w = alg->graded_window();
            if (graded_cohomology_dims(U, i, w) != graded_cohomology_dims(V, i, w)) {
                out.kind = IsoVerdictKind::not_isomorphic;
                out.separator = "graded H^" + std::to_string(i) + " dimensions differ";
                return out;
            }
        }
    }

    HomSpaceK H(U, V, 0);
    const Field& F = alg->field();
    int m = H.dim();
    auto try_candidate = [&](const std::vector<Scalar>& c) -> bool {
        ChainMap f = H.from_coords(c);
        if (!components_invertible_mod_m(f)) return false;
        auto inv = chain_map_inverse(f);
        if (!inv) return false;
        out.kind = IsoVerdictKind::isomorphic;
        out.iso = f;
        out.iso_inverse = *inv;
        return true;
    };
    if (m > 0) {
        Rng rng(seed);
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<Scalar> c(m, F.zero());
            for (int i = 0; i < m; ++i) c[i] = rng.scalar(F);
            if (try_candidate(c)) return out;
        }
        // exhaustive sweep over small prime-field coefficient spaces
        if (F.kind() == Field::Kind::prime && m <= 12) {
            double total = 1;
            for (int i = 0; i < m; ++i) total *= static_cast<double>(F.characteristic());
            if (total <= (1 << 18)) {
                std::vector<std::uint64_t> odo(m, 0);
                while (true) {
                    std::vector<Scalar> c(m, F.zero());
                    for (int i = 0; i < m; ++i)
                        c[i] = F.from_int(static_cast<long>(odo[i]));
                    if (try_candidate(c)) return out;
                    int k = 0;
                    while (k < m && ++odo[k] == F.characteristic()) odo[k++] = 0;
                    if (k == m) break;
                }
                out.kind = IsoVerdictKind::not_isomorphic;
                out.separator = "exhausted Hom space without an invertible map";
                return out;
            }
        }
    }
    out.kind = IsoVerdictKind::undecided;
    return out;
}

// ---- endomorphism algebra ----------------------------------------------------

std::vector<Scalar> EndAlgebra::multiply(const std::vector<Scalar>& u,
                                         const std::vector<Scalar>& v) const {
    const Field& F = complex.algebra()->field();
    int n = dim();
    std::vector<Scalar> out(n, F.zero());
    for (int i = 0; i < n; ++i) {
        if (F.is_zero(u[i])) continue;
        for (int j = 0; j < n; ++j) {
            if (F.is_zero(v[j])) continue;
            Scalar c = F.mul(u[i], v[j]);
            for (int k = 0; k < n; ++k)
                out[k] = F.add(out[k], F.mul(c, table[i][j][k]));
        }
    }
    return out;
}

namespace {

KMat left_mult_matrix(const EndAlgebra& E, const std::vector<Scalar>& u) {
    const Field& F = E.complex.algebra()->field();
    int n = E.dim();
    KMat L(F, n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<Scalar> ej(n, F.zero());
        ej[j] = F.one();
        auto col = E.multiply(u, ej);
        for (int i = 0; i < n; ++i) L.at(i, j) = col[i];
    }
    return L;
}

Scalar trace(const KMat& m) {
    const Field& F = m.field();
    Scalar t = F.zero();
    for (int i = 0; i < m.rows(); ++i) t = F.add(t, m.at(i, i));
    return t;
}

/// Span of `seed` closed under left/right multiplication by all basis vectors.
KMat ideal_closure(const EndAlgebra& E, KMat seed) {
    const Field& F = E.complex.algebra()->field();
    int n = E.dim();
    KMat acc = row_space_basis(seed);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<Scalar>> extra;
        for (int r = 0; r < acc.rows(); ++r) {
            std::vector<Scalar> v(n, F.zero());
            for (int c = 0; c < n; ++c) v[c] = acc.at(r, c);
            for (int b = 0; b < n; ++b) {
                std::vector<Scalar> eb(n, F.zero());
                eb[b] = F.one();
                extra.push_back(E.multiply(eb, v));
                extra.push_back(E.multiply(v, eb));
            }
        }
        KMat ext(F, static_cast<int>(extra.size()), n);
        for (std::size_t r = 0; r < extra.size(); ++r)
            for (int c = 0; c < n; ++c) ext.at(static_cast<int>(r), c) = extra[r][c];
        KMat bigger = row_space_basis(acc.vstack(ext));
        if (bigger.rows() > acc.rows()) {
            acc = bigger;
            grew = true;
        }
    }
    return acc;
}

bool span_nilpotent(const EndAlgebra& E, const KMat& span) {
    const Field& F = E.complex.algebra()->field();
    int n = E.dim();
    KMat cur = row_space_basis(span);
    for (int iter = 0; iter <= n + 1; ++iter) {
        if (cur.rows() == 0) return true;
        std::vector<std::vector<Scalar>> prods;
        for (int r = 0; r < cur.rows(); ++r)
            for (int s = 0; s < span.rows(); ++s) {
                std::vector<Scalar> u(n, F.zero()), v(n, F.zero());
                for (int c = 0; c < n; ++c) {
                    u[c] = cur.at(r, c);
                    v[c] = span.at(s, c);
                }
                prods.push_back(E.multiply(u, v));
            }
        KMat pm(F, static_cast<int>(prods.size()), n);
        for (std::size_t r = 0; r < prods.size(); ++r)
            for (int c = 0; c < n; ++c) pm.at(static_cast<int>(r), c) = prods[r][c];
        KMat nxt = row_space_basis(pm);
        if (nxt.rows() == cur.rows() && rowspace_contained(nxt, cur)) return false;
        cur = nxt;
    }
    return false;
}

/// Center of E as row-space of coordinates.
KMat center_of(const EndAlgebra& E) {
    const Field& F = E.complex.algebra()->field();
    int n = E.dim();
    std::vector<std::map<int, Scalar>> rows;
    // unknown z: for each basis b_i: z b_i - b_i z = 0, linear in z coords
    KMat sys(F, n * n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            // coefficient of z_k in (z b_i - b_i z), component l
            std::vector<Scalar> ek(n, F.zero());
            ek[k] = F.one();
            std::vector<Scalar> ei(n, F.zero());
            ei[i] = F.one();
            auto zb = E.multiply(ek, ei);
            auto bz = E.multiply(ei, ek);
            for (int l = 0; l < n; ++l)
                sys.at(i * n + l, k) = F.sub(zb[l], bz[l]);
        }
    return kernel_basis(sys);
}

/// Frobenius-kernel nilradical of a commutative span (prime field only).
KMat commutative_nilradical_fp(const EndAlgebra& E, const KMat& zbasis) {
    const Field& F = E.complex.algebra()->field();
    std::uint64_t p = F.characteristic();
    int n = E.dim();
    // phi(v) = v^p is F_p-linear on a commutative subalgebra
    auto pth_power = [&](std::vector<Scalar> v) {
        std::vector<Scalar> acc(n, F.zero());
        bool acc_set = false;
        std::vector<Scalar> base = v;
        std::uint64_t e = p;
        while (e) {
            if (e & 1) {
                acc = acc_set ? E.multiply(acc, base) : base;
                acc_set = true;
            }
            e >>= 1;
            if (e) base = E.multiply(base, base);
        }
        return acc;
    };
    KMat cur = zbasis;  // basis of current subspace, coords in E
    // iterate: intersect with preimage of ker(phi) until stable; kernel of
    // iterated Frobenius = nilpotent part
    for (int it = 0; it < n + 2; ++it) {
        // matrix of phi restricted to cur, expressed in cur coordinates
        int m = cur.rows();
        if (m == 0) return cur;
        KMat phi(F, n, m);
        for (int c = 0; c < m; ++c) {
            std::vector<Scalar> v(n, F.zero());
            for (int j = 0; j < n; ++j) v[j] = cur.at(c, j);
            auto pv = pth_power(v);
            for (int r = 0; r < n; ++r) phi.at(r, c) = pv[r];
        }
        KMat ker = kernel_basis(phi);  // coords in cur basis
        KMat next(F, ker.rows(), n);
        for (int r = 0; r < ker.rows(); ++r)
            for (int j = 0; j < n; ++j) {
                Scalar s = F.zero();
                for (int c = 0; c < m; ++c)
                    s = F.add(s, F.mul(ker.at(r, c), cur.at(c, j)));
                next.at(r, j) = s;
            }
        next = row_space_basis(next);
        if (next.rows() == cur.rows()) return next;
        cur = next;
    }
    return cur;
}

KMat radical_of(const EndAlgebra& E) {
    const Field& F = E.complex.algebra()->field();
    int n = E.dim();
    if (F.kind() == Field::Kind::rationals) {
        // Dickson: radical of the trace form of the regular representation
        KMat T(F, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<Scalar> ei(n, F.zero()), ej(n, F.zero());
                ei[i] = F.one();
                ej[j] = F.one();
                T.at(i, j) = trace(left_mult_matrix(E, E.multiply(ei, ej)));
            }
        return kernel_basis(T);
    }
    // prime field: grow the ideal generated by the nilpotent part of the
    // center until the quotient has none left
    KMat J(F, 0, n);
    for (int round = 0; round <= n; ++round) {
        // center of E/J, pulled back: solve commutators into J
        KMat zb = center_of(E);
        // work inside the subalgebra spanned by center + J
        KMat sub = row_space_basis(zb.vstack(J));
        KMat nil = commutative_nilradical_fp(E, sub);
        // elements of J are nilpotent but possibly not in the center; keep union
        KMat seed = row_space_basis(nil.vstack(J));
        if (seed.rows() == J.rows() && rowspace_contained(seed, J)) break;
        KMat JJ = ideal_closure(E, seed);
        if (!span_nilpotent(E, JJ))
            throw UserError("radical computation incomplete for this endomorphism algebra");
        if (JJ.rows() == J.rows()) break;
        J = JJ;
    }
    return J;
}

}  // namespace

EndAlgebra end_algebra(const Complex& X) {
    if (X.algebra()->backend() != Backend::artinian)
        throw UnsupportedBackend("end_algebra requires the artinian backend");
    HomSpaceK H(X, X, 0);
    EndAlgebra E;
    E.complex = X;
    E.basis = H.basis();
    int n = H.dim();
    E.table.assign(n, std::vector<std::vector<Scalar>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            E.table[i][j] = H.coords(E.basis[i].compose(E.basis[j]));
    if (n > 0) E.identity = H.coords(ChainMap::identity(X));
    E.radical = radical_of(E);
    // the radical must be nilpotent under table multiplication
    if (!span_nilpotent(E, E.radical))
        throw InternalInconsistency("computed radical is not nilpotent");
    return E;
}

// ---- indecomposability ---------------------------------------------------------

namespace {

/// Minimal polynomial of u in the quotient E / rad (coordinates in E).
std::vector<Scalar> quotient_min_poly(const EndAlgebra& E, const KMat& rad_and_reps,
                                      int rad_rows, const std::vector<Scalar>& u) {
    const Field& F = E.complex.algebra()->field();
    int qdim = rad_and_reps.rows() - rad_rows;
    auto to_q = [&](const std::vector<Scalar>& v) {
        auto sol = solve(rad_and_reps.transpose(), v);
        if (!sol) throw InternalInconsistency("vector outside algebra span");
        std::vector<Scalar> q(qdim, F.zero());
        for (int i = 0; i < qdim; ++i) q[i] = (*sol)[rad_rows + i];
        return q;
    };
    std::vector<std::vector<Scalar>> qpowers;  // images of u^k in the quotient
    std::vector<Scalar> cur = E.identity;
    std::size_t computed = 0;
    while (true) {
        ++computed;
        qpowers.push_back(to_q(cur));
        KMat P(F, static_cast<int>(qpowers.size()), qdim);
        for (std::size_t r = 0; r < qpowers.size(); ++r)
            for (int c = 0; c < qdim; ++c) P.at(static_cast<int>(r), c) = qpowers[r][c];
        if (rank(P) < static_cast<int>(qpowers.size())) {
            // last power is dependent: solve for the monic relation
            KMat prev(F, static_cast<int>(qpowers.size()) - 1, qdim);
            for (std::size_t r = 0; r + 1 < qpowers.size(); ++r)
                for (int c = 0; c < qdim; ++c) prev.at(static_cast<int>(r), c) = qpowers[r][c];
            auto coeffs = solve(prev.transpose(), qpowers.back());
            if (!coeffs) throw InternalInconsistency("min poly solve failed");
            // u^d = sum c_i u^i  ->  mu(T) = T^d - sum c_i T^i
            std::vector<Scalar> mu(qpowers.size(), F.zero());
            for (std::size_t i = 0; i + 1 < qpowers.size(); ++i) mu[i] = F.neg((*coeffs)[i]);
            mu.back() = F.one();
            return mu;
        }
        cur = E.multiply(cur, u);
        if (computed > static_cast<std::size_t>(qdim) + 1)
            throw InternalInconsistency("min poly did not terminate");
    }
}

std::vector<Scalar> poly_eval(const EndAlgebra& E, const std::vector<Scalar>& poly,
                              const std::vector<Scalar>& u) {
    const Field& F = E.complex.algebra()->field();
    int n = E.dim();
    std::vector<Scalar> acc(n, F.zero());
    for (int d = static_cast<int>(poly.size()) - 1; d >= 0; --d) {
        acc = E.multiply(acc, u);
        for (int i = 0; i < n; ++i)
            acc[i] = F.add(acc[i], F.mul(poly[d], E.identity[i]));
    }
    return acc;
}

/// Roots of a polynomial in the coefficient field (rationals: rational-root
/// scan; F_p: full scan for moderate p).
std::vector<Scalar> field_roots(const Field& F, const std::vector<Scalar>& poly) {
    std::vector<Scalar> roots;
    auto eval = [&](const Scalar& x) {
        Scalar acc = F.zero();
        for (int d = static_cast<int>(poly.size()) - 1; d >= 0; --d)
            acc = F.add(F.mul(acc, x), poly[d]);
        return acc;
    };
    if (F.kind() == Field::Kind::prime) {
        if (F.characteristic() <= 4096)
            for (std::uint64_t v = 0; v < F.characteristic(); ++v) {
                Scalar x = F.from_int(static_cast<long>(v));
                if (F.is_zero(eval(x))) roots.push_back(x);
            }
        return roots;
    }
    // rationals: clear denominators, then candidates +/- p/q with p | a_0, q | a_d
    mpz_class lcm_den(1);
    for (const auto& c : poly) {
        const Rational& r = std::get<Rational>(c);
        mpz_class d = r.denominator();
        lcm_den = lcm_den / gcd(lcm_den, d) * d;
    }
    std::vector<mpz_class> zc;
    for (const auto& c : poly) {
        const Rational& r = std::get<Rational>(c);
        zc.push_back(r.numerator() * (lcm_den / r.denominator()));
    }
    if (!zc.empty() && zc.front() == 0) {
        roots.push_back(F.zero());
        while (!zc.empty() && zc.front() == 0) zc.erase(zc.begin());
    }
    if (zc.empty()) return roots;
    auto divisors = [](mpz_class v) {
        std::vector<mpz_class> out;
        if (v < 0) v = -v;
        for (mpz_class d = 1; d * d <= v && d < 100000; ++d)
            if (v % d == 0) {
                out.push_back(d);
                out.push_back(v / d);
            }
        return out;
    };
    for (const auto& p : divisors(zc.front()))
        for (const auto& q : divisors(zc.back()))
            for (int sgn : {1, -1}) {
                Rational cand(mpz_class(mpz_class(sgn) * p));
                Scalar x = F.from_rational(cand / Rational(q));
                if (F.is_zero(eval(x))) {
                    bool seen = false;
                    for (auto& r : roots) seen = seen || F.eq(r, x);
                    if (!seen) roots.push_back(x);
                }
            }
    return roots;
}

}  // namespace

IndecomposabilityVerdict is_indecomposable(const Complex& X) {
    IndecomposabilityVerdict v;
    if (minimize(X).minimal.is_zero()) {
        v.indecomposable = false;
        v.note = "zero complex";
        return v;
    }
    EndAlgebra E = end_algebra(X);
    const Field& F = X.algebra()->field();
    int n = E.dim();
    int radn = E.radical.rows();
    if (n - radn == 1) {
        v.indecomposable = true;
        v.note = "End/rad is one-dimensional";
        return v;
    }
    // quotient basis: radical completed inside E
    KMat full(F, n, n);
    for (int i = 0; i < n; ++i) full.at(i, i) = F.one();
    KMat reps = complete_basis(E.radical, full);
    KMat rad_and_reps = E.radical.vstack(reps);

    // hunt a nontrivial idempotent: candidates are quotient basis vectors and
    // pairwise sums; roots of their minimal polynomials split the algebra
    std::vector<std::vector<Scalar>> candidates;
    for (int r = 0; r < reps.rows(); ++r) {
        std::vector<Scalar> u(n, F.zero());
        for (int c = 0; c < n; ++c) u[c] = reps.at(r, c);
        candidates.push_back(u);
    }
    for (int r = 0; r < reps.rows(); ++r)
        for (int s = r + 1; s < reps.rows(); ++s) {
            std::vector<Scalar> u(n, F.zero());
            for (int c = 0; c < n; ++c) u[c] = F.add(reps.at(r, c), reps.at(s, c));
            candidates.push_back(u);
        }
    for (const auto& u : candidates) {
        auto mu = quotient_min_poly(E, rad_and_reps, radn, u);
        if (mu.size() < 3) continue;  // degree < 2: scalar in the quotient
        for (const Scalar& alpha : field_roots(F, mu)) {
            // g = mu / (T - alpha) by synthetic division
            std::vector<Scalar> g(mu.size() - 1, F.zero());
            Scalar carry = F.zero();
            for (int d = static_cast<int>(mu.size()) - 1; d >= 1; --d) {
                carry = F.add(mu[d], F.mul(carry, alpha));
                g[d - 1] = carry;
            }
            Scalar g_alpha = F.zero();
            for (int d = static_cast<int>(g.size()) - 1; d >= 0; --d)
                g_alpha = F.add(F.mul(g_alpha, alpha), g[d]);
            if (F.is_zero(g_alpha)) continue;  // repeated root
            std::vector<Scalar> e = poly_eval(E, g, u);
            Scalar inv = F.inv(g_alpha);
            for (auto& c : e) c = F.mul(c, inv);
            // Newton lifting to an exact idempotent: e <- 3e^2 - 2e^3
            for (int it = 0; it <= n + 1; ++it) {
                auto e2 = E.multiply(e, e);
                bool idem = true;
                for (int i = 0; i < n; ++i) idem = idem && F.eq(e2[i], e[i]);
                if (idem) break;
                auto e3 = E.multiply(e2, e);
                for (int i = 0; i < n; ++i)
                    e[i] = F.sub(F.mul(F.from_int(3), e2[i]), F.mul(F.from_int(2), e3[i]));
            }
            auto e2 = E.multiply(e, e);
            bool idem = true, zero = true, one = true;
            for (int i = 0; i < n; ++i) {
                idem = idem && F.eq(e2[i], e[i]);
                zero = zero && F.is_zero(e[i]);
                one = one && F.eq(e[i], E.identity[i]);
            }
            if (idem && !zero && !one) {
                v.indecomposable = false;
                HomSpaceK H(X, X, 0);
                v.idempotent = H.from_coords(e);
                v.note = "nontrivial idempotent";
                return v;
            }
        }
    }
    // no idempotent found over k: check for zero divisors among quotient
    // basis products; none means the quotient passes the division-algebra test
    for (int r = 0; r < reps.rows(); ++r)
        for (int s = 0; s < reps.rows(); ++s) {
            std::vector<Scalar> u(n, F.zero()), w(n, F.zero());
            for (int c = 0; c < n; ++c) {
                u[c] = reps.at(r, c);
                w[c] = reps.at(s, c);
            }
            auto prod = E.multiply(u, w);
            auto sol = solve(rad_and_reps.transpose(), prod);
            bool in_rad = true;
            if (sol)
                for (int i = radn; i < rad_and_reps.rows(); ++i)
                    in_rad = in_rad && F.is_zero((*sol)[i]);
            if (in_rad) {
                v.indecomposable = false;
                v.note = "zero divisor in the semisimple quotient";
                return v;
            }
        }
    v.indecomposable = true;
    v.note = "End/rad passes the division-algebra test";
    return v;
}

std::optional<ChainMap> retraction_of(const ChainMap& incl) {
    const Complex& V = incl.source();
    const Complex& U = incl.target();
    AlgebraPtr alg = V.algebra();
    LinearMapSystem sys(alg);
    int r = sys.add_unknown(U, V, 0);
    int s = sys.add_unknown(V, V, -1);
    RingElem one = alg->one(), minus = -alg->one();
    ChainMap ic = incl;
    Complex Vc = V, Uc = U;
    int eq = sys.add_equation(V, V, 0);  // r o i - (ds + sd) = id_V
    sys.add_term(eq, r, 0,
                 [Vc](int i) { return MatrixOverA::identity(Vc.algebra(), Vc.rank(i)); },
                 [ic](int i) { return ic.component(i); }, one);
    sys.add_term(eq, s, 0, [Vc](int i) { return Vc.diff(i - 1); },
                 [Vc](int i) { return MatrixOverA::identity(Vc.algebra(), Vc.rank(i)); }, minus);
    sys.add_term(eq, s, 1,
                 [Vc](int i) { return MatrixOverA::identity(Vc.algebra(), Vc.rank(i)); },
                 [Vc](int i) { return Vc.diff(i); }, minus);
    sys.add_rhs_chain_map(eq, ChainMap::identity(V));
    int ch = sys.add_equation(U, V, 1);  // r is a chain map
    sys.add_term(ch, r, 0, [Vc](int i) { return Vc.diff(i); },
                 [Uc](int i) { return MatrixOverA::identity(Uc.algebra(), Uc.rank(i)); }, one);
    sys.add_term(ch, r, 1,
                 [Vc](int i) { return MatrixOverA::identity(Vc.algebra(), Vc.rank(i + 1)); },
                 [Uc](int i) { return Uc.diff(i); }, minus);
    auto sol = sys.solve_particular();
    if (!sol) return std::nullopt;
    ChainMap rm = ChainMap::make(U, V, sol->vars[r]);
    if (!is_null_homotopic(rm.compose(incl).sub(ChainMap::identity(V))).null_homotopic)
        throw InternalInconsistency("retraction witness fails r o i ~ 1");
    return rm;
}

std::optional<ChainMap> homotopy_inverse(const ChainMap& u) {
    const Complex& X = u.source();
    const Complex& Y = u.target();
    AlgebraPtr alg = X.algebra();
    LinearMapSystem sys(alg);
    int g = sys.add_unknown(Y, X, 0);
    int s = sys.add_unknown(Y, Y, -1);
    int t = sys.add_unknown(X, X, -1);
    RingElem one = alg->one(), minus = -alg->one();
    ChainMap uc = u;
    Complex Xc = X, Yc = Y;
    int eq1 = sys.add_equation(Y, Y, 0);  // u g - (ds + sd) = id_Y
    sys.add_term(eq1, g, 0, [uc](int i) { return uc.component(i); },
                 [Yc](int i) { return MatrixOverA::identity(Yc.algebra(), Yc.rank(i)); }, one);
    sys.add_term(eq1, s, 0, [Yc](int i) { return Yc.diff(i - 1); },
                 [Yc](int i) { return MatrixOverA::identity(Yc.algebra(), Yc.rank(i)); }, minus);
    sys.add_term(eq1, s, 1,
                 [Yc](int i) { return MatrixOverA::identity(Yc.algebra(), Yc.rank(i)); },
                 [Yc](int i) { return Yc.diff(i); }, minus);
    sys.add_rhs_chain_map(eq1, ChainMap::identity(Y));
    int eq2 = sys.add_equation(X, X, 0);  // g u - (dt + td) = id_X
    sys.add_term(eq2, g, 0,
                 [Xc](int i) { return MatrixOverA::identity(Xc.algebra(), Xc.rank(i)); },
                 [uc](int i) { return uc.component(i); }, one);
    sys.add_term(eq2, t, 0, [Xc](int i) { return Xc.diff(i - 1); },
                 [Xc](int i) { return MatrixOverA::identity(Xc.algebra(), Xc.rank(i)); }, minus);
    sys.add_term(eq2, t, 1,
                 [Xc](int i) { return MatrixOverA::identity(Xc.algebra(), Xc.rank(i)); },
                 [Xc](int i) { return Xc.diff(i); }, minus);
    sys.add_rhs_chain_map(eq2, ChainMap::identity(X));
    int ch = sys.add_equation(Y, X, 1);  // g is a chain map
    sys.add_term(ch, g, 0, [Xc](int i) { return Xc.diff(i); },
                 [Yc](int i) { return MatrixOverA::identity(Yc.algebra(), Yc.rank(i)); }, one);
    sys.add_term(ch, g, 1,
                 [Xc](int i) { return MatrixOverA::identity(Xc.algebra(), Xc.rank(i + 1)); },
                 [Yc](int i) { return Yc.diff(i); }, minus);
    auto sol = sys.solve_particular();
    if (!sol) return std::nullopt;
    ChainMap gm = ChainMap::make(Y, X, sol->vars[g]);
    if (!is_null_homotopic(u.compose(gm).sub(ChainMap::identity(Y))).null_homotopic ||
        !is_null_homotopic(gm.compose(u).sub(ChainMap::identity(X))).null_homotopic)
        throw InternalInconsistency("homotopy inverse fails its identities");
    return gm;
}

// ---- homotopy extension --------------------------------------------------------

namespace {

std::vector<Scalar> avec_to_k(const AlgebraPtr& alg, const std::vector<RingElem>& v) {
    const Field& F = alg->field();
    int dA = alg->dim();
    std::vector<Scalar> out(v.size() * dA, F.zero());
    for (std::size_t g = 0; g < v.size(); ++g)
        for (auto& [m, c] : v[g].terms()) out[g * dA + alg->basis_index(m)] = c;
    return out;
}

std::vector<RingElem> k_to_avec(const AlgebraPtr& alg, const std::vector<Scalar>& v, int gens) {
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

}  // namespace

Homotopy extend_null_homotopy(const ChainMap& g, const SubcomplexSelector& sel,
                              const Homotopy& s_on_v, std::pair<int, int> window) {
    const Complex& U = g.source();
    const Complex& W = g.target();
    AlgebraPtr alg = U.algebra();
    if (alg->backend() != Backend::artinian)
        throw UnsupportedBackend("homotopy extension requires the artinian backend");
    auto sup = U.support();
    if (!sup) return Homotopy{U, W, {}};

    auto kept_at = [&](int i) -> std::vector<int> {
        auto it = sel.kept.find(i);
        if (it != sel.kept.end()) return it->second;
        std::vector<int> all(U.rank(i));
        for (int j = 0; j < U.rank(i); ++j) all[j] = j;
        return all;
    };
    // V must be a termwise summand subcomplex on the chosen generators
    for (int i = sup->first; i < sup->second; ++i) {
        auto kc = kept_at(i);
        auto kn = kept_at(i + 1);
        std::set<int> kr(kn.begin(), kn.end());
        MatrixOverA d = U.diff(i);
        for (int c : kc)
            for (int r = 0; r < d.rows(); ++r)
                if (!kr.count(r) && !d.at(r, c).is_zero())
                    throw UserError("selector does not span a subcomplex at degree " +
                                    std::to_string(i));
    }
    // m = the degree above which V equals U
    int m = sup->first;
    for (int i = sup->second; i >= sup->first; --i) {
        if (static_cast<int>(kept_at(i).size()) != U.rank(i)) {
            m = i + 1;
            break;
        }
    }

    // start from s on V, embedded into U columns
    std::map<int, MatrixOverA> s_tilde;
    for (int i = sup->first; i <= sup->second; ++i) {
        auto kc = kept_at(i);
        MatrixOverA col(alg, W.rank(i - 1), U.rank(i));
        MatrixOverA sv = s_on_v.component(i);
        if (sv.rows() != W.rank(i - 1) || sv.cols() != static_cast<int>(kc.size()))
            throw UserError("given homotopy has wrong shape at degree " + std::to_string(i));
        for (std::size_t j = 0; j < kc.size(); ++j)
            for (int r = 0; r < sv.rows(); ++r) col.at(r, kc[j]) = sv.at(r, static_cast<int>(j));
        s_tilde.emplace(i, std::move(col));
    }
    auto stilde_at = [&](int i) -> MatrixOverA {
        auto it = s_tilde.find(i);
        if (it != s_tilde.end()) return it->second;
        return MatrixOverA(alg, W.rank(i - 1), U.rank(i));
    };

    for (int r = std::min(m - 1, sup->second); r >= std::max(window.first, sup->first); --r) {
        auto kc = kept_at(r);
        std::set<int> kept(kc.begin(), kc.end());
        if (static_cast<int>(kept.size()) == U.rank(r)) continue;
        MatrixOverA du = U.diff(r);
        MatrixOverA dw = W.diff(r - 1);
        KMat dwk = dw.k_expand();
        MatrixOverA snext = stilde_at(r + 1);
        MatrixOverA& scur = s_tilde.at(r);
        for (int j = 0; j < U.rank(r); ++j) {
            if (kept.count(j)) continue;
            // xi = g(e_j) - s(d e_j); solve d(xi') = xi
            std::vector<RingElem> xi(W.rank(r), alg->zero());
            MatrixOverA gc = g.component(r);
            for (int t = 0; t < W.rank(r); ++t) {
                RingElem acc = gc.at(t, j);
                for (int u = 0; u < U.rank(r + 1); ++u)
                    acc = acc - snext.at(t, u) * du.at(u, j);
                xi[t] = acc;
            }
            auto rhs = avec_to_k(alg, xi);
            auto sol = solve(dwk, rhs);
            if (!sol)
                throw UserError("homotopy extension infeasible at degree " + std::to_string(r));
            auto col = k_to_avec(alg, *sol, W.rank(r - 1));
            for (int t = 0; t < W.rank(r - 1); ++t) scur.at(t, j) = col[t];
        }
    }
    for (auto it = s_tilde.begin(); it != s_tilde.end();)
        it = it->second.is_zero() ? s_tilde.erase(it) : std::next(it);
    Homotopy out{U, W, std::move(s_tilde)};
    return out;
}

}  // namespace homforge
