#include "homforge/serre_ar.hpp"

#include <algorithm>

namespace homforge {

namespace {

ChainMap chain_combo(const Complex& src, const Complex& tgt,
                     const std::vector<ChainMap>& basis, const std::vector<Scalar>& c) {
    ChainMap acc = ChainMap::zero(src, tgt);
    const Field& F = src.algebra()->field();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (F.is_zero(c[i])) continue;
        acc = acc.add(basis[i].scaled(src.algebra()->from_scalar(c[i])));
    }
    return acc;
}

bool invertible_mod_m(const ChainMap& f) {
    auto s = f.source().support();
    if (!s) return true;
    for (int i = s->first; i <= s->second; ++i) {
        int r = f.source().rank(i);
        if (f.target().rank(i) != r) return false;
        if (r == 0) continue;
        if (rank(f.component(i).mod_m()) != r) return false;
    }
    return true;
}

int socle_monomial_index(const AlgebraPtr& A) {
    auto soc = socle(A);
    if (soc.size() != 1 || soc[0].terms().size() != 1)
        throw UserError("socle coordinate needs a Gorenstein monomial algebra");
    return A->basis_index(soc[0].terms().begin()->first);
}

}  // namespace

SerreImage serre_functor(const Complex& X, int bound) {
    AlgebraPtr alg = X.algebra();
    if (alg->backend() != Backend::artinian)
        throw UnsupportedBackend("the Serre composite requires the artinian backend");
    SerreImage out;
    out.input = X;
    if (X.is_zero()) {
        out.output = Complex::zero(alg);
        out.dual_stage = out.output;
        out.matlis_stage = out.output;
        out.include = ChainMap::zero(out.output, out.output);
        return out;
    }
    auto s = X.support();
    int width_bound = (s->second - s->first) + alg->dim();
    if (bound <= width_bound)
        throw UserError("truncation too small: bound must exceed width + dim_k A = " +
                        std::to_string(width_bound));
    out.dual_stage = dual(X);
    out.matlis_stage = matlis_dual(out.dual_stage);
    if (!out.matlis_stage.e_power_terms()) {
        // Gorenstein path: E(D(X)) is X with negated differentials
        if (auto w = out.matlis_stage.support()) {
            for (int i = w->first; i <= w->second; ++i) {
                if (out.matlis_stage.rank(i) != X.rank(i) ||
                    !out.matlis_stage.diff(i).eq(X.diff(i).neg()))
                    throw InternalInconsistency("E o D drifted from the sign convention");
            }
        }
        MinimizeResult m = minimize(out.matlis_stage);
        out.output = m.minimal;
        out.include = m.include;
        out.project = m.project;
        out.free_path = true;
        return out;
    }
    ProjResolution p = proj_resolution_of_complex(out.matlis_stage, bound);
    out.output = p.complex;
    out.include = ChainMap::zero(out.output, out.output);
    out.free_path = false;
    out.truncated = p.truncated;
    return out;
}

ChainMap serre_on_map(const SerreImage& FX, const SerreImage& FY, const ChainMap& a) {
    if (!FX.free_path || !FY.free_path)
        throw UnsupportedBackend("F on morphisms is implemented on the Gorenstein path");
    // E(D(a)) has the same components as a, between the negated-differential stages
    ChainMap wa = ChainMap::make(FX.matlis_stage, FY.matlis_stage, a.components());
    return FY.project.compose(wa).compose(FX.include);
}

Scalar serre_pairing(const SerreImage& FX, const ChainMap& f, const ChainMap& g) {
    if (!FX.free_path)
        throw UnsupportedBackend("the trace pairing is implemented on the Gorenstein path");
    AlgebraPtr alg = FX.input.algebra();
    const Field& F = alg->field();
    int soc = socle_monomial_index(alg);
    ChainMap h = FX.include.compose(g).compose(f);  // X -> W
    Scalar acc = F.zero();
    if (auto s = FX.input.support()) {
        for (int m = s->first; m <= s->second; ++m) {
            MatrixOverA hm = h.component(m);
            RingElem tr = alg->zero();
            for (int i = 0; i < std::min(hm.rows(), hm.cols()); ++i) tr = tr + hm.at(i, i);
            for (auto& [mono, c] : tr.terms())
                if (alg->basis_index(mono) == soc) acc = F.add(acc, c);
        }
    }
    return acc;
}

SerrePairingReport serre_pairing_check(const Complex& X, const Complex& Y, std::uint64_t seed) {
    SerrePairingReport rep;
    AlgebraPtr alg = X.algebra();
    int bound = 2 * alg->dim() + 8;
    if (auto s = X.support()) bound += s->second - s->first;
    SerreImage FX = serre_functor(X, bound);
    HomSpaceK left(X, Y);
    HomSpaceK right(Y, FX.output);
    rep.dim_hom_xy = left.dim();
    rep.dim_hom_y_fx = right.dim();
    rep.dims_equal = rep.dim_hom_xy == rep.dim_hom_y_fx;
    if (!FX.free_path) {
        rep.notes.push_back("naturality sampling skipped off the Gorenstein path");
        return rep;
    }
    if (left.dim() == 0 || right.dim() == 0) {
        rep.notes.push_back("zero Hom spaces: pairing vacuous");
        rep.naturality_checked = true;
        return rep;
    }
    rep.naturality_checked = true;
    const Field& F = alg->field();
    // pairing matrix and nondegeneracy
    KMat P(F, left.dim(), right.dim());
    // g lands in F(X).output; the pairing composes through the include witness
    for (int i = 0; i < left.dim(); ++i)
        for (int j = 0; j < right.dim(); ++j)
            P.at(i, j) = serre_pairing(FX, left.basis()[i], right.basis()[j]);
    if (rep.dims_equal) rep.pairing_nondegenerate = rank(P) == left.dim();
    // naturality in X: <f a, g> = <f, F(a) g>, sampled over End(X)
    EndAlgebra EX = end_algebra(X);
    EndAlgebra EY = end_algebra(Y);
    Rng rng(seed);
    auto random_coords = [&](int n) {
        std::vector<Scalar> c(n, F.zero());
        for (auto& x : c) x = rng.scalar(F);
        return c;
    };
    std::vector<ChainMap> a_samples;
    for (auto& b : EX.basis) a_samples.push_back(b);
    a_samples.push_back(chain_combo(X, X, EX.basis, random_coords(EX.dim())));
    std::vector<ChainMap> b_samples;
    for (auto& b : EY.basis) b_samples.push_back(b);
    b_samples.push_back(chain_combo(Y, Y, EY.basis, random_coords(EY.dim())));
    for (const ChainMap& a : a_samples) {
        ChainMap Fa = serre_on_map(FX, FX, a);
        for (const ChainMap& f : left.basis())
            for (const ChainMap& g : right.basis()) {
                Scalar lhs = serre_pairing(FX, f.compose(a), g);
                Scalar rhs = serre_pairing(FX, f, Fa.compose(g));
                if (!F.eq(lhs, rhs)) {
                    rep.naturality_ok = false;
                    rep.notes.push_back("naturality square in X fails");
                }
            }
    }
    // naturality in Y: <b f, g> = <f, g b>
    for (const ChainMap& b : b_samples)
        for (const ChainMap& f : left.basis())
            for (const ChainMap& g : right.basis()) {
                Scalar lhs = serre_pairing(FX, b.compose(f), g);
                Scalar rhs = serre_pairing(FX, f, g.compose(b));
                if (!F.eq(lhs, rhs)) {
                    rep.naturality_ok = false;
                    rep.notes.push_back("naturality square in Y fails");
                }
            }
    return rep;
}

// ---- AR triangles ---------------------------------------------------------------

ARTriangle ar_triangle_ending_at(const Complex& X, int bound) {
    AlgebraPtr alg = X.algebra();
    MinimizeResult mx = minimize(X);
    const Complex& M = mx.minimal;
    if (M.is_zero()) throw UserError("no AR triangle ends at the zero object");
    auto indec = is_indecomposable(M);
    if (!indec.indecomposable)
        throw UserError("AR triangles end at indecomposable objects only: " + indec.note);
    if (bound < 0) {
        auto s = M.support();
        bound = (s->second - s->first) + alg->dim() + 1;
    }
    SerreImage FX = serre_functor(M, bound);
    EndAlgebra E = end_algebra(M);
    HomSpaceK H(M, FX.output);
    if (H.dim() == 0) throw UserError("Hom(X, F(X)) vanishes: no connecting map");
    const Field& F = alg->field();
    // socle of Hom(M, FM) as a right End(M)-module
    int radn = E.radical.rows();
    KMat sys(F, std::max(1, radn) * H.dim(), H.dim());
    for (int j = 0; j < radn; ++j) {
        std::vector<Scalar> rc(E.dim(), F.zero());
        for (int c = 0; c < E.dim(); ++c) rc[c] = E.radical.at(j, c);
        ChainMap r = chain_combo(M, M, E.basis, rc);
        for (int i = 0; i < H.dim(); ++i) {
            auto coords = H.coords(H.basis()[i].compose(r));
            for (int k = 0; k < H.dim(); ++k) sys.at(j * H.dim() + k, i) = coords[k];
        }
    }
    KMat soc = radn == 0 ? KMat::identity(F, H.dim()) : kernel_basis(sys);
    if (soc.rows() == 0) throw UserError("socle of Hom(X, F(X)) is zero");
    std::vector<Scalar> hc(H.dim(), F.zero());
    for (int c = 0; c < H.dim(); ++c) hc[c] = soc.at(0, c);
    ChainMap h = H.from_coords(hc);

    Triangle tc = cone_triangle(h);  // M -> FM -> cone(h) -> M[1]
    ARTriangle out;
    out.triangle.x0 = FX.output.shift(-1);
    out.triangle.x1 = tc.x2.shift(-1);
    out.triangle.x2 = M;
    out.triangle.f0 = tc.f1.shift(-1).neg();
    out.triangle.f1 = tc.f2.shift(-1).neg();
    out.triangle.f2 = h;
    out.triangle.provenance = Provenance::claimed;
    out.right_side = true;
    out.certificates.push_back("ending object indecomposable: " + indec.note);
    auto nindec = is_indecomposable(out.triangle.x0);
    out.certificates.push_back(std::string("starting object indecomposable: ") +
                               (nindec.indecomposable ? "yes" : "NO"));
    out.certificates.push_back(std::string("connecting map nonzero in K: ") +
                               (is_null_homotopic(h).null_homotopic ? "NO" : "yes"));
    out.certificates.push_back("socle dimension " + std::to_string(soc.rows()));
    return out;
}

ARVerdict verify_right_ar(const ARTriangle& t, const std::vector<Complex>& family,
                          std::uint64_t seed) {
    if (!t.right_side) throw UserError("verify_right_ar expects a right AR triangle");
    ARVerdict v;
    v.seed = seed;
    const Complex& M = t.triangle.x2;
    const Complex& N = t.triangle.x0;
    const ChainMap& h = t.triangle.f2;
    v.rar1 = is_indecomposable(M).indecomposable && is_indecomposable(N).indecomposable;
    v.rar2 = !is_null_homotopic(h).null_homotopic;
    if (family.empty()) {
        v.rar3_vacuous = true;
        return v;
    }
    Rng rng(seed);
    const Field& F = M.algebra()->field();
    for (const Complex& D0 : family) {
        Complex D = minimize(D0).minimal;
        HomSpaceK H(D, M);
        if (H.dim() == 0) continue;
        std::vector<std::vector<Scalar>> cands;
        for (int i = 0; i < H.dim(); ++i) {
            std::vector<Scalar> c(H.dim(), F.zero());
            c[i] = F.one();
            cands.push_back(c);
        }
        for (int extra = 0; extra < 32; ++extra) {
            std::vector<Scalar> c(H.dim(), F.zero());
            for (auto& x : c) x = rng.scalar(F);
            cands.push_back(c);
        }
        for (const auto& c : cands) {
            ChainMap tm = H.from_coords(c);
            if (invertible_mod_m(tm)) continue;  // an isomorphism: exempt
            ++v.tested_maps;
            if (!is_null_homotopic(h.compose(tm)).null_homotopic) {
                v.rar3 = false;
                v.witness = "h o t is not null-homotopic for a non-isomorphism into the end";
                return v;
            }
        }
    }
    return v;
}

ARVerdict verify_left_ar(const ARTriangle& t, const std::vector<Complex>& family,
                         std::uint64_t seed) {
    if (t.right_side) throw UserError("verify_left_ar expects a left AR triangle");
    ARVerdict v;
    v.seed = seed;
    // left triangle: M[-1] --w--> N -> E -> M
    const Complex& N = t.triangle.x1;
    const ChainMap& w = t.triangle.f0;
    const Complex M = t.triangle.x0.shift(1);
    v.rar1 = is_indecomposable(M).indecomposable && is_indecomposable(N).indecomposable;
    v.rar2 = !is_null_homotopic(w).null_homotopic;
    if (family.empty()) {
        v.rar3_vacuous = true;
        return v;
    }
    Rng rng(seed);
    const Field& F = N.algebra()->field();
    for (const Complex& D0 : family) {
        Complex D = minimize(D0).minimal;
        HomSpaceK H(N, D);
        if (H.dim() == 0) continue;
        std::vector<std::vector<Scalar>> cands;
        for (int i = 0; i < H.dim(); ++i) {
            std::vector<Scalar> c(H.dim(), F.zero());
            c[i] = F.one();
            cands.push_back(c);
        }
        for (int extra = 0; extra < 32; ++extra) {
            std::vector<Scalar> c(H.dim(), F.zero());
            for (auto& x : c) x = rng.scalar(F);
            cands.push_back(c);
        }
        for (const auto& c : cands) {
            ChainMap tm = H.from_coords(c);
            if (invertible_mod_m(tm)) continue;
            ++v.tested_maps;
            if (!is_null_homotopic(tm.compose(w)).null_homotopic) {
                v.rar3 = false;
                v.witness = "t o w is not null-homotopic for a non-isomorphism out of the start";
                return v;
            }
        }
    }
    return v;
}

ARTriangle rotate_right_to_left(const ARTriangle& t) {
    if (!t.right_side) throw UserError("rotation expects a right AR triangle");
    ARTriangle out;
    out.triangle.x0 = t.triangle.x2.shift(-1);
    out.triangle.x1 = t.triangle.x0;
    out.triangle.x2 = t.triangle.x1;
    out.triangle.f0 = t.triangle.f2.shift(-1).neg();
    out.triangle.f1 = t.triangle.f0;
    out.triangle.f2 = t.triangle.f1;
    out.triangle.provenance = Provenance::claimed;
    out.right_side = false;
    out.certificates = t.certificates;
    out.certificates.push_back("rotated from a right AR triangle with the -h[-1] sign");
    return out;
}

ARTriangle ar_dual(const ARTriangle& t) {
    ARTriangle out;
    if (t.right_side) {
        // s: U -> K -> V --h--> U[1]  |->  left AR starting at V*
        const ChainMap& h = t.triangle.f2;
        ChainMap hstar = dual_map(h);  // dual(U[1]) = U*[-1] -> V*
        Triangle tc = cone_triangle(hstar);
        out.triangle = tc;
        out.right_side = false;
    } else {
        // l: M[-1] --w--> N -> E -> M  |->  right AR ending at N*
        const ChainMap& w = t.triangle.f0;
        ChainMap wstar = dual_map(w);  // N* -> dual(M[-1])
        Triangle tc = cone_triangle(wstar);
        out.triangle.x0 = tc.x1.shift(-1);
        out.triangle.x1 = tc.x2.shift(-1);
        out.triangle.x2 = tc.x0;
        out.triangle.f0 = tc.f1.shift(-1).neg();
        out.triangle.f1 = tc.f2.shift(-1).neg();
        out.triangle.f2 = tc.f0;
        out.right_side = true;
    }
    out.triangle.provenance = Provenance::claimed;
    auto i1 = is_indecomposable(out.right_side ? out.triangle.x2 : out.triangle.x1);
    out.certificates.push_back(std::string("dualized; end/start indecomposable: ") +
                               (i1.indecomposable ? "yes" : "NO"));
    const ChainMap& conn = out.right_side ? out.triangle.f2 : out.triangle.f0;
    out.certificates.push_back(std::string("connecting map nonzero in K: ") +
                               (is_null_homotopic(conn).null_homotopic ? "NO" : "yes"));
    return out;
}

DominationVerdict triangle_dominates(const Triangle& s, const Triangle& t) {
    DominationVerdict v;
    AlgebraPtr alg = s.x0.algebra();
    if (!s.x0.eq(t.x0)) throw UserError("triangles do not end at the same object");
    for (const Triangle* tr : {&s, &t}) {
        if (is_null_homotopic(tr->f0).null_homotopic)
            throw UserError("S(X) triangles need a nonzero first map");
        if (!is_indecomposable(tr->x1).indecomposable)
            throw UserError("S(X) triangles need an indecomposable second vertex");
    }
    Complex X1 = s.x0.shift(1);
    LinearMapSystem sys(alg);
    int b = sys.add_unknown(s.x1, t.x1, 0);
    int c = sys.add_unknown(s.x2, t.x2, 0);
    int h1 = sys.add_unknown(s.x0, t.x1, -1);
    int h2 = sys.add_unknown(s.x1, t.x2, -1);
    int h3 = sys.add_unknown(s.x2, X1, -1);
    auto ident = [alg](const Complex& C) {
        return [alg, C](int i) { return MatrixOverA::identity(alg, C.rank(i)); };
    };
    auto diff_of = [](const Complex& C, int off) {
        return [C, off](int i) { return C.diff(i + off); };
    };
    auto comp_of = [](const ChainMap& f) {
        return [f](int i) { return f.component(i); };
    };
    RingElem one = alg->one(), minus = -alg->one();
    // b o u_s - (dh1 + h1 d) = u_t
    int eq1 = sys.add_equation(s.x0, t.x1, 0);
    sys.add_term(eq1, b, 0, ident(t.x1), comp_of(s.f0), one);
    sys.add_term(eq1, h1, 0, diff_of(t.x1, -1), ident(s.x0), minus);
    sys.add_term(eq1, h1, 1, ident(t.x1), diff_of(s.x0, 0), minus);
    sys.add_rhs_chain_map(eq1, t.f0);
    // c o m_s - m_t o b - (dh2 + h2 d) = 0
    int eq2 = sys.add_equation(s.x1, t.x2, 0);
    sys.add_term(eq2, c, 0, ident(t.x2), comp_of(s.f1), one);
    sys.add_term(eq2, b, 0, comp_of(t.f1), ident(s.x1), minus);
    sys.add_term(eq2, h2, 0, diff_of(t.x2, -1), ident(s.x1), minus);
    sys.add_term(eq2, h2, 1, ident(t.x2), diff_of(s.x1, 0), minus);
    // p_t o c - (dh3 + h3 d) = p_s
    int eq3 = sys.add_equation(s.x2, X1, 0);
    sys.add_term(eq3, c, 0, comp_of(t.f2), ident(s.x2), one);
    sys.add_term(eq3, h3, 0, diff_of(X1, -1), ident(s.x2), minus);
    sys.add_term(eq3, h3, 1, ident(X1), diff_of(s.x2, 0), minus);
    sys.add_rhs_chain_map(eq3, s.f2);
    // chain conditions on b and c
    int cb = sys.add_equation(s.x1, t.x1, 1);
    sys.add_term(cb, b, 0, diff_of(t.x1, 0), ident(s.x1), one);
    sys.add_term(cb, b, 1, ident(t.x1.shift(1)), diff_of(s.x1, 0), minus);
    int cc = sys.add_equation(s.x2, t.x2, 1);
    sys.add_term(cc, c, 0, diff_of(t.x2, 0), ident(s.x2), one);
    sys.add_term(cc, c, 1, ident(t.x2.shift(1)), diff_of(s.x2, 0), minus);
    auto sol = sys.solve_particular();
    if (!sol) {
        v.dominates = false;
        v.note = "no triangle morphism fixing the shifted end exists";
        return v;
    }
    v.dominates = true;
    v.on_middle = ChainMap::make(s.x1, t.x1, sol->vars[b]);
    v.on_cone = ChainMap::make(s.x2, t.x2, sol->vars[c]);
    if (!is_null_homotopic(v.on_middle->compose(s.f0).sub(t.f0)).null_homotopic ||
        !is_null_homotopic(t.f2.compose(*v.on_cone).sub(s.f2)).null_homotopic)
        throw InternalInconsistency("domination witness fails its squares");
    (void)h1;
    (void)h2;
    (void)h3;
    return v;
}

Triangle standard_triangle_from_projective_cover(const Complex& X) {
    AlgebraPtr alg = X.algebra();
    if (X.is_zero()) throw UserError("the zero complex has no projective cover triangle");
    if (!is_minimal(X)) throw UserError("projective cover triangle expects a minimal complex");
    auto s = *X.support();
    // P^n = X^n + X^{n-1}, epsilon(a, b) = a + d(b); V = ker = X[-1] on the nose
    std::map<int, FreeModule> pterms;
    std::map<int, MatrixOverA> pdiffs;
    bool graded = alg->backend() == Backend::graded;
    for (int n = s.first; n <= s.second + 1; ++n) {
        int r = X.rank(n) + X.rank(n - 1);
        if (r == 0) continue;
        FreeModule t{r, std::nullopt};
        if (graded) {
            std::vector<int> deg = X.degrees(n);
            auto d2 = X.degrees(n - 1);
            deg.insert(deg.end(), d2.begin(), d2.end());
            t.degrees = std::move(deg);
        }
        pterms[n] = std::move(t);
    }
    for (int n = s.first; n <= s.second; ++n) {
        int ra = X.rank(n), rb = X.rank(n - 1);
        int ra2 = X.rank(n + 1), rb2 = X.rank(n);
        if (ra + rb == 0 || ra2 + rb2 == 0) continue;
        // d_P(a, b) = (0, a)
        MatrixOverA d(alg, ra2 + rb2, ra + rb);
        for (int i = 0; i < ra; ++i) d.at(ra2 + i, i) = alg->one();
        if (!d.is_zero()) pdiffs.emplace(n, std::move(d));
    }
    Complex P = Complex::make(alg, std::move(pterms), std::move(pdiffs));
    Complex V = X.shift(-1);
    std::map<int, MatrixOverA> mcomps, pcomps, ucomps;
    for (int n = s.first; n <= s.second + 1; ++n) {
        int ra = X.rank(n), rb = X.rank(n - 1);
        if (rb > 0) {
            // m(b) = (-d b, b) into P^n = X^n + X^{n-1}
            MatrixOverA m(alg, ra + rb, rb);
            MatrixOverA db = X.diff(n - 1);
            for (int i = 0; i < ra; ++i)
                for (int j = 0; j < rb; ++j) m.at(i, j) = -db.at(i, j);
            for (int j = 0; j < rb; ++j) m.at(ra + j, j) = alg->one();
            mcomps.emplace(n, std::move(m));
        }
        if (ra + rb > 0 && ra > 0) {
            // epsilon(a, b) = a + d(b)
            MatrixOverA e(alg, ra, ra + rb);
            for (int i = 0; i < ra; ++i) e.at(i, i) = alg->one();
            MatrixOverA db = X.diff(n - 1);
            for (int i = 0; i < ra; ++i)
                for (int j = 0; j < rb; ++j) e.at(i, ra + j) = db.at(i, j);
            ucomps.emplace(n, std::move(e));
        }
    }
    for (int n = s.first - 1; n <= s.second + 1; ++n) {
        int r = V.rank(n);
        if (r > 0) pcomps.emplace(n, MatrixOverA::identity(alg, r));
    }
    Triangle t;
    t.x0 = X.shift(-1);
    t.x1 = V;
    t.x2 = P;
    t.f0 = ChainMap::make(t.x0, V, std::move(pcomps));
    t.f1 = ChainMap::make(V, P, std::move(mcomps));
    t.f2 = ChainMap::make(P, X, std::move(ucomps));
    t.provenance = Provenance::claimed;
    if (is_null_homotopic(t.f0).null_homotopic)
        throw InternalInconsistency("projective cover triangle has a vanishing first map");
    return t;
}

MiyataVerdict miyata_split_test(const Triangle& t, std::uint64_t seed) {
    MiyataVerdict v;
    Complex UV = direct_sum(t.x0, t.x2);
    IsoVerdict iso = iso_in_K(t.x1, UV, seed);
    if (iso.kind == IsoVerdictKind::undecided) {
        v.status = MiyataStatus::undecided_hypothesis;
        v.note = "middle term comparison undecided";
        return v;
    }
    if (iso.kind == IsoVerdictKind::not_isomorphic) {
        v.status = MiyataStatus::hypothesis_not_met;
        v.note = iso.separator;
        return v;
    }
    auto nv = is_null_homotopic(t.f2);
    if (!nv.null_homotopic)
        throw InternalInconsistency(
            "middle splits but the connecting map is nonzero: Miyata violated");
    v.v_null = nv.witness;
    // xi : V -> W with w o xi ~ 1
    AlgebraPtr alg = t.x0.algebra();
    LinearMapSystem sys(alg);
    int xi = sys.add_unknown(t.x2, t.x1, 0);
    int hs = sys.add_unknown(t.x2, t.x2, -1);
    RingElem one = alg->one(), minus = -alg->one();
    Complex V = t.x2, W = t.x1;
    ChainMap w = t.f1;
    int eq = sys.add_equation(V, V, 0);
    sys.add_term(eq, xi, 0, [w](int i) { return w.component(i); },
                 [V](int i) { return MatrixOverA::identity(V.algebra(), V.rank(i)); }, one);
    sys.add_term(eq, hs, 0, [V](int i) { return V.diff(i - 1); },
                 [V](int i) { return MatrixOverA::identity(V.algebra(), V.rank(i)); }, minus);
    sys.add_term(eq, hs, 1,
                 [V](int i) { return MatrixOverA::identity(V.algebra(), V.rank(i)); },
                 [V](int i) { return V.diff(i); }, minus);
    sys.add_rhs_chain_map(eq, ChainMap::identity(V));
    int ch = sys.add_equation(V, W, 1);
    sys.add_term(ch, xi, 0, [W](int i) { return W.diff(i); },
                 [V](int i) { return MatrixOverA::identity(V.algebra(), V.rank(i)); }, one);
    sys.add_term(ch, xi, 1,
                 [W](int i) { return MatrixOverA::identity(W.algebra(), W.rank(i + 1)); },
                 [V](int i) { return V.diff(i); }, minus);
    auto sol = sys.solve_particular();
    if (!sol)
        throw InternalInconsistency("split middle without a section: Miyata violated");
    v.xi = ChainMap::make(V, W, sol->vars[xi]);
    if (!is_null_homotopic(t.f1.compose(*v.xi).sub(ChainMap::identity(V))).null_homotopic)
        throw InternalInconsistency("xi fails w o xi ~ 1");
    v.status = MiyataStatus::split;
    return v;
}

ConePowerFamily cone_power_family(const ChainMap& u, const RingElem& r, int N,
                                  std::uint64_t seed) {
    ConePowerFamily out;
    RingElem rn = r;
    for (int n = 1; n <= N; ++n) {
        out.members.push_back(cone(u.scaled(rn)));
        rn = rn * r;
    }
    out.pairwise.assign(N, std::vector<IsoVerdictKind>(N, IsoVerdictKind::isomorphic));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == j) continue;
            out.pairwise[i][j] = iso_in_K(out.members[i], out.members[j], seed).kind;
        }
    return out;
}

FiniteLengthVerdict finite_length_certificate(const Complex& X) {
    FiniteLengthVerdict v;
    AlgebraPtr alg = X.algebra();
    if (alg->backend() == Backend::artinian) {
        v.certified = true;
        v.witness = "artinian backend: every module has finite length";
        return v;
    }
    int W = alg->graded_window();
    v.window = W;
    for (int d = -W; d <= W; ++d) {
        HomSpaceK H(X, X, 0, d);
        for (int i = 0; i < H.dim(); ++i) {
            const ChainMap& u = H.basis()[i];
            for (std::size_t var = 0; var < alg->vars().size(); ++var) {
                RingElem r = alg->variable(static_cast<int>(var));
                RingElem rn = r;
                bool torsion = false;
                for (int n = 1; n <= W; ++n) {
                    if (is_null_homotopic(u.scaled(rn), d + n).null_homotopic) {
                        torsion = true;
                        break;
                    }
                    rn = rn * r;
                }
                if (!torsion) {
                    v.refuted = true;
                    v.witness = "endomorphism class in internal degree " + std::to_string(d) +
                                " is not " + alg->vars()[var] + "-power torsion within the window";
                    return v;
                }
            }
        }
    }
    v.certified = true;
    v.witness = "all endomorphism classes are variable-power torsion within the window";
    return v;
}

}  // namespace homforge
