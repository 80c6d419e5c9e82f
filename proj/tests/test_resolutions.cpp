#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "homforge/resolutions.hpp"
#include "test_util.hpp"

using namespace homforge;
using namespace homforge::testutil;

namespace {

ModulePresentation residue_field(const AlgebraPtr& A) {
    ModulePresentation M;
    M.alg = A;
    M.generators = 1;
    M.relations = MatrixOverA(A, 1, static_cast<int>(A->vars().size()));
    for (std::size_t v = 0; v < A->vars().size(); ++v)
        M.relations.at(0, static_cast<int>(v)) = A->variable(static_cast<int>(v));
    if (A->backend() == Backend::graded) M.degrees = std::vector<int>{0};
    return M;
}

}  // namespace

TEST_CASE("koszul complexes") {
    auto A = kx_mod_xn(2);
    Complex K1 = koszul(A, {A->parse("x")});
    CHECK(K1.rank(-1) == 1);
    CHECK(K1.rank(0) == 1);
    CHECK(K1.diff(-1).at(0, 0) == A->parse("x"));

    auto B = kxy_22();
    Complex K2 = koszul(B, {B->parse("x"), B->parse("y")});
    CHECK(K2.rank(-2) == 1);
    CHECK(K2.rank(-1) == 2);
    CHECK(K2.rank(0) == 1);
    CHECK(K2.diff(-1).at(0, 0) == B->parse("x"));
    CHECK(K2.diff(-1).at(0, 1) == B->parse("y"));
    CHECK(K2.diff(-2).at(0, 0) == -B->parse("y"));
    CHECK(K2.diff(-2).at(1, 0) == B->parse("x"));

    auto G = kx_graded(8);
    Complex KG = koszul(G, {G->parse("x")});
    auto h0 = graded_cohomology_dims(KG, 0, 4);
    CHECK(h0[0] == 1);
    CHECK(h0[1] + h0[2] == 0);
    auto hm1 = graded_cohomology_dims(KG, -1, 4);
    for (int d : hm1) CHECK(d == 0);

    CHECK_THROWS_AS(koszul(A, {}), UserError);
}

TEST_CASE("minimal resolution of the residue field") {
    SUBCASE("k over k[x]/(x^2): periodic Betti (1,1,1,1,1)") {
        auto A = kx_mod_xn(2);
        auto R = minimal_resolution(residue_field(A), 4);
        CHECK(R.betti == std::vector<int>{1, 1, 1, 1, 1});
        CHECK(R.truncated);
        for (int i = -4; i < 0; ++i) CHECK(R.complex.diff(i).at(0, 0) == A->parse("x"));
    }
    SUBCASE("k over k[x,y]/(x^2,y^2): Betti (1,2,3,4,5)") {
        auto B = kxy_22();
        auto R = minimal_resolution(residue_field(B), 4);
        CHECK(R.betti == std::vector<int>{1, 2, 3, 4, 5});
        // exactness strictly between the ends and H^0 = k
        for (int i = -3; i < 0; ++i) CHECK(cohomology_dim(R.complex, i) == 0);
        CHECK(cohomology_dim(R.complex, 0) == 1);
    }
    SUBCASE("free module: Betti (1,0,0,0)") {
        auto A = kx_mod_xn(2);
        ModulePresentation M;
        M.alg = A;
        M.generators = 1;
        M.relations = MatrixOverA(A, 1, 0);
        auto R = minimal_resolution(M, 3);
        CHECK(R.betti == std::vector<int>{1, 0, 0, 0});
        CHECK_FALSE(R.truncated);
    }
}

TEST_CASE("resolution output is minimal, exact in the middle, resolves M") {
    auto B = kxy_m2();
    auto R = minimal_resolution(residue_field(B), 3);
    CHECK(is_minimal(R.complex));
    for (int i = -2; i < 0; ++i) CHECK(cohomology_dim(R.complex, i) == 0);
    auto H = cohomology(R.complex, 0);
    CHECK(H.kdim == 1);
    // annihilator of H^0 equals the maximal ideal = annihilator of k
    KModule N = kmodule_from_presentation(residue_field(B));
    CHECK(N.dim == 1);
    KMat ann = N.annihilator();
    CHECK(ann.rows() == B->dim() - 1);
}

TEST_CASE("betti numbers do not depend on the presentation") {
    auto A = kxy_22();
    // k presented with generators {1} vs a redundant presentation {1, x} with
    // a unit-entry relation column folding the second generator away
    ModulePresentation M1 = residue_field(A);
    ModulePresentation M2;
    M2.alg = A;
    M2.generators = 2;
    M2.relations = MatrixOverA(A, 2, 5);
    // relations: x e1, y e1, x e2, y e2, e2 - x e1... keep coker = k
    M2.relations.at(0, 0) = A->parse("x");
    M2.relations.at(0, 1) = A->parse("y");
    M2.relations.at(1, 2) = A->parse("x");
    M2.relations.at(1, 3) = A->parse("y");
    M2.relations.at(0, 4) = -A->parse("x");
    M2.relations.at(1, 4) = A->one();
    auto R1 = minimal_resolution(M1, 3);
    auto R2 = minimal_resolution(M2, 3);
    CHECK(R1.betti == R2.betti);
}

TEST_CASE("graded minimal resolution of k over k[x]") {
    auto G = kx_graded(8);
    auto R = minimal_resolution(residue_field(G), 4);
    CHECK(R.betti == std::vector<int>{1, 1, 0, 0, 0});
    CHECK(R.complex.rank(-1) == 1);
    CHECK(R.complex.diff(-1).at(0, 0) == G->parse("x"));
    CHECK_FALSE(R.truncated);
}

TEST_CASE("projective resolution of a complex") {
    auto A = kx_mod_xn(2);
    SUBCASE("free and minimal: unchanged") {
        Complex X = two_term(A, "x");
        auto p = proj_resolution_of_complex(X, 3);
        CHECK(p.complex.eq(X));
        CHECK_FALSE(p.truncated);
    }
    SUBCASE("cone(id): zero") {
        Complex C = cone(ChainMap::identity(Complex::stalk(A)));
        auto p = proj_resolution_of_complex(C, 3);
        CHECK(p.complex.is_zero());
    }
    SUBCASE("stalk module k: the Betti slice") {
        KModule k = kmodule_from_presentation(residue_field(A));
        KModComplex M = kmod_stalk(k, 0);
        FreeModel fm = min_free_model(M, -3);
        auto mr = minimize(fm.complex);
        CHECK(mr.minimal.rank(0) == 1);
        CHECK(mr.minimal.rank(-1) == 1);
        CHECK(mr.minimal.rank(-2) == 1);
        CHECK(mr.is_minimal_input);  // construction is already minimal here
        CHECK(fm.truncated);
        CHECK(verify_quasi_iso(fm.complex, M, fm.quasi_iso, -2));
    }
    SUBCASE("two-term module complex with a nonzero connecting map") {
        // module complex k --0--> A/(x): glue checks the cone induction
        auto B = kxy_22();
        KModule k = kmodule_from_presentation(residue_field(B));
        ModulePresentation P2;
        P2.alg = B;
        P2.generators = 1;
        P2.relations = MatrixOverA(B, 1, 1);
        P2.relations.at(0, 0) = B->parse("x");
        KModule Ax = kmodule_from_presentation(P2);
        KModComplex M;
        M.alg = B;
        M.terms.emplace(0, k);
        M.terms.emplace(1, Ax);
        // nonzero A-linear map k -> A/(x) does not exist unless it hits the socle;
        // use the zero differential: the model must split as a direct sum
        FreeModel fm = min_free_model(M, -4);
        CHECK(verify_quasi_iso(fm.complex, M, fm.quasi_iso, -3));
        auto mr = minimize(fm.complex);
        CHECK(mr.minimal.rank(1) == 1);
        CHECK(cohomology_dim(mr.minimal, 0) == 1);       // H^0 = k
        CHECK(cohomology_dim(mr.minimal, 1) == Ax.dim);  // H^1 = A/(x)
    }
}

TEST_CASE("cohomology module presentations") {
    auto A = kx_mod_xn(2);
    Complex X = two_term(A, "x");
    // H^0 = A/(x): one generator, one relation x
    auto M0 = presentation_of(cohomology_kmodule(X, 0));
    CHECK(M0.generators == 1);
    REQUIRE(M0.relations.cols() == 1);
    CHECK(M0.relations.at(0, 0) == A->parse("x"));
    auto B = kxy_22();
    Complex K = koszul(B, {B->parse("x"), B->parse("y")});
    auto Mk = presentation_of(cohomology_kmodule(K, 0));
    CHECK(Mk.generators == 1);
    CHECK(Mk.relations.cols() == 2);
}

TEST_CASE("matlis dual complexes resolve to E-powers") {
    auto A = kx_mod_xn(2);  // Gorenstein
    SUBCASE("stalk A resolves to stalk E") {
        Complex I = inj_resolution_via_matlis(Complex::stalk(A), 3);
        CHECK(I.e_power_terms());
        CHECK(I.total_rank() == 1);
        CHECK(I.rank(0) == 1);
    }
    SUBCASE("zero complex") {
        CHECK(inj_resolution_via_matlis(Complex::zero(A), 2).is_zero());
    }
    SUBCASE("term ranks match the double-dual route") {
        Complex X = two_term(A, "x");
        Complex I = inj_resolution_via_matlis(X, 3);
        ProjResolution p = proj_resolution_of_complex(matlis_dual_raw(X), 3);
        auto si = I.support();
        REQUIRE(si.has_value());
        for (int i = si->first; i <= si->second; ++i)
            CHECK(I.rank(i) == p.complex.rank(-i));
    }
    SUBCASE("non-Gorenstein: E-power terms with matching k-dimensions") {
        auto B = kxy_m2();
        Complex I = inj_resolution_via_matlis(Complex::stalk(B), 2);
        CHECK(I.e_power_terms());
        CHECK(I.rank(0) == 2);  // mu(E) = socle dimension of B
        CHECK(cohomology_dim(I, 0) == B->dim());  // H^0 is the Matlis dual of A
        CHECK(cohomology_dim(I, 1) == 0);
    }
}
