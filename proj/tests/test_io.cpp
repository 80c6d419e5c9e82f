#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "homforge/io.hpp"
#include "test_util.hpp"

using namespace homforge;
using namespace homforge::testutil;

TEST_CASE("ring round trip") {
    for (auto A : {kx_mod_xn(3), kxy_22(), kx_graded(9)}) {
        Json j = ring_to_json(A);
        AlgebraPtr B = ring_from_json(j);
        CHECK(*A == *B);
        CHECK(ring_to_json(B) == j);
    }
    auto F5 = LocalAlgebra::make(Field::prime(5), {"x"}, {Monomial{{2}}}, Backend::artinian);
    CHECK(*ring_from_json(ring_to_json(F5)) == *F5);
}

TEST_CASE("complex round trip is the identity on canonical form") {
    auto A = kxy_22();
    Complex K = koszul(A, {A->parse("x"), A->parse("y")});
    Json j = complex_to_json(K);
    Complex back = complex_from_json(j).checked();
    CHECK(back.eq(K));
    CHECK(complex_to_json(back) == j);

    auto G = kx_graded(8);
    Complex X = two_term(G, "x^2");
    Json jg = complex_to_json(X);
    CHECK(complex_from_json(jg).checked().eq(X));

    CHECK(complex_from_json(complex_to_json(Complex::zero(A))).checked().is_zero());
}

TEST_CASE("chain map and triangle round trips") {
    auto A = kx_mod_xn(2);
    Complex X = two_term(A, "x");
    ChainMap f = ChainMap::identity(X).scaled(A->parse("x"));
    Json j = chain_map_to_json(f);
    ChainMap back = chain_map_from_json(j);
    CHECK(back.eq(f));

    Triangle t = cone_triangle(f);
    Json jt = triangle_to_json(t);
    Triangle bt = triangle_from_json(jt);
    CHECK(bt.x2.eq(t.x2));
    CHECK(bt.f2.eq(t.f2));
    CHECK(bt.f1.eq(t.f1));
}

TEST_CASE("bad inputs raise user errors with locations") {
    CHECK_THROWS_AS(ring_from_json(Json{{"field", "R"}}), UserError);
    CHECK_THROWS_AS(ring_from_json(Json::array()), UserError);
    auto A = kx_mod_xn(2);
    Json j{{"ring", ring_to_json(A)},
           {"terms", {{"0", {{"rank", 1}}}}},
           {"differentials", {{"0", Json::array({Json::array({"x"})})}}}};
    // differential points outside the declared terms
    CHECK_THROWS_AS(complex_from_json(j).checked(), UserError);
}

TEST_CASE("filtration serialization round trips through word names") {
    auto A = kx_mod_xn(2);
    TateWithFiltration T = tate_resolve_with_filtration(A, 5);
    Json j = filtration_to_json(T.resolution.dg, T.filtration);
    Filtration back = filtration_from_json(T.resolution.dg, j);
    CHECK(back.parameter == T.filtration.parameter);
    CHECK(back.top == T.filtration.top);
    CHECK(back.pieces == T.filtration.pieces);
    auto rep = verify_good_filtration(T.resolution.dg, back);
    CHECK(rep.pass());
}
