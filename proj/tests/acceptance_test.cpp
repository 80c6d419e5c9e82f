// Acceptance suite: runs every paper-check criterion and prints one pass/fail
// line per item. All arithmetic is exact; there are no tolerances to tune.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "homforge/checks.hpp"

using namespace homforge;

namespace {

void report(const CheckResult& r) {
    std::printf("[%s] criterion %d: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str());
    if (!r.pass) std::printf("        %s\n", r.details.c_str());
    std::fflush(stdout);
}

}  // namespace

TEST_CASE("criterion 1: sign and formula fidelity") {
    auto r = check_sign_formula_fidelity();
    report(r);
    CHECK_MESSAGE(r.pass, r.details);
}

TEST_CASE("criterion 2: mu formulas and vanishing above the width") {
    auto r = check_hom_vanishing_and_mu();
    report(r);
    CHECK_MESSAGE(r.pass, r.details);
}

TEST_CASE("criterion 3: Tate ranks equal the Betti numbers of k") {
    auto r = check_tate_gulliksen_schoeller();
    report(r);
    CHECK_MESSAGE(r.pass, r.details);
}

TEST_CASE("criterion 4: good filtration extension with exact parameters") {
    auto r = check_good_filtration_extension();
    report(r);
    CHECK_MESSAGE(r.pass, r.details);
}

TEST_CASE("criterion 5: dualities are involutions with witnesses") {
    auto r = check_dualities();
    report(r);
    CHECK_MESSAGE(r.pass, r.details);
}

TEST_CASE("criterion 6: Serre pairing dimensions and naturality") {
    auto r = check_serre_pairing();
    report(r);
    CHECK_MESSAGE(r.pass, r.details);
}

TEST_CASE("criterion 7: AR triangles with unique connecting data") {
    auto r = check_ar_triangles();
    report(r);
    CHECK_MESSAGE(r.pass, r.details);
}

TEST_CASE("criterion 8: Miyata splitting on random cone triangles") {
    auto r = check_miyata_random_cones();
    report(r);
    CHECK_MESSAGE(r.pass, r.details);
}

TEST_CASE("criterion 9: cone power families and finite length certificates") {
    auto r = check_cone_power_family();
    report(r);
    CHECK_MESSAGE(r.pass, r.details);
}

TEST_CASE("criterion 10: triangle order and AR minimality") {
    auto r = check_triangle_order();
    report(r);
    CHECK_MESSAGE(r.pass, r.details);
}
