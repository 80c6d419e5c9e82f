#pragma once

// The paper-check suite: one callable verifier per acceptance item, shared by
// the CLI `suite` command and the acceptance test binary.

#include <string>
#include <vector>

namespace homforge {

struct CheckResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string details;
};

CheckResult check_sign_formula_fidelity();
CheckResult check_hom_vanishing_and_mu();
CheckResult check_tate_gulliksen_schoeller();
CheckResult check_good_filtration_extension();
CheckResult check_dualities();
CheckResult check_serre_pairing();
CheckResult check_ar_triangles();
CheckResult check_miyata_random_cones();
CheckResult check_cone_power_family();
CheckResult check_triangle_order();

/// All ten checks in order; `quick` runs the fast subset (1, 2, 5, 9).
std::vector<CheckResult> run_paper_checks(bool quick = false);

}  // namespace homforge
