#pragma once

// Serre functor composite, AR-triangle construction and verification,
// triangle domination, the Miyata splitting test, cone-power families and
// finite-length certificates.

#include <cstdint>
#include <string>
#include <vector>

#include "homforge/homotopy.hpp"
#include "homforge/resolutions.hpp"

namespace homforge {

struct SerreImage {
    Complex input;
    Complex output;  // minimal representative of p(E(D(input)))
    Complex dual_stage;
    Complex matlis_stage;
    /// include : output -> matlis_stage and project : matlis_stage -> output
    /// are the homotopy-equivalence witnesses on the free path.
    ChainMap include;
    ChainMap project;
    bool free_path = true;  // Gorenstein: no resolution was needed
    bool truncated = false;
};

/// F = p o E o D, minimized. `bound` controls the p-truncation and must
/// exceed width(X) + dim_k A.
SerreImage serre_functor(const Complex& X, int bound);

/// F on morphisms along the free (Gorenstein) path.
ChainMap serre_on_map(const SerreImage& FX, const SerreImage& FY, const ChainMap& a);

/// The Serre pairing <f, g> = lambda(include o g o f) for f : X -> Y and
/// g : Y -> F(X); lambda is the socle-coefficient trace functional.
Scalar serre_pairing(const SerreImage& FX, const ChainMap& f, const ChainMap& g);

struct SerrePairingReport {
    int dim_hom_xy = 0;
    int dim_hom_y_fx = 0;
    bool dims_equal = false;
    bool naturality_checked = false;  // sampled squares, Gorenstein path only
    bool naturality_ok = true;
    bool pairing_nondegenerate = true;
    std::vector<std::string> notes;
    bool pass() const { return dims_equal && (!naturality_checked || naturality_ok); }
};

SerrePairingReport serre_pairing_check(const Complex& X, const Complex& Y,
                                       std::uint64_t seed = 1);

struct ARTriangle {
    Triangle triangle;  // x0 -> x1 -> x2 -> x0[1]
    bool right_side = true;  // right: ends at x2; left: starts at x1
    std::vector<std::string> certificates;
};

/// Right AR-triangle ending at (the minimal model of) X, built from the Serre
/// image by socle selection in Hom_K(X, F(X)) as a right End(X)-module.
ARTriangle ar_triangle_ending_at(const Complex& X, int bound = -1);

struct ARVerdict {
    bool rar1 = false;
    bool rar2 = false;
    bool rar3 = true;
    bool rar3_vacuous = false;
    int tested_maps = 0;
    std::string witness;
    std::uint64_t seed = 0;
    bool pass() const { return rar1 && rar2 && rar3; }
};

ARVerdict verify_right_ar(const ARTriangle& t, const std::vector<Complex>& family,
                          std::uint64_t seed = 1);
ARVerdict verify_left_ar(const ARTriangle& t, const std::vector<Complex>& family,
                         std::uint64_t seed = 1);

/// Rotation of a right AR triangle into the left one, with the -h[-1] sign.
ARTriangle rotate_right_to_left(const ARTriangle& t);

/// Duality on AR triangles; reverses the side.
ARTriangle ar_dual(const ARTriangle& t);

/// Triangles of S(X) shape: X[-1] --u--> U --m--> K --p--> X.
struct DominationVerdict {
    bool dominates = false;
    std::optional<ChainMap> on_middle;  // U_s -> U_t
    std::optional<ChainMap> on_cone;    // K_s -> K_t
    std::string note;
};

DominationVerdict triangle_dominates(const Triangle& s, const Triangle& t);

/// The projective-cover element of S(X): X[-1] -> V -> P -> X with P the
/// termwise contractible cover; V is X[-1] on the nose.
Triangle standard_triangle_from_projective_cover(const Complex& X);

enum class MiyataStatus { split, hypothesis_not_met, undecided_hypothesis };

struct MiyataVerdict {
    MiyataStatus status = MiyataStatus::hypothesis_not_met;
    std::optional<ChainMap> xi;       // w o xi ~ id on the third vertex
    std::optional<Homotopy> v_null;   // witness that the connecting map vanishes
    std::string note;
};

/// Splitting test on a triangle U -> W -> V -> U[1] whose middle is U + V.
MiyataVerdict miyata_split_test(const Triangle& t, std::uint64_t seed = 1);

struct ConePowerFamily {
    std::vector<Complex> members;  // K(n) = cone(r^n u), n = 1..N
    std::vector<std::vector<IsoVerdictKind>> pairwise;
};

ConePowerFamily cone_power_family(const ChainMap& u, const RingElem& r, int N,
                                  std::uint64_t seed = 1);

struct FiniteLengthVerdict {
    bool certified = false;
    bool refuted = false;
    int window = 0;
    std::string witness;  // non-torsion endomorphism description when refuted
};

/// Torsion criterion for finite-length cohomology: every endomorphism class
/// is annihilated by a power of every variable. Automatic over the artinian
/// backend; window-certified on the graded backend.
FiniteLengthVerdict finite_length_certificate(const Complex& X);

}  // namespace homforge
