#pragma once

// Koszul complexes, minimal free resolutions and the projective-resolution
// functor p on complexes of finite-length modules (k-presented), truncated at
// an explicit bound. Injective resolutions come from p through Matlis duality.

#include <optional>
#include <vector>

#include "homforge/complex.hpp"
#include "homforge/homotopy.hpp"

namespace homforge {

Complex koszul(const AlgebraPtr& A, const std::vector<RingElem>& elems);

/// Finite-length A-module in k-coordinates: action matrices per variable.
struct KModule {
    AlgebraPtr alg;
    int dim = 0;
    std::vector<KMat> action;

    KMat action_of(const RingElem& a) const;
    /// Row basis of {a in A : a N = 0} in A's k-coordinates.
    KMat annihilator() const;
};

struct ModulePresentation {
    AlgebraPtr alg;
    int generators = 0;
    std::optional<std::vector<int>> degrees;
    MatrixOverA relations;  // columns are relations; may have 0 columns
};

KModule kmodule_from_presentation(const ModulePresentation& M);
/// A^rank as a KModule (artinian backend).
KModule kmodule_free(const AlgebraPtr& A, int rank);
/// E^rank with the contragredient action.
KModule kmodule_e_power(const AlgebraPtr& A, int rank);

struct ResolutionSlice {
    Complex complex;  // support [-bound, 0] (or shorter when finite)
    std::vector<int> betti;
    bool minimal = true;
    bool truncated = false;  // the last computed syzygy was nonzero
    /// Augmentation: k-coordinates of the degree-0 term onto the module.
    KMat augmentation;
};

/// Minimal free resolution of the presented module to homological degree
/// `bound`. Artinian, or graded with degrees (certified inside the window).
ResolutionSlice minimal_resolution(const ModulePresentation& M, int bound);
ResolutionSlice minimal_resolution_of(const KModule& N, int bound);

/// Complex of finite-length modules in k-coordinates.
struct KModComplex {
    AlgebraPtr alg;
    std::map<int, KModule> terms;
    std::map<int, KMat> diffs;  // d^i : terms[i] -> terms[i+1]

    int dim(int i) const;
    KMat diff(int i) const;
    std::optional<std::pair<int, int>> support() const;
    /// d^2 = 0 and A-linearity of the differentials.
    void validate() const;
    int cohomology_dim(int i) const;
};

/// k-presentation of a complex; E-coordinate terms use the contragredient action.
KModComplex kmod_from_complex(const Complex& C);
KModComplex kmod_stalk(const KModule& N, int degree);

/// Map of k-coordinate columns induced by a free complex at term i.
KMat free_term_coords(const Complex& P, int i, bool contragredient);

struct FreeModel {
    Complex complex;               // bounded above free complex
    std::map<int, KMat> quasi_iso; // q^i : k-coords of complex^i -> target^i
    bool truncated = false;
};

/// Free complex quasi-isomorphic to M, materialized in degrees >= cutoff,
/// with the quasi-isomorphism witness. Minimal below the input's support up
/// to the final minimization pass done by proj_resolution_of_complex.
FreeModel min_free_model(const KModComplex& M, int cutoff);

/// Checks that q is a chain map inducing isomorphisms on cohomology in all
/// degrees > certified_above.
bool verify_quasi_iso(const Complex& P, const KModComplex& M,
                      const std::map<int, KMat>& q, int certified_above);

struct ProjResolution {
    Complex complex;  // minimal
    std::map<int, KMat> quasi_iso;  // onto the k-presentation of the input
    bool truncated = false;
};

/// The functor p: minimal free complex quasi-isomorphic to C, truncated at
/// homological distance `bound` below the support.
ProjResolution proj_resolution_of_complex(const Complex& C, int bound);

/// Matlis dual of p of the Matlis dual: bounded complex of E-powers.
Complex inj_resolution_via_matlis(const Complex& C, int bound);

/// H^i(C) as a k-presented module with its A-action (artinian backend).
KModule cohomology_kmodule(const Complex& C, int i);

/// Minimal generators and relations of a k-presented module.
ModulePresentation presentation_of(const KModule& N);

}  // namespace homforge
