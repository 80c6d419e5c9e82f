#pragma once

// Homotopy-category computations: null-homotopy solving, Hom_K spaces with
// their A-action, minimal models with two-sided witnesses, width/rank,
// isomorphism testing, endomorphism algebras and indecomposability.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homforge/complex.hpp"
#include "homforge/solver.hpp"

namespace homforge {

struct NullHomotopyVerdict {
    bool null_homotopic = false;
    std::optional<Homotopy> witness;  // f = ds + sd, exact equality
};

NullHomotopyVerdict is_null_homotopic(const ChainMap& f, int internal_offset = 0);

/// Hom_K(U, V): chain maps modulo null-homotopic ones, with k-coordinates.
class HomSpaceK {
public:
    HomSpaceK(Complex U, Complex V, int shift = 0, int internal_offset = 0);

    const Complex& source() const { return src_; }
    const Complex& shifted_target() const { return tgt_shifted_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    /// Representatives of a k-basis of Hom_K(U, V[shift]).
    const std::vector<ChainMap>& basis() const { return basis_; }
    int chain_map_dim() const { return chain_.rows(); }
    int null_homotopic_dim() const { return null_.rows(); }

    /// Coordinates of the class of f in the chosen basis.
    std::vector<Scalar> coords(const ChainMap& f) const;
    ChainMap from_coords(const std::vector<Scalar>& c) const;

private:
    Complex src_, tgt_shifted_;
    LinearMapSystem sys_;  // layout owner for k-coordinates
    int var_ = 0;
    KMat chain_, null_, reps_;
    std::vector<ChainMap> basis_;
};

int hom_space_K_dim(const Complex& U, const Complex& V);

struct MinimizeResult {
    Complex minimal;
    ChainMap project;  // X -> minimal
    ChainMap include;  // minimal -> X
    Homotopy h;        // on X: id - include o project = dh + hd, exactly
    bool is_minimal_input = false;
};

/// Gaussian cancellation of unit differential entries, with exact witnesses.
MinimizeResult minimize(const Complex& X);

bool is_minimal(const Complex& X);

int width(const Complex& X);  // throws UserError on the zero complex
int rank_invariant(const Complex& X);

/// Minimal generator count of Hom_K(X, X[j]) as an A-module. X minimal.
int mu_hom(const Complex& X, int j);

enum class IsoVerdictKind { isomorphic, not_isomorphic, undecided };

struct IsoVerdict {
    IsoVerdictKind kind = IsoVerdictKind::undecided;
    std::string separator;               // invariant that separates, if any
    std::optional<ChainMap> iso;         // minimal(X) -> minimal(Y)
    std::optional<ChainMap> iso_inverse; // exact two-sided inverse
    MinimizeResult min_x, min_y;
    std::uint64_t seed = 0;
};

IsoVerdict iso_in_K(const Complex& X, const Complex& Y, std::uint64_t seed = 1);

struct EndAlgebra {
    Complex complex;
    std::vector<ChainMap> basis;  // homotopy-class representatives
    // table[i][j] = coordinates of basis[i] o basis[j]
    std::vector<std::vector<std::vector<Scalar>>> table;
    std::vector<Scalar> identity;  // coordinates of id
    KMat radical;                  // rows: k-basis of the Jacobson radical
    int dim() const { return static_cast<int>(basis.size()); }

    std::vector<Scalar> multiply(const std::vector<Scalar>& u,
                                 const std::vector<Scalar>& v) const;
};

EndAlgebra end_algebra(const Complex& X);

struct IndecomposabilityVerdict {
    bool indecomposable = false;
    /// A verified nontrivial idempotent endomorphism when decomposable.
    std::optional<ChainMap> idempotent;
    std::string note;
};

IndecomposabilityVerdict is_indecomposable(const Complex& X);

/// Generators kept per degree; must span a subcomplex that is a termwise
/// direct summand on the chosen generators.
struct SubcomplexSelector {
    std::map<int, std::vector<int>> kept;
};

/// Extends a null-homotopy of g|V across the missing generators, degree by
/// degree, while the target is acyclic there. Throws UserError with the
/// failing degree when a lift does not exist.
Homotopy extend_null_homotopy(const ChainMap& g, const SubcomplexSelector& sel,
                              const Homotopy& s_on_v, std::pair<int, int> window);

/// Searches for r with r o incl homotopic to the identity of the source.
std::optional<ChainMap> retraction_of(const ChainMap& incl);

/// Two-sided homotopy inverse of u, when one exists: g with u g ~ 1 and
/// g u ~ 1. For bounded free complexes this succeeds exactly when u induces
/// isomorphisms on all cohomologies.
std::optional<ChainMap> homotopy_inverse(const ChainMap& u);

/// Deterministic PRNG for seeded searches (splitmix64).
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    /// Scalar from a small symmetric range over Q, or uniform over F_p.
    Scalar scalar(const Field& F);
    Scalar nonzero_scalar(const Field& F);
};

}  // namespace homforge
