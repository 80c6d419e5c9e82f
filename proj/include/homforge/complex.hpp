#pragma once

// Bounded cochain complexes of finite free A-modules, with the cone, shift,
// Hom-complex and duality constructions. Sign conventions, once and for all:
//   shift      d[m]^i          = (-1)^m d^{i+m}
//   cone       d^n(u,v)        = (-d^{n+1} u, d^n v - f^{n+1} u)
//   cone seq   V -> cone(f) -> U[1],  v |-> (0,v),  (u,v) |-> -u
//   Hom        d(f)            = d_V o f - (-1)^n f o d_U
// Matrices act on column vectors; composition g o f is the product g*f.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homforge/algebra.hpp"
#include "homforge/linalg.hpp"

namespace homforge {

class MatrixOverA {
public:
    MatrixOverA() = default;
    MatrixOverA(AlgebraPtr alg, int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const AlgebraPtr& algebra() const { return alg_; }

    RingElem& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const RingElem& at(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * cols_ + c];
    }

    static MatrixOverA identity(AlgebraPtr alg, int n);
    static MatrixOverA scalar(AlgebraPtr alg, int n, const RingElem& r);

    bool is_zero() const;
    MatrixOverA mul(const MatrixOverA& o) const;
    MatrixOverA add(const MatrixOverA& o) const;
    MatrixOverA sub(const MatrixOverA& o) const;
    MatrixOverA neg() const;
    MatrixOverA scaled(const RingElem& r) const;
    MatrixOverA transpose() const;
    bool eq(const MatrixOverA& o) const;

    /// Constant terms as a k-matrix (the image mod m).
    KMat mod_m() const;

    /// k-linear expansion on the monomial basis (Artinian backend). Each entry
    /// becomes a dimA x dimA multiplication block; `contragredient` transposes
    /// the blocks (action on E-coordinates). Coordinate (gen g, basis b) maps
    /// to index g*dimA + b.
    KMat k_expand(bool contragredient = false) const;

    /// Graded: the k-matrix between internal-degree-d slices, where the slice
    /// basis of a free module with generator degrees g is
    ///   { (gen j, monomial m) : deg m = d + g_j }.
    KMat slice(const std::vector<int>& tgt_deg, const std::vector<int>& src_deg,
               int d) const;

private:
    AlgebraPtr alg_;
    int rows_ = 0, cols_ = 0;
    std::vector<RingElem> a_;
};

/// Basis of the internal-degree-d slice of a graded free module.
std::vector<std::pair<int, Monomial>> graded_slice_basis(const AlgebraPtr& A,
                                                         const std::vector<int>& gen_deg,
                                                         int d);

struct FreeModule {
    int rank = 0;
    std::optional<std::vector<int>> degrees;  // required on the graded backend
};

struct Violation {
    int index = 0;
    std::string what;
};

class Complex {
public:
    Complex() = default;

    /// Validates shapes, graded homogeneity and d^2 = 0; throws UserError.
    static Complex make(AlgebraPtr alg, std::map<int, FreeModule> terms,
                        std::map<int, MatrixOverA> diffs, bool e_power_terms = false);
    /// Shape checks only; for internal constructions whose low-degree edge is
    /// a truncation artifact. Everything public goes through make().
    static Complex make_trusted(AlgebraPtr alg, std::map<int, FreeModule> terms,
                                std::map<int, MatrixOverA> diffs, bool e_power_terms = false);
    /// Stupid truncation: keep terms in degrees >= cutoff.
    Complex truncate_below(int cutoff) const;

    struct Builder {
        AlgebraPtr alg;
        std::map<int, FreeModule> terms;
        std::map<int, MatrixOverA> diffs;
        bool e_power = false;
    };
    /// Shape/homogeneity checks but d^2 reported as a verdict, for `validate`.
    static std::optional<Violation> square_violation(const AlgebraPtr& alg,
                                                     const std::map<int, FreeModule>& terms,
                                                     const std::map<int, MatrixOverA>& diffs);

    static Complex zero(AlgebraPtr alg);
    /// A^rank concentrated in one degree.
    static Complex stalk(AlgebraPtr alg, int degree = 0, int rank = 1,
                         std::optional<std::vector<int>> degrees = std::nullopt);

    const AlgebraPtr& algebra() const { return data_->alg; }
    bool is_zero() const { return data_->terms.empty(); }
    /// Terms are labelled E^rank instead of A^rank (Matlis dual-basis form).
    bool e_power_terms() const { return data_->e_power; }

    int rank(int i) const;
    const std::vector<int>& degrees(int i) const;  // graded backend
    MatrixOverA diff(int i) const;                 // zero matrix when absent
    std::optional<std::pair<int, int>> support() const;
    const std::map<int, FreeModule>& terms() const { return data_->terms; }

    int total_rank() const;
    bool eq(const Complex& o) const;  // same ranks, degrees and matrices

    Complex shift(int m) const;

private:
    struct Data {
        AlgebraPtr alg;
        std::map<int, FreeModule> terms;
        std::map<int, MatrixOverA> diffs;
        bool e_power = false;
    };
    explicit Complex(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    static Complex from_builder(Builder b);
    std::shared_ptr<const Data> data_;
};

class ChainMap {
public:
    ChainMap() = default;
    /// Verifies commutation with the differentials; throws UserError if not.
    static ChainMap make(Complex source, Complex target,
                         std::map<int, MatrixOverA> components);
    /// Skips the commuting check (truncation-boundary internals only).
    static ChainMap make_trusted(Complex source, Complex target,
                                 std::map<int, MatrixOverA> components);
    static ChainMap zero(Complex source, Complex target);
    static ChainMap identity(const Complex& c);

    const Complex& source() const { return source_; }
    const Complex& target() const { return target_; }
    MatrixOverA component(int i) const;
    const std::map<int, MatrixOverA>& components() const { return comps_; }

    ChainMap compose(const ChainMap& first) const;  // this o first
    ChainMap add(const ChainMap& o) const;
    ChainMap sub(const ChainMap& o) const;
    ChainMap neg() const;
    ChainMap scaled(const RingElem& r) const;
    /// f[m] : source[m] -> target[m] (components relabelled, no sign).
    ChainMap shift(int m) const;
    bool is_zero_map() const;
    bool eq(const ChainMap& o) const;

private:
    Complex source_, target_;
    std::map<int, MatrixOverA> comps_;
};

/// Degree -1 maps s^i : X^i -> Y^{i-1}, as in f = ds + sd.
struct Homotopy {
    Complex source, target;
    std::map<int, MatrixOverA> maps;

    MatrixOverA component(int i) const;
    /// ds + sd as a chain map X -> Y.
    ChainMap boundary() const;
};

enum class Provenance { strict_cone, claimed };

/// X0 --f0--> X1 --f1--> X2 --f2--> X0[1]
struct Triangle {
    Complex x0, x1, x2;
    ChainMap f0, f1, f2;
    Provenance provenance = Provenance::claimed;
};

// ---- operations -----------------------------------------------------------

Complex cone(const ChainMap& f, bool validate = true);
Triangle cone_triangle(const ChainMap& f);

/// psi(u,v) = (u, r v) : cone(f) -> cone(r f); the two squares of the
/// cone-scaling diagram are verified exactly.
ChainMap cone_scale_map(const ChainMap& f, const RingElem& r);

Complex hom_complex(const Complex& U, const Complex& V);

struct HomBlock {
    int i;        // source term index; target term is i + n
    int src_rank; // rank U^i
    int tgt_rank; // rank V^{i+n}
    int offset;   // first generator index of this block in hom^n
};
/// Block layout of hom_complex(U,V)^n; within a block, (row a, col b) of a
/// map U^i -> V^{i+n} sits at offset + b*tgt_rank + a.
std::vector<HomBlock> hom_blocks(const Complex& U, const Complex& V, int n);

/// A chain map as a coordinate vector in hom^0 (A-coefficients per generator).
std::vector<RingElem> chain_map_to_hom0(const ChainMap& f);
ChainMap hom0_to_chain_map(const Complex& U, const Complex& V,
                           const std::vector<RingElem>& coords);

Complex dual(const Complex& U);
ChainMap dual_map(const ChainMap& f);  // contravariant: dual(target) -> dual(source)

/// The canonical iso (U*)* = U, diag((-1)^n).
ChainMap double_dual_iso(const Complex& U);

/// Matlis dual: E-coordinate complex; over a Gorenstein algebra the result is
/// converted to free form through the socle isomorphism A = E.
Complex matlis_dual(const Complex& C);
/// Matlis dual without the Gorenstein free-form conversion: free terms go to
/// E-powers and E-powers back to free terms.
Complex matlis_dual_raw(const Complex& C);

Complex direct_sum(const Complex& A, const Complex& B);
ChainMap inclusion_first(const Complex& A, const Complex& B);   // A -> A + B
ChainMap inclusion_second(const Complex& A, const Complex& B);  // B -> A + B
ChainMap projection_first(const Complex& A, const Complex& B);  // A + B -> A
ChainMap projection_second(const Complex& A, const Complex& B); // A + B -> B

// ---- cohomology ------------------------------------------------------------

/// H^i with a chosen k-basis: rows of `cycles` span ker d^i, rows of
/// `boundaries` span im d^{i-1}, rows of `reps` complete boundaries to cycles.
struct Cohomology {
    int kdim = 0;
    KMat cycles, boundaries, reps;
    /// Quotient coordinates of a cycle vector.
    std::vector<Scalar> coords(const std::vector<Scalar>& cycle) const;
};

/// Artinian (k-expanded) cohomology at index i.
Cohomology cohomology(const Complex& C, int i);
int cohomology_dim(const Complex& C, int i);

/// Induced map H^i(f) in the chosen bases.
KMat induced_map(const ChainMap& f, int i, const Cohomology& src, const Cohomology& tgt);

/// Graded backend: dim_k H^i(C) in each internal degree 0..window.
std::vector<int> graded_cohomology_dims(const Complex& C, int i, int window);

/// k-expansion of the action of `a` on the k-coordinates of term i.
KMat term_action(const Complex& C, int i, const RingElem& a);

}  // namespace homforge
