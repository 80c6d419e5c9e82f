#pragma once

// Affine systems in unknown graded maps between complexes, solved exactly by
// k-linearization. An unknown is a family M^i : S^i -> T^{i+shift}; equations
// are sums of terms L(i) * M^{i+off} * R(i) against a right-hand side. On the
// artinian backend each entry expands over the monomial basis; on the graded
// backend each entry is homogeneous of forced degree, so its coordinate space
// is the finite slice of A in that degree. Both cases share one code path:
// rows are created for the monomials that actually occur.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "homforge/complex.hpp"

namespace homforge {

class LinearMapSystem {
public:
    explicit LinearMapSystem(AlgebraPtr alg) : alg_(std::move(alg)) {}

    /// Unknown family M^i : src^i -> tgt^{i+shift}. On the graded backend the
    /// entries are homogeneous of the forced degree plus `internal_offset`.
    int add_unknown(Complex src, Complex tgt, int shift, int internal_offset = 0);

    /// Equation family indexed by degrees i of eq_src, with values in
    /// Hom(eq_src^i, eq_tgt^{i+shift}).
    int add_equation(Complex eq_src, Complex eq_tgt, int shift);

    /// Adds the term  coeff * left(i) * M^{i+r_shift} * right(i)  to equation
    /// eq at every degree i. Shapes: right(i) maps eq_src^i into
    /// var_src^{i+r_shift}; left(i) maps var_tgt^{i+r_shift+var_shift} into
    /// eq_tgt^{i+eq_shift}.
    void add_term(int eq, int var, int r_shift, std::function<MatrixOverA(int)> left,
                  std::function<MatrixOverA(int)> right, RingElem coeff);

    /// Convenience: term  coeff * M^{i}  when the unknown maps eq_src to
    /// eq_tgt directly (identity on both sides).
    void add_identity_term(int eq, int var, RingElem coeff);

    void add_rhs(int eq, int degree, const MatrixOverA& m);
    void add_rhs_chain_map(int eq, const ChainMap& f);

    struct Assignment {
        std::vector<std::map<int, MatrixOverA>> vars;
    };

    std::optional<Assignment> solve_particular();
    /// Basis of the solution space of the homogeneous system.
    std::vector<Assignment> solve_homogeneous_basis();

    /// Columns of the assembled k-system belonging to one unknown, in order:
    /// unit assignments spanning the unknown's coordinate space.
    std::vector<Assignment> unit_assignments(int var);

    /// k-coordinates of a concrete value of unknown `var` in this layout.
    std::vector<Scalar> var_to_kvec(int var, const std::map<int, MatrixOverA>& value) const;
    std::map<int, MatrixOverA> kvec_to_var(int var, const std::vector<Scalar>& v) const;
    int var_dim(int var) const;

private:
    struct VarSlot {
        int degree;   // i
        int row, col; // entry (row, col) of M^i
        std::vector<Monomial> monomials;
        int offset;   // first k-column
    };
    struct Var {
        Complex src, tgt;
        int shift;
        int internal_offset = 0;
        std::vector<VarSlot> slots;
        int offset = 0, width = 0;
    };
    struct Term {
        int var, r_shift;
        std::function<MatrixOverA(int)> left, right;
        RingElem coeff;
    };
    struct Eq {
        Complex src, tgt;
        int shift;
        std::vector<Term> terms;
        std::map<int, MatrixOverA> rhs;
    };

    void finalize();
    int row_index(int eq, int degree, int r, int c, const Monomial& m);
    const std::vector<Monomial>& slot_monomials(const Complex& src, const Complex& tgt,
                                                int i, int shift, int row, int col,
                                                int internal_offset);

    AlgebraPtr alg_;
    std::vector<Var> vars_;
    std::vector<Eq> eqs_;

    bool finalized_ = false;
    int total_cols_ = 0;
    std::map<std::tuple<int, int, int, int, std::vector<int>>, int> row_ids_;
    std::vector<std::map<int, Scalar>> rows_;  // sparse rows: col -> coeff
    std::vector<Scalar> rhs_;
    std::map<std::tuple<int, int, int, int>, std::vector<Monomial>> mono_cache_;
};

}  // namespace homforge
