#pragma once

// Dense exact linear algebra over a Field. Deterministic first-nonzero
// pivoting throughout, so every verdict downstream is reproducible.

#include <optional>
#include <vector>

#include "homforge/field.hpp"

namespace homforge {

class KMat {
public:
    KMat() : F_(Field::rationals()) {}
    KMat(Field f, int rows, int cols)
        : F_(f), rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * cols, f.zero()) {}

    static KMat identity(Field f, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return F_; }

    Scalar& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Scalar& at(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * cols_ + c];
    }

    bool is_zero() const;
    KMat mul(const KMat& o) const;
    KMat add(const KMat& o) const;
    KMat sub(const KMat& o) const;
    KMat neg() const;
    KMat scaled(const Scalar& c) const;
    KMat transpose() const;
    bool eq(const KMat& o) const;

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

    /// Stack o below (column counts must match).
    KMat vstack(const KMat& o) const;
    /// Stack o to the right (row counts must match).
    KMat hstack(const KMat& o) const;

private:
    Field F_;
    int rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

struct Rref {
    KMat m;
    std::vector<int> pivot_cols;
    int rank = 0;
};

Rref rref(const KMat& m);

int rank(const KMat& m);

/// Rows form a basis of the kernel of m (right kernel: m v = 0).
KMat kernel_basis(const KMat& m);

/// Rows form a basis of the row space (reduced).
KMat row_space_basis(const KMat& m);

/// One solution of m x = b, if any.
std::optional<std::vector<Scalar>> solve(const KMat& m, const std::vector<Scalar>& b);

/// Solution of m X = B (columnwise), if every column is consistent.
std::optional<KMat> solve_matrix(const KMat& m, const KMat& B);

/// Inverse of a square matrix, nullopt when singular.
std::optional<KMat> inverse(const KMat& m);

/// Coordinates of v in the row space of `basis` (rows independent), if v lies in it.
std::optional<std::vector<Scalar>> coordinates_in_rowspace(const KMat& basis,
                                                           const std::vector<Scalar>& v);

/// Given nested row spaces small <= big, rows completing small to a basis of big.
KMat complete_basis(const KMat& small, const KMat& big);

/// True when the row space of a is contained in the row space of b.
bool rowspace_contained(const KMat& a, const KMat& b);

}  // namespace homforge
