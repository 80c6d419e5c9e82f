#include "homforge/linalg.hpp"

#include <map>

#include "homforge/errors.hpp"

namespace homforge {

KMat KMat::identity(Field f, int n) {
    KMat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

bool KMat::is_zero() const {
    for (const auto& x : a_)
        if (!F_.is_zero(x)) return false;
    return true;
}

KMat KMat::mul(const KMat& o) const {
    if (cols_ != o.rows_) throw InternalInconsistency("KMat::mul shape mismatch");
    KMat r(F_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Scalar& x = at(i, k);
            if (F_.is_zero(x)) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Scalar& y = o.at(k, j);
                if (F_.is_zero(y)) continue;
                r.at(i, j) = F_.add(r.at(i, j), F_.mul(x, y));
            }
        }
    }
    return r;
}

KMat KMat::add(const KMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw InternalInconsistency("KMat::add shape mismatch");
    KMat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_.add(r.a_[i], o.a_[i]);
    return r;
}

KMat KMat::sub(const KMat& o) const { return add(o.neg()); }

KMat KMat::neg() const {
    KMat r = *this;
    for (auto& x : r.a_) x = F_.neg(x);
    return r;
}

KMat KMat::scaled(const Scalar& c) const {
    KMat r = *this;
    for (auto& x : r.a_) x = F_.mul(x, c);
    return r;
}

KMat KMat::transpose() const {
    KMat r(F_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool KMat::eq(const KMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (!F_.eq(a_[i], o.a_[i])) return false;
    return true;
}

std::vector<Scalar> KMat::apply(const std::vector<Scalar>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw InternalInconsistency("KMat::apply shape mismatch");
    std::vector<Scalar> r(rows_, F_.zero());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (F_.is_zero(at(i, j)) || F_.is_zero(v[j])) continue;
            r[i] = F_.add(r[i], F_.mul(at(i, j), v[j]));
        }
    return r;
}

KMat KMat::vstack(const KMat& o) const {
    if (cols_ != o.cols_) throw InternalInconsistency("vstack shape mismatch");
    KMat r(F_, rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
}

KMat KMat::hstack(const KMat& o) const {
    if (rows_ != o.rows_) throw InternalInconsistency("hstack shape mismatch");
    KMat r(F_, rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

Rref rref(const KMat& m) {
    const Field& F = m.field();
    Rref out{m, {}, 0};
    KMat& M = out.m;
    int r = 0;
    for (int c = 0; c < M.cols() && r < M.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < M.rows(); ++i)
            if (!F.is_zero(M.at(i, c))) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < M.cols(); ++j) std::swap(M.at(pr, j), M.at(r, j));
        Scalar inv = F.inv(M.at(r, c));
        for (int j = c; j < M.cols(); ++j) M.at(r, j) = F.mul(M.at(r, j), inv);
        for (int i = 0; i < M.rows(); ++i) {
            if (i == r || F.is_zero(M.at(i, c))) continue;
            Scalar f = M.at(i, c);
            for (int j = c; j < M.cols(); ++j)
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(r, j)));
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

int rank(const KMat& m) { return rref(m).rank; }

KMat kernel_basis(const KMat& m) {
    const Field& F = m.field();
    Rref rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    int free_count = m.cols() - rr.rank;
    KMat out(F, free_count, m.cols());
    int row = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        out.at(row, c) = F.one();
        for (int r = 0; r < rr.rank; ++r)
            out.at(row, rr.pivot_cols[r]) = F.neg(rr.m.at(r, c));
        ++row;
    }
    return out;
}

KMat row_space_basis(const KMat& m) {
    Rref rr = rref(m);
    KMat out(m.field(), rr.rank, m.cols());
    for (int r = 0; r < rr.rank; ++r)
        for (int c = 0; c < m.cols(); ++c) out.at(r, c) = rr.m.at(r, c);
    return out;
}

std::optional<std::vector<Scalar>> solve(const KMat& m, const std::vector<Scalar>& b) {
    KMat B(m.field(), m.rows(), 1);
    for (int i = 0; i < m.rows(); ++i) B.at(i, 0) = b[i];
    auto X = solve_matrix(m, B);
    if (!X) return std::nullopt;
    std::vector<Scalar> x(m.cols(), m.field().zero());
    for (int i = 0; i < m.cols(); ++i) x[i] = X->at(i, 0);
    return x;
}

std::optional<KMat> solve_matrix(const KMat& m, const KMat& B) {
    const Field& F = m.field();
    if (B.rows() != m.rows()) throw InternalInconsistency("solve shape mismatch");
    Rref rr = rref(m.hstack(B));
    KMat X(F, m.cols(), B.cols());
    for (int r = 0; r < rr.rank; ++r) {
        int pc = rr.pivot_cols[r];
        if (pc >= m.cols()) return std::nullopt;  // pivot in the rhs: inconsistent
        for (int j = 0; j < B.cols(); ++j) X.at(pc, j) = rr.m.at(r, m.cols() + j);
    }
    return X;
}

std::optional<KMat> inverse(const KMat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto X = solve_matrix(m, KMat::identity(m.field(), m.rows()));
    if (!X) return std::nullopt;
    if (!m.mul(*X).eq(KMat::identity(m.field(), m.rows()))) return std::nullopt;
    return X;
}

std::optional<std::vector<Scalar>> coordinates_in_rowspace(const KMat& basis,
                                                           const std::vector<Scalar>& v) {
    return solve(basis.transpose(), v);
}

KMat complete_basis(const KMat& small, const KMat& big) {
    const Field& F = small.field();
    int n = big.cols();
    // incremental elimination: reduced rows keyed by pivot column
    std::map<int, std::vector<Scalar>> pivots;
    auto reduce = [&](std::vector<Scalar> v) -> std::optional<std::vector<Scalar>> {
        for (auto& [pc, row] : pivots) {
            if (F.is_zero(v[pc])) continue;
            Scalar f = v[pc];
            for (int c = pc; c < n; ++c) v[c] = F.sub(v[c], F.mul(f, row[c]));
        }
        int lead = -1;
        for (int c = 0; c < n; ++c)
            if (!F.is_zero(v[c])) { lead = c; break; }
        if (lead < 0) return std::nullopt;
        Scalar inv = F.inv(v[lead]);
        for (int c = lead; c < n; ++c) v[c] = F.mul(v[c], inv);
        pivots.emplace(lead, v);
        return v;
    };
    for (int r = 0; r < small.rows(); ++r) {
        std::vector<Scalar> v(n, F.zero());
        for (int c = 0; c < n; ++c) v[c] = small.at(r, c);
        reduce(std::move(v));
    }
    std::vector<int> taken;
    for (int r = 0; r < big.rows(); ++r) {
        std::vector<Scalar> v(n, F.zero());
        for (int c = 0; c < n; ++c) v[c] = big.at(r, c);
        if (reduce(std::move(v))) taken.push_back(r);
    }
    KMat extra(F, static_cast<int>(taken.size()), n);
    for (std::size_t i = 0; i < taken.size(); ++i)
        for (int c = 0; c < n; ++c) extra.at(static_cast<int>(i), c) = big.at(taken[i], c);
    return extra;
}

bool rowspace_contained(const KMat& a, const KMat& b) {
    KMat bb = row_space_basis(b);
    return rank(bb.vstack(a)) == bb.rows();
}

}  // namespace homforge
