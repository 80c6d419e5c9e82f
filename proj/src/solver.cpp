#include "homforge/solver.hpp"

#include <algorithm>

namespace homforge {

int LinearMapSystem::add_unknown(Complex src, Complex tgt, int shift, int internal_offset) {
    if (finalized_) throw InternalInconsistency("system already finalized");
    Var v;
    v.src = std::move(src);
    v.tgt = std::move(tgt);
    v.shift = shift;
    v.internal_offset = internal_offset;
    vars_.push_back(std::move(v));
    return static_cast<int>(vars_.size()) - 1;
}

int LinearMapSystem::add_equation(Complex eq_src, Complex eq_tgt, int shift) {
    if (finalized_) throw InternalInconsistency("system already finalized");
    Eq e;
    e.src = std::move(eq_src);
    e.tgt = std::move(eq_tgt);
    e.shift = shift;
    eqs_.push_back(std::move(e));
    return static_cast<int>(eqs_.size()) - 1;
}

void LinearMapSystem::add_term(int eq, int var, int r_shift,
                               std::function<MatrixOverA(int)> left,
                               std::function<MatrixOverA(int)> right, RingElem coeff) {
    eqs_.at(eq).terms.push_back(Term{var, r_shift, std::move(left), std::move(right),
                                     std::move(coeff)});
}

void LinearMapSystem::add_identity_term(int eq, int var, RingElem coeff) {
    const Eq& e = eqs_.at(eq);
    Complex es = e.src, et = e.tgt;
    int eshift = e.shift;
    add_term(eq, var, 0,
             [et, eshift](int i) {
                 return MatrixOverA::identity(et.algebra(), et.rank(i + eshift));
             },
             [es](int i) { return MatrixOverA::identity(es.algebra(), es.rank(i)); },
             std::move(coeff));
}

void LinearMapSystem::add_rhs(int eq, int degree, const MatrixOverA& m) {
    auto& rhs = eqs_.at(eq).rhs;
    auto it = rhs.find(degree);
    if (it == rhs.end())
        rhs.emplace(degree, m);
    else
        it->second = it->second.add(m);
}

void LinearMapSystem::add_rhs_chain_map(int eq, const ChainMap& f) {
    for (auto& [i, c] : f.components()) add_rhs(eq, i, c);
}

const std::vector<Monomial>& LinearMapSystem::slot_monomials(const Complex& src,
                                                             const Complex& tgt, int i,
                                                             int shift, int row, int col,
                                                             int internal_offset) {
    auto key = std::make_tuple(i, shift + 1000 * internal_offset, row, col);
    // cache key must also distinguish src/tgt, but slots are resolved per call
    // inside finalize() for a single (src, tgt) pair at a time; clear between.
    auto it = mono_cache_.find(key);
    if (it != mono_cache_.end()) return it->second;
    std::vector<Monomial> monos;
    if (alg_->backend() == Backend::artinian) {
        monos = alg_->basis();
    } else {
        int d = tgt.degrees(i + shift).at(row) - src.degrees(i).at(col) + internal_offset;
        monos = alg_->basis_of_degree(d);
    }
    return mono_cache_.emplace(key, std::move(monos)).first->second;
}

void LinearMapSystem::finalize() {
    if (finalized_) return;
    finalized_ = true;
    int off = 0;
    for (auto& v : vars_) {
        v.offset = off;
        mono_cache_.clear();
        auto s = v.src.support();
        if (s) {
            for (int i = s->first; i <= s->second; ++i) {
                int rs = v.src.rank(i), rt = v.tgt.rank(i + v.shift);
                if (rs == 0 || rt == 0) continue;
                for (int c = 0; c < rs; ++c)
                    for (int r = 0; r < rt; ++r) {
                        VarSlot slot;
                        slot.degree = i;
                        slot.row = r;
                        slot.col = c;
                        slot.monomials =
                            slot_monomials(v.src, v.tgt, i, v.shift, r, c, v.internal_offset);
                        if (slot.monomials.empty()) continue;
                        slot.offset = off;
                        off += static_cast<int>(slot.monomials.size());
                        v.slots.push_back(std::move(slot));
                    }
            }
        }
        v.width = off - v.offset;
    }
    total_cols_ = off;

    // assemble rows
    for (std::size_t e = 0; e < eqs_.size(); ++e) {
        Eq& E = eqs_[e];
        auto s = E.src.support();
        if (s) {
            for (int i = s->first; i <= s->second; ++i) {
                if (E.src.rank(i) == 0 || E.tgt.rank(i + E.shift) == 0) continue;
                for (const Term& t : E.terms) {
                    const Var& v = vars_.at(t.var);
                    int vi = i + t.r_shift;
                    if (v.src.rank(vi) == 0 || v.tgt.rank(vi + v.shift) == 0) continue;
                    MatrixOverA L = t.left(i);
                    MatrixOverA R = t.right(i);
                    if (L.cols() != v.tgt.rank(vi + v.shift) ||
                        L.rows() != E.tgt.rank(i + E.shift) ||
                        R.rows() != v.src.rank(vi) || R.cols() != E.src.rank(i))
                        throw InternalInconsistency("solver term shape mismatch");
                    // contribution of unknown entry (a, b, monomial m):
                    //   coeff * L[r][a] * m * R[b][c] at equation entry (r, c)
                    for (const VarSlot& slot : v.slots) {
                        if (slot.degree != vi) continue;
                        int a = slot.row, b = slot.col;
                        for (int r = 0; r < L.rows(); ++r) {
                            if (L.at(r, a).is_zero()) continue;
                            for (int c = 0; c < R.cols(); ++c) {
                                if (R.at(b, c).is_zero()) continue;
                                RingElem base = L.at(r, a) * R.at(b, c) * t.coeff;
                                if (base.is_zero()) continue;
                                for (std::size_t mi = 0; mi < slot.monomials.size(); ++mi) {
                                    RingElem prod =
                                        base * alg_->monomial_elem(slot.monomials[mi],
                                                                   alg_->field().one());
                                    for (auto& [mono, sc] : prod.terms()) {
                                        int row = row_index(static_cast<int>(e), i, r, c, mono);
                                        int col = slot.offset + static_cast<int>(mi);
                                        auto it = rows_[row].find(col);
                                        if (it == rows_[row].end())
                                            rows_[row].emplace(col, sc);
                                        else
                                            it->second = alg_->field().add(it->second, sc);
                                    }
                                }
                            }
                        }
                    }
                }
                auto rit = E.rhs.find(i);
                if (rit != E.rhs.end()) {
                    const MatrixOverA& m = rit->second;
                    for (int r = 0; r < m.rows(); ++r)
                        for (int c = 0; c < m.cols(); ++c)
                            for (auto& [mono, sc] : m.at(r, c).terms()) {
                                int row = row_index(static_cast<int>(e), i, r, c, mono);
                                rhs_[row] = alg_->field().add(rhs_[row], sc);
                            }
                }
            }
        }
    }
}

int LinearMapSystem::row_index(int eq, int degree, int r, int c, const Monomial& m) {
    auto key = std::make_tuple(eq, degree, r, c, m.e);
    auto it = row_ids_.find(key);
    if (it != row_ids_.end()) return it->second;
    int id = static_cast<int>(rows_.size());
    row_ids_.emplace(std::move(key), id);
    rows_.emplace_back();
    rhs_.push_back(alg_->field().zero());
    return id;
}

namespace {

KMat to_kmat(const Field& F, const std::vector<std::map<int, Scalar>>& rows, int cols) {
    KMat m(F, static_cast<int>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (auto& [c, v] : rows[r]) m.at(static_cast<int>(r), c) = v;
    return m;
}

}  // namespace

std::optional<LinearMapSystem::Assignment> LinearMapSystem::solve_particular() {
    finalize();
    KMat M = to_kmat(alg_->field(), rows_, total_cols_);
    auto sol = solve(M, rhs_);
    if (!sol) return std::nullopt;
    Assignment a;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
        std::vector<Scalar> sub(sol->begin() + vars_[v].offset,
                                sol->begin() + vars_[v].offset + vars_[v].width);
        a.vars.push_back(kvec_to_var(static_cast<int>(v), sub));
    }
    return a;
}

std::vector<LinearMapSystem::Assignment> LinearMapSystem::solve_homogeneous_basis() {
    finalize();
    KMat M = to_kmat(alg_->field(), rows_, total_cols_);
    KMat K = kernel_basis(M);
    std::vector<Assignment> out;
    for (int r = 0; r < K.rows(); ++r) {
        Assignment a;
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            std::vector<Scalar> sub(vars_[v].width, alg_->field().zero());
            for (int c = 0; c < vars_[v].width; ++c) sub[c] = K.at(r, vars_[v].offset + c);
            a.vars.push_back(kvec_to_var(static_cast<int>(v), sub));
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<LinearMapSystem::Assignment> LinearMapSystem::unit_assignments(int var) {
    finalize();
    std::vector<Assignment> out;
    const Var& v = vars_.at(var);
    for (int c = 0; c < v.width; ++c) {
        std::vector<Scalar> sub(v.width, alg_->field().zero());
        sub[c] = alg_->field().one();
        Assignment a;
        for (std::size_t w = 0; w < vars_.size(); ++w)
            a.vars.push_back(w == static_cast<std::size_t>(var)
                                 ? kvec_to_var(var, sub)
                                 : std::map<int, MatrixOverA>{});
        out.push_back(std::move(a));
    }
    return out;
}

int LinearMapSystem::var_dim(int var) const {
    if (!finalized_) throw InternalInconsistency("var_dim before finalize");
    return vars_.at(var).width;
}

std::vector<Scalar> LinearMapSystem::var_to_kvec(int var,
                                                 const std::map<int, MatrixOverA>& value) const {
    const Var& v = vars_.at(var);
    const Field& F = alg_->field();
    std::vector<Scalar> out(v.width, F.zero());
    for (const VarSlot& s : v.slots) {
        auto it = value.find(s.degree);
        if (it == value.end()) continue;
        const RingElem& e = it->second.at(s.row, s.col);
        for (auto& [mono, sc] : e.terms()) {
            auto mit = std::find_if(s.monomials.begin(), s.monomials.end(),
                                    [&](const Monomial& m) { return m == mono; });
            if (mit == s.monomials.end())
                throw InternalInconsistency("value outside the unknown's coordinate space");
            out[s.offset - v.offset + (mit - s.monomials.begin())] = sc;
        }
    }
    return out;
}

std::map<int, MatrixOverA> LinearMapSystem::kvec_to_var(int var,
                                                        const std::vector<Scalar>& vec) const {
    const Var& v = vars_.at(var);
    const Field& F = alg_->field();
    std::map<int, MatrixOverA> out;
    for (const VarSlot& s : v.slots) {
        auto it = out.find(s.degree);
        if (it == out.end())
            it = out.emplace(s.degree, MatrixOverA(alg_, v.tgt.rank(s.degree + v.shift),
                                                   v.src.rank(s.degree)))
                     .first;
        RingElem acc = alg_->zero();
        for (std::size_t mi = 0; mi < s.monomials.size(); ++mi) {
            const Scalar& c = vec.at(s.offset - v.offset + mi);
            if (!F.is_zero(c)) acc = acc + alg_->monomial_elem(s.monomials[mi], c);
        }
        it->second.at(s.row, s.col) = acc;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace homforge
