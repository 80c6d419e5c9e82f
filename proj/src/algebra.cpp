#include "homforge/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace homforge {

int Monomial::degree() const {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool Monomial::divisible_by(const Monomial& d) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < d.e[i]) return false;
    return true;
}

Monomial Monomial::times(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
}

bool DegLexLess::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.e < b.e;
}

RingElem::RingElem(AlgebraPtr alg, std::map<Monomial, Scalar, DegLexLess> terms)
    : alg_(std::move(alg)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (alg_->kills(it->first) || alg_->field().is_zero(it->second))
            it = terms_.erase(it);
        else
            ++it;
    }
}

Scalar RingElem::constant_term() const {
    if (!alg_) return Field::rationals().zero();
    Monomial one{std::vector<int>(alg_->vars().size(), 0)};
    auto it = terms_.find(one);
    return it == terms_.end() ? alg_->field().zero() : it->second;
}

bool RingElem::is_unit() const { return alg_ && !alg_->field().is_zero(constant_term()); }

RingElem RingElem::inverse() const {
    if (!is_unit()) throw UserError("ring element is not a unit: " + str());
    const Field& F = alg_->field();
    Scalar c = constant_term();
    Scalar cinv = F.inv(c);
    // a = c(1 - n) with n in m; 1/a = c^{-1} (1 + n + n^2 + ...)
    RingElem n = alg_->one() - scaled(cinv);
    RingElem acc = alg_->one();
    RingElem p = alg_->one();
    int limit = alg_->backend() == Backend::artinian
                    ? alg_->max_total_degree() + 1
                    : alg_->graded_window() + 1;
    for (int k = 0; k < limit && !p.is_zero(); ++k) {
        p = p * n;
        if (alg_->backend() == Backend::graded) {
            // drop terms past the window; exact inside it
            std::map<Monomial, Scalar, DegLexLess> kept;
            for (auto& [m, s] : p.terms())
                if (m.degree() <= alg_->graded_window()) kept.emplace(m, s);
            p = RingElem(alg_, std::move(kept));
        }
        acc = acc + p;
    }
    return acc.scaled(cinv);
}

std::optional<int> RingElem::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.begin()->first.degree();
    for (auto& [m, s] : terms_)
        if (m.degree() != d) return std::nullopt;
    return d;
}

RingElem RingElem::operator+(const RingElem& o) const {
    const Field& F = alg_->field();
    auto t = terms_;
    for (auto& [m, s] : o.terms_) {
        auto it = t.find(m);
        if (it == t.end())
            t.emplace(m, s);
        else
            it->second = F.add(it->second, s);
    }
    return RingElem(alg_, std::move(t));
}

RingElem RingElem::operator-(const RingElem& o) const { return *this + (-o); }

RingElem RingElem::operator*(const RingElem& o) const {
    const Field& F = alg_->field();
    std::map<Monomial, Scalar, DegLexLess> t;
    for (auto& [ma, sa] : terms_) {
        for (auto& [mb, sb] : o.terms_) {
            Monomial m = ma.times(mb);
            if (alg_->kills(m)) continue;
            Scalar prod = F.mul(sa, sb);
            auto it = t.find(m);
            if (it == t.end())
                t.emplace(std::move(m), prod);
            else
                it->second = F.add(it->second, prod);
        }
    }
    return RingElem(alg_, std::move(t));
}

RingElem RingElem::operator-() const {
    const Field& F = alg_->field();
    auto t = terms_;
    for (auto& [m, s] : t) s = F.neg(s);
    return RingElem(alg_, std::move(t));
}

RingElem RingElem::scaled(const Scalar& c) const {
    const Field& F = alg_->field();
    auto t = terms_;
    for (auto& [m, s] : t) s = F.mul(s, c);
    return RingElem(alg_, std::move(t));
}

bool RingElem::operator==(const RingElem& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    const Field& F = alg_->field();
    auto it = o.terms_.begin();
    for (auto& [m, s] : terms_) {
        if (!(m == it->first) || !F.eq(s, it->second)) return false;
        ++it;
    }
    return true;
}

std::string RingElem::str() const {
    if (terms_.empty()) return "0";
    const Field& F = alg_->field();
    std::ostringstream out;
    bool first = true;
    // descending deg-lex
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& m = it->first;
        std::string c = F.str(it->second);
        bool neg = !c.empty() && c[0] == '-';
        if (neg) c = c.substr(1);
        if (first)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        first = false;
        bool coeff_is_one = (c == "1");
        if (m.is_one()) {
            out << c;
            continue;
        }
        if (!coeff_is_one) out << c << "*";
        bool firstv = true;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (!firstv) out << "*";
            firstv = false;
            out << alg_->vars()[i];
            if (m.e[i] > 1) out << "^" << m.e[i];
        }
    }
    return out.str();
}

AlgebraPtr LocalAlgebra::make(Field field, std::vector<std::string> vars,
                              std::vector<Monomial> relations, Backend backend,
                              int graded_window) {
    auto A = std::shared_ptr<LocalAlgebra>(new LocalAlgebra());
    A->field_ = field;
    A->vars_ = std::move(vars);
    A->relations_ = std::move(relations);
    A->backend_ = backend;
    A->window_ = graded_window;
    for (const auto& r : A->relations_) {
        if (r.e.size() != A->vars_.size())
            throw UserError("relation exponent vector length mismatch");
        if (r.is_one()) throw UserError("relation 1 would make the zero ring");
    }
    if (backend == Backend::graded && graded_window < 0)
        throw UserError("graded window must be non-negative");
    if (backend == Backend::artinian) A->build_artinian_basis();
    return A;
}

void LocalAlgebra::build_artinian_basis() {
    std::size_t n = vars_.size();
    // pure power of every variable must appear among the relations
    std::vector<int> bound(n, -1);
    for (const auto& r : relations_) {
        int nz = -1;
        bool pure = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (r.e[i] > 0) {
                if (nz >= 0) { pure = false; break; }
                nz = static_cast<int>(i);
            }
        }
        if (pure && nz >= 0 && (bound[nz] < 0 || r.e[nz] < bound[nz])) bound[nz] = r.e[nz];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (bound[i] < 0)
            throw UserError("artinian backend needs a pure power of " + vars_[i] +
                            " among the relations");
    std::vector<int> cur(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            Monomial m{cur};
            if (!kills(m)) basis_.push_back(m);
            return;
        }
        for (cur[i] = 0; cur[i] < bound[i]; ++cur[i]) rec(i + 1);
        cur[i] = 0;
    };
    if (n == 0)
        basis_.push_back(Monomial{{}});
    else
        rec(0);
    std::sort(basis_.begin(), basis_.end(),
              [](const Monomial& a, const Monomial& b) { return DegLexLess{}(a, b); });
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
        basis_index_.emplace(basis_[i], i);
        max_deg_ = std::max(max_deg_, basis_[i].degree());
    }
}

int LocalAlgebra::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    throw UserError("unknown variable name: " + name);
}

bool LocalAlgebra::kills(const Monomial& m) const {
    for (const auto& r : relations_)
        if (m.divisible_by(r)) return true;
    return false;
}

int LocalAlgebra::dim() const {
    if (backend_ != Backend::artinian)
        throw UnsupportedBackend("k-dimension is defined on the artinian backend only");
    return static_cast<int>(basis_.size());
}

const std::vector<Monomial>& LocalAlgebra::basis() const {
    if (backend_ != Backend::artinian)
        throw UnsupportedBackend("monomial basis is defined on the artinian backend only");
    return basis_;
}

int LocalAlgebra::basis_index(const Monomial& m) const {
    auto it = basis_index_.find(m);
    if (it == basis_index_.end()) throw InternalInconsistency("monomial outside basis");
    return it->second;
}

int LocalAlgebra::max_total_degree() const { return max_deg_; }

const std::vector<Monomial>& LocalAlgebra::basis_of_degree(int d) const {
    if (backend_ != Backend::graded)
        throw UnsupportedBackend("per-degree bases belong to the graded backend");
    auto it = graded_basis_cache_.find(d);
    if (it != graded_basis_cache_.end()) return it->second;
    std::vector<Monomial> out;
    if (d >= 0) {
        std::size_t n = vars_.size();
        std::vector<int> cur(n, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
            if (i + 1 == n) {
                cur[i] = left;
                Monomial m{cur};
                if (!kills(m)) out.push_back(m);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                cur[i] = v;
                rec(i + 1, left - v);
            }
        };
        if (n == 0) {
            if (d == 0) out.push_back(Monomial{{}});
        } else {
            rec(0, d);
        }
        std::sort(out.begin(), out.end(),
                  [](const Monomial& a, const Monomial& b) { return DegLexLess{}(a, b); });
    }
    return graded_basis_cache_.emplace(d, std::move(out)).first->second;
}

RingElem LocalAlgebra::zero() const { return RingElem(shared_from_this(), {}); }

RingElem LocalAlgebra::one() const { return from_scalar(field_.one()); }

RingElem LocalAlgebra::from_scalar(const Scalar& c) const {
    std::map<Monomial, Scalar, DegLexLess> t;
    t.emplace(Monomial{std::vector<int>(vars_.size(), 0)}, c);
    return RingElem(shared_from_this(), std::move(t));
}

RingElem LocalAlgebra::monomial_elem(const Monomial& m, const Scalar& c) const {
    std::map<Monomial, Scalar, DegLexLess> t;
    t.emplace(m, c);
    return RingElem(shared_from_this(), std::move(t));
}

RingElem LocalAlgebra::variable(int i) const {
    Monomial m{std::vector<int>(vars_.size(), 0)};
    m.e.at(i) = 1;
    return monomial_elem(m, field_.one());
}

RingElem LocalAlgebra::parse(const std::string& poly) const {
    std::string err;
    auto r = parse_polynomial(shared_from_this(), poly, &err);
    if (!r) throw UserError("bad polynomial '" + poly + "': " + err);
    return *r;
}

std::vector<std::vector<Scalar>> LocalAlgebra::mult_matrix(const RingElem& a) const {
    int d = dim();
    std::vector<std::vector<Scalar>> M(d, std::vector<Scalar>(d, field_.zero()));
    for (int j = 0; j < d; ++j) {
        for (auto& [m, s] : a.terms()) {
            Monomial p = m.times(basis_[j]);
            if (kills(p)) continue;
            int i = basis_index(p);
            M[i][j] = field_.add(M[i][j], s);
        }
    }
    return M;
}

bool LocalAlgebra::operator==(const LocalAlgebra& o) const {
    if (!(field_ == o.field_) || vars_ != o.vars_ || backend_ != o.backend_ ||
        window_ != o.window_ || relations_.size() != o.relations_.size())
        return false;
    for (std::size_t i = 0; i < relations_.size(); ++i)
        if (!(relations_[i] == o.relations_[i])) return false;
    return true;
}

namespace {

// Minimal recursive-descent parser for sums of scalar-times-monomial terms,
// e.g. "3*x^2*y - 1/2". Whitespace is insignificant.
struct PolyParser {
    const AlgebraPtr& A;
    const std::string& s;
    std::size_t i = 0;
    std::string err;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    bool integer(mpz_class* out) {
        skip();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) {
            err = "expected integer at position " + std::to_string(start);
            return false;
        }
        *out = mpz_class(s.substr(start, i - start));
        return true;
    }

    bool ident(std::string* out) {
        skip();
        std::size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
            if (start == i && std::isdigit(static_cast<unsigned char>(s[i]))) break;
            ++i;
        }
        if (i == start) return false;
        *out = s.substr(start, i - start);
        return true;
    }

    // term := factor ('*' factor)*
    bool term(RingElem* out) {
        RingElem acc = A->one();
        bool expect_factor = true;
        while (expect_factor) {
            skip();
            if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                mpz_class num, den(1);
                if (!integer(&num)) return false;
                skip();
                if (i < s.size() && s[i] == '/') {
                    ++i;
                    if (!integer(&den)) return false;
                    if (den == 0) {
                        err = "zero denominator";
                        return false;
                    }
                }
                const Field& F = A->field();
                Scalar c = F.div(F.from_mpz(num), F.from_mpz(den));
                acc = acc.scaled(c);
            } else {
                std::string name;
                if (!ident(&name)) {
                    err = "expected coefficient or variable at position " + std::to_string(i);
                    return false;
                }
                int v = -1;
                for (std::size_t k = 0; k < A->vars().size(); ++k)
                    if (A->vars()[k] == name) v = static_cast<int>(k);
                if (v < 0) {
                    err = "unknown variable name: " + name;
                    return false;
                }
                long exp = 1;
                skip();
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    mpz_class e;
                    if (!integer(&e)) return false;
                    if (e < 0 || e > 1000) {
                        err = "exponent out of range";
                        return false;
                    }
                    exp = e.get_si();
                }
                Monomial m{std::vector<int>(A->vars().size(), 0)};
                m.e[v] = static_cast<int>(exp);
                acc = acc * A->monomial_elem(m, A->field().one());
            }
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        *out = acc;
        return true;
    }

    bool expr(RingElem* out) {
        RingElem acc = A->zero();
        skip();
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = s[i] == '-';
            ++i;
        }
        while (true) {
            RingElem t;
            if (!term(&t)) return false;
            acc = neg ? acc - t : acc + t;
            skip();
            if (i >= s.size()) break;
            if (s[i] == '+' || s[i] == '-') {
                neg = s[i] == '-';
                ++i;
            } else {
                err = "unexpected character '" + std::string(1, s[i]) + "' at position " +
                      std::to_string(i);
                return false;
            }
        }
        *out = acc;
        return true;
    }
};

}  // namespace

std::optional<RingElem> parse_polynomial(const AlgebraPtr& A, const std::string& s,
                                         std::string* error) {
    std::string trimmed = s;
    PolyParser p{A, trimmed, 0, {}};
    p.skip();
    if (p.i >= trimmed.size()) {
        if (error) *error = "empty polynomial";
        return std::nullopt;
    }
    RingElem out;
    if (!p.expr(&out)) {
        if (error) *error = p.err;
        return std::nullopt;
    }
    return out;
}

std::vector<RingElem> socle(const AlgebraPtr& A) {
    if (A->backend() != Backend::artinian)
        throw UnsupportedBackend("socle requires the artinian backend");
    const Field& F = A->field();
    int d = A->dim();
    int nv = static_cast<int>(A->vars().size());
    // stack the multiplication maps by every variable; kernel = (0 : m)
    std::vector<std::vector<Scalar>> M(static_cast<std::size_t>(nv) * d,
                                       std::vector<Scalar>(d, F.zero()));
    for (int v = 0; v < nv; ++v) {
        auto mv = A->mult_matrix(A->variable(v));
        for (int r = 0; r < d; ++r) M[static_cast<std::size_t>(v) * d + r] = mv[r];
    }
    // plain Gaussian elimination (small systems; the heavy path lives in linalg)
    int rows = nv * d, cols = d;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pr = -1;
        for (int r = rank; r < rows; ++r)
            if (!F.is_zero(M[r][c])) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(M[rank], M[pr]);
        Scalar inv = F.inv(M[rank][c]);
        for (int cc = 0; cc < cols; ++cc) M[rank][cc] = F.mul(M[rank][cc], inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || F.is_zero(M[r][c])) continue;
            Scalar f = M[r][c];
            for (int cc = 0; cc < cols; ++cc)
                M[r][cc] = F.sub(M[r][cc], F.mul(f, M[rank][cc]));
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<RingElem> out;
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::map<Monomial, Scalar, DegLexLess> t;
        t.emplace(A->basis()[c], F.one());
        for (int r = 0; r < rank; ++r)
            if (!F.is_zero(M[r][c]))
                t.emplace(A->basis()[pivot_col[r]], F.neg(M[r][c]));
        out.emplace_back(A, std::move(t));
    }
    return out;
}

bool is_gorenstein_artinian(const AlgebraPtr& A) { return socle(A).size() == 1; }

MatlisModule matlis_module(const AlgebraPtr& A) {
    if (A->backend() != Backend::artinian)
        throw UnsupportedBackend("matlis module requires the artinian backend");
    const Field& F = A->field();
    int d = A->dim();
    MatlisModule E;
    E.algebra = A;
    for (std::size_t v = 0; v < A->vars().size(); ++v) {
        auto M = A->mult_matrix(A->variable(static_cast<int>(v)));
        std::vector<std::vector<Scalar>> T(d, std::vector<Scalar>(d, F.zero()));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) T[i][j] = M[j][i];
        E.action.push_back(std::move(T));
    }
    // Hom_A(E, E) = A sanity: the contragredient of the contragredient is the
    // original action table.
    for (std::size_t v = 0; v < A->vars().size(); ++v) {
        auto M = A->mult_matrix(A->variable(static_cast<int>(v)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (!F.eq(E.action[v][j][i], M[i][j]))
                    throw InternalInconsistency("matlis double-dual mismatch");
    }
    auto soc = socle(A);
    if (soc.size() == 1) {
        // socle generator is a single basis monomial for monomial quotients
        const auto& t = soc[0].terms();
        if (t.size() == 1) E.gorenstein_socle_index = A->basis_index(t.begin()->first);
    }
    return E;
}

}  // namespace homforge
