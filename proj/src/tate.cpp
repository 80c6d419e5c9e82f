#include "homforge/tate.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace homforge {

namespace {

Scalar binomial(const Field& F, int n, int k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return F.from_mpz(b);
}

void insert_term(DGElement& e, const Word& w, const RingElem& c) {
    if (c.is_zero()) return;
    auto it = e.find(w);
    if (it == e.end()) {
        e.emplace(w, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) e.erase(it);
    }
}

}  // namespace

DGAlgebra DGAlgebra::koszul_base(AlgebraPtr alg, std::vector<RingElem> elems, int window) {
    if (elems.size() > 31) throw UserError("too many koszul generators");
    DGAlgebra X;
    X.alg_ = std::move(alg);
    X.base_ = std::move(elems);
    X.window_ = window;
    return X;
}

int DGAlgebra::word_degree(const Word& w) const {
    int d = -static_cast<int>(__builtin_popcount(w.base_mask));
    for (std::size_t v = 0; v < w.exps.size(); ++v) d += w.exps[v] * vars_[v].rho;
    return d;
}

const std::vector<Word>& DGAlgebra::words_of_degree(int n) const {
    auto it = words_cache_.find(n);
    if (it != words_cache_.end()) return it->second;
    std::vector<Word> out;
    if (n <= 0 && n >= -window_) {
        int B = static_cast<int>(base_.size());
        std::vector<int> exps(vars_.size(), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
            // left = remaining degree to absorb, non-negative
            if (v == vars_.size()) {
                for (std::uint32_t mask = 0; mask < (1u << B); ++mask) {
                    if (static_cast<int>(__builtin_popcount(mask)) == left)
                        out.push_back(Word{mask, exps});
                }
                return;
            }
            int step = -vars_[v].rho;
            int maxe = vars_[v].divided ? left / step : std::min(1, left / step);
            for (int e = 0; e <= maxe; ++e) {
                exps[v] = e;
                rec(v + 1, left - e * step);
            }
            exps[v] = 0;
        };
        rec(0, -n);
        std::sort(out.begin(), out.end());
    }
    auto& slot = words_cache_.emplace(n, std::move(out)).first->second;
    std::map<Word, int> idx;
    for (std::size_t i = 0; i < slot.size(); ++i) idx.emplace(slot[i], static_cast<int>(i));
    index_cache_[n] = std::move(idx);
    return slot;
}

int DGAlgebra::word_index(int n, const Word& w) const {
    words_of_degree(n);
    auto& idx = index_cache_.at(n);
    auto it = idx.find(w);
    if (it == idx.end()) throw InternalInconsistency("word outside the materialized window");
    return it->second;
}

std::optional<std::pair<Scalar, Word>> DGAlgebra::mul_words(const Word& a, const Word& b) const {
    const Field& F = alg_->field();
    if (a.base_mask & b.base_mask) return std::nullopt;
    Word out;
    out.base_mask = a.base_mask | b.base_mask;
    out.exps.resize(vars_.size(), 0);
    Scalar coeff = F.one();
    for (std::size_t v = 0; v < vars_.size(); ++v) {
        int ea = v < a.exps.size() ? a.exps[v] : 0;
        int eb = v < b.exps.size() ? b.exps[v] : 0;
        if (vars_[v].divided) {
            out.exps[v] = ea + eb;
            if (ea && eb) coeff = F.mul(coeff, binomial(F, ea + eb, ea));
        } else {
            if (ea + eb > 1) return std::nullopt;
            out.exps[v] = ea + eb;
        }
    }
    // sign: inversions among odd generators (koszul generators and exterior
    // variables of odd degree; divided powers are even)
    auto odd_list = [&](const Word& w) {
        std::vector<int> ids;
        for (int i = 0; i < static_cast<int>(base_.size()); ++i)
            if (w.base_mask & (1u << i)) ids.push_back(i);
        for (std::size_t v = 0; v < vars_.size(); ++v)
            if (!vars_[v].divided && v < w.exps.size() && w.exps[v] == 1 && (vars_[v].rho % 2))
                ids.push_back(static_cast<int>(base_.size() + v));
        return ids;
    };
    auto la = odd_list(a), lb = odd_list(b);
    long inversions = 0;
    for (int x : la)
        for (int y : lb)
            if (x > y) ++inversions;
    if (inversions % 2) coeff = F.neg(coeff);
    return std::make_pair(coeff, out);
}

DGElement DGAlgebra::mul(const DGElement& a, const DGElement& b) const {
    DGElement out;
    for (auto& [wa, ca] : a)
        for (auto& [wb, cb] : b) {
            auto p = mul_words(wa, wb);
            if (!p) continue;
            insert_term(out, p->second, (ca * cb).scaled(p->first));
        }
    return out;
}

DGElement DGAlgebra::scale(const DGElement& a, const RingElem& c) const {
    DGElement out;
    for (auto& [w, x] : a) insert_term(out, w, x * c);
    return out;
}

DGElement DGAlgebra::add(const DGElement& a, const DGElement& b) const {
    DGElement out = a;
    for (auto& [w, x] : b) insert_term(out, w, x);
    return out;
}

DGElement DGAlgebra::normalize(const DGElement& e) const {
    DGElement out;
    for (auto& [w, c] : e) {
        Word nw = w;
        nw.exps.resize(vars_.size(), 0);
        insert_term(out, nw, c);
    }
    return out;
}

DGElement DGAlgebra::constant(const RingElem& a) const {
    DGElement out;
    Word one;
    one.exps.resize(vars_.size(), 0);
    insert_term(out, one, a);
    return out;
}

DGElement DGAlgebra::differential(const Word& w) const {
    // factors in canonical order: koszul generators, then adjoined variables
    struct Factor {
        int kind;  // 0 = koszul gen, 1 = adjoined
        int index;
        int exp;
        int degree;
    };
    std::vector<Factor> factors;
    for (int i = 0; i < static_cast<int>(base_.size()); ++i)
        if (w.base_mask & (1u << i)) factors.push_back({0, i, 1, -1});
    for (std::size_t v = 0; v < vars_.size(); ++v)
        if (v < w.exps.size() && w.exps[v] > 0)
            factors.push_back({1, static_cast<int>(v), w.exps[v], w.exps[v] * vars_[v].rho});

    DGElement out;
    int prefix_deg = 0;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        // word with the f-th factor removed, split into prefix and suffix
        Word prefix, suffix;
        prefix.exps.assign(vars_.size(), 0);
        suffix.exps.assign(vars_.size(), 0);
        for (std::size_t g = 0; g < factors.size(); ++g) {
            if (g == f) continue;
            Word& tgt = g < f ? prefix : suffix;
            if (factors[g].kind == 0)
                tgt.base_mask |= (1u << factors[g].index);
            else
                tgt.exps[factors[g].index] = factors[g].exp;
        }
        DGElement dfac;
        if (factors[f].kind == 0) {
            dfac = constant(base_[factors[f].index]);
        } else {
            const DGVariable& var = vars_[factors[f].index];
            if (!var.divided) {
                dfac = var.cycle;
            } else {
                // d(T_j) = t T_{j+1}
                Word lower;
                lower.exps.assign(vars_.size(), 0);
                lower.exps[factors[f].index] = factors[f].exp - 1;
                DGElement lw;
                insert_term(lw, lower, alg_->one());
                dfac = mul(var.cycle, lw);
            }
        }
        DGElement pk;
        insert_term(pk, prefix, alg_->one());
        DGElement sk;
        insert_term(sk, suffix, alg_->one());
        DGElement term = mul(mul(pk, dfac), sk);
        if (prefix_deg % 2)
            for (auto& [tw, tc] : term) tc = -tc;
        out = add(out, term);
        prefix_deg += factors[f].degree;
    }
    return out;
}

DGElement DGAlgebra::differential(const DGElement& e) const {
    DGElement out;
    for (auto& [w, c] : e) out = add(out, scale(differential(w), c));
    return out;
}

std::string DGAlgebra::word_name(const Word& w) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < static_cast<int>(base_.size()); ++i)
        if (w.base_mask & (1u << i)) {
            if (!first) os << "*";
            os << "T" << (i + 1);
            first = false;
        }
    for (std::size_t v = 0; v < vars_.size(); ++v) {
        if (v >= w.exps.size() || w.exps[v] == 0) continue;
        if (!first) os << "*";
        os << vars_[v].name;
        if (vars_[v].divided)
            os << "_" << w.exps[v];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::optional<Word> DGAlgebra::parse_word(const std::string& s) const {
    Word w;
    w.exps.assign(vars_.size(), 0);
    if (s == "1") return w;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '*')) {
        bool matched = false;
        for (int i = 0; i < static_cast<int>(base_.size()); ++i)
            if (part == "T" + std::to_string(i + 1)) {
                if (w.base_mask & (1u << i)) return std::nullopt;
                w.base_mask |= (1u << i);
                matched = true;
            }
        if (matched) continue;
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            const std::string& nm = vars_[v].name;
            if (!vars_[v].divided && part == nm) {
                if (w.exps[v]) return std::nullopt;
                w.exps[v] = 1;
                matched = true;
            } else if (vars_[v].divided && part.rfind(nm + "_", 0) == 0) {
                w.exps[v] = std::stoi(part.substr(nm.size() + 1));
                matched = true;
            }
        }
        if (!matched) return std::nullopt;
    }
    return w;
}

Complex DGAlgebra::to_complex() const {
    std::map<int, FreeModule> terms;
    std::map<int, MatrixOverA> diffs;
    for (int n = -window_; n <= 0; ++n) {
        int r = static_cast<int>(words_of_degree(n).size());
        if (r > 0) terms[n] = FreeModule{r, std::nullopt};
    }
    for (int n = -window_; n < 0; ++n) {
        const auto& src = words_of_degree(n);
        const auto& tgt = words_of_degree(n + 1);
        if (src.empty() || tgt.empty()) continue;
        MatrixOverA d(alg_, static_cast<int>(tgt.size()), static_cast<int>(src.size()));
        for (std::size_t c = 0; c < src.size(); ++c) {
            DGElement dw = differential(src[c]);
            for (auto& [u, coeff] : dw)
                d.at(word_index(n + 1, u), static_cast<int>(c)) = coeff;
        }
        if (!d.is_zero()) diffs.emplace(n, std::move(d));
    }
    return Complex::make(alg_, std::move(terms), std::move(diffs));
}

DGAlgebra DGAlgebra::adjoin_variable(const DGElement& raw, int rho, const std::string& name) const {
    if (rho >= 0) throw UserError("adjoined variables live in negative degrees");
    DGElement t = normalize(raw);
    for (auto& [w, c] : t)
        if (word_degree(w) != rho + 1)
            throw UserError("killed cycle is not homogeneous of degree rho + 1");
    DGElement dt = differential(t);
    if (!dt.empty()) throw UserError("killed element is not a cycle");
    DGAlgebra Z = *this;
    DGVariable var;
    var.name = name;
    var.divided = (rho % 2 == 0);
    var.rho = rho;
    // every word in the extended algebra carries one more exponent slot
    auto embed = [&](const DGElement& e) {
        DGElement out;
        for (auto& [w, c] : e) {
            Word nw = w;
            nw.exps.resize(vars_.size() + 1, 0);
            out.emplace(nw, c);
        }
        return out;
    };
    var.cycle = embed(t);
    for (auto& v : Z.vars_) v.cycle = embed(v.cycle);
    Z.vars_.push_back(std::move(var));
    Z.words_cache_.clear();
    Z.index_cache_.clear();
    return Z;
}

void DGAlgebra::verify_axioms() const {
    const Field& F = alg_->field();
    for (int n = -window_; n <= 0; ++n) {
        for (const Word& a : words_of_degree(n)) {
            // d^2 = 0
            DGElement dda = differential(differential(a));
            if (!dda.empty())
                throw InternalInconsistency("d^2 != 0 on word " + word_name(a));
            for (int m = -window_ - n; m <= 0; ++m) {
                for (const Word& b : words_of_degree(m)) {
                    if (word_degree(a) + word_degree(b) < -window_) continue;
                    // skew-commutativity with the sign (-1)^{|a||b|}
                    auto ab = mul_words(a, b);
                    auto ba = mul_words(b, a);
                    if (ab.has_value() != ba.has_value())
                        throw InternalInconsistency("asymmetric product");
                    if (ab) {
                        Scalar expect = (word_degree(a) * word_degree(b)) % 2
                                            ? F.neg(ba->first)
                                            : ba->first;
                        if (!(ab->second == ba->second) || !F.eq(ab->first, expect))
                            throw InternalInconsistency("skew-commutativity fails on " +
                                                        word_name(a) + ", " + word_name(b));
                    }
                    // Leibniz on the pair
                    DGElement ea, eb;
                    ea.emplace(a, alg_->one());
                    eb.emplace(b, alg_->one());
                    DGElement lhs = differential(mul(ea, eb));
                    DGElement rhs = add(mul(differential(ea), eb),
                                        word_degree(a) % 2
                                            ? scale(mul(ea, differential(eb)), -alg_->one())
                                            : mul(ea, differential(eb)));
                    DGElement diff = add(lhs, scale(rhs, -alg_->one()));
                    if (!diff.empty())
                        throw InternalInconsistency("Leibniz fails on " + word_name(a) + ", " +
                                                    word_name(b));
                }
            }
            // x^2 = 0 for odd words
            if (word_degree(a) % 2) {
                auto sq = mul_words(a, a);
                if (sq && !F.is_zero(sq->first))
                    throw InternalInconsistency("odd square is nonzero: " + word_name(a));
            }
        }
    }
}

// ---- homology bookkeeping -------------------------------------------------------

namespace {

std::vector<Scalar> element_to_kvec(const DGAlgebra& X, const DGElement& e, int degree) {
    const AlgebraPtr& A = X.algebra();
    const Field& F = A->field();
    int dA = A->dim();
    const auto& words = X.words_of_degree(degree);
    std::vector<Scalar> out(words.size() * dA, F.zero());
    for (auto& [w, c] : e) {
        int wi = X.word_index(degree, w);
        for (auto& [m, s] : c.terms()) out[wi * dA + A->basis_index(m)] = s;
    }
    return out;
}

DGElement kvec_to_element(const DGAlgebra& X, const std::vector<Scalar>& v, int degree) {
    const AlgebraPtr& A = X.algebra();
    const Field& F = A->field();
    int dA = A->dim();
    const auto& words = X.words_of_degree(degree);
    DGElement out;
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
        RingElem acc = A->zero();
        for (int b = 0; b < dA; ++b) {
            const Scalar& c = v[wi * dA + b];
            if (!F.is_zero(c)) acc = acc + A->monomial_elem(A->basis()[b], c);
        }
        if (!acc.is_zero()) out.emplace(words[wi], acc);
    }
    return out;
}

}  // namespace

AdjoinHomologyReport verify_adjoin_homology(const DGAlgebra& X, const DGAlgebra& Z, int rho,
                                            const DGElement& raw) {
    AdjoinHomologyReport rep;
    DGElement t = X.normalize(raw);
    rep.window = X.window();
    rep.cycle_ok = X.differential(t).empty();
    Complex CX = X.to_complex();
    Complex CZ = Z.to_complex();
    const AlgebraPtr& A = X.algebra();
    // classes of {a t : a in the monomial basis} inside H^{rho+1}(X)
    Cohomology H = cohomology(CX, rho + 1);
    std::vector<std::vector<Scalar>> tv;
    for (const auto& m : A->basis()) {
        DGElement at = X.scale(t, A->monomial_elem(m, A->field().one()));
        tv.push_back(H.coords(element_to_kvec(X, at, rho + 1)));
    }
    KMat tm(A->field(), static_cast<int>(tv.size()), H.kdim);
    for (std::size_t r = 0; r < tv.size(); ++r)
        for (int c = 0; c < H.kdim; ++c) tm.at(static_cast<int>(r), c) = tv[r][c];
    int killed = rank(tm);
    rep.class_nonzero = killed > 0;
    for (int q = rho + 2; q <= 0; ++q) {
        if (cohomology_dim(CX, q) != cohomology_dim(CZ, q)) {
            rep.unchanged_above = false;
            rep.notes.push_back("H^" + std::to_string(q) + " changed");
        }
    }
    int before = H.kdim, after = cohomology_dim(CZ, rho + 1);
    if (after != before - killed) {
        rep.reduced_at_target = false;
        rep.notes.push_back("H^" + std::to_string(rho + 1) + ": " + std::to_string(before) +
                            " -> " + std::to_string(after) + ", killed span " +
                            std::to_string(killed));
    }
    return rep;
}

TateResolution tate_resolve(const AlgebraPtr& A, int bound) {
    if (A->backend() != Backend::artinian)
        throw UnsupportedBackend("tate resolution requires the artinian backend");
    if (bound < 0) throw UserError("bound must be non-negative");
    std::vector<RingElem> gens;
    for (std::size_t v = 0; v < A->vars().size(); ++v) {
        RingElem x = A->variable(static_cast<int>(v));
        if (!x.is_zero()) gens.push_back(x);
    }
    TateResolution out;
    out.bound = bound;
    DGAlgebra Y = DGAlgebra::koszul_base(A, gens, bound);
    int counter = 0;
    for (int stage = 2; stage <= bound; ++stage) {
        int q = -stage + 1;
        Complex C = Y.to_complex();
        Cohomology H = cohomology(C, q);
        if (H.kdim == 0) continue;
        std::vector<DGElement> cycles;
        for (int r = 0; r < H.reps.rows(); ++r) {
            std::vector<Scalar> v(H.reps.cols(), A->field().zero());
            for (int c = 0; c < H.reps.cols(); ++c) v[c] = H.reps.at(r, c);
            cycles.push_back(kvec_to_element(Y, v, q));
        }
        for (auto& t : cycles) {
            ++counter;
            Y = Y.adjoin_variable(t, -stage, "S" + std::to_string(counter));
        }
        out.stages.emplace_back(-stage, static_cast<int>(cycles.size()));
    }
    Complex C = Y.to_complex();
    for (int n = 0; n >= -bound; --n) out.ranks.push_back(C.rank(n));
    out.dg = std::move(Y);
    return out;
}

// ---- filtrations ------------------------------------------------------------------

bool Filtration::contains(const DGAlgebra& dg, int piece, int degree, const Word& w) const {
    if (piece >= top) return true;
    if (piece < 0) return false;
    const auto& p = pieces.at(piece);
    auto it = p.find(degree);
    if (it == p.end()) return false;
    return it->second.count(dg.word_index(degree, w)) > 0;
}

Filtration trivial_filtration(const DGAlgebra& X) {
    Filtration F;
    F.parameter = 0;
    F.top = 1;
    std::map<int, std::set<int>> zero;
    zero[0] = {X.word_index(0, Word{0, std::vector<int>(X.variables().size(), 0)})};
    F.pieces.push_back(std::move(zero));
    return F;
}

FiltrationAxiomReport verify_good_filtration(const DGAlgebra& X, const Filtration& F) {
    FiltrationAxiomReport rep;
    rep.window = X.window();
    const Field& field = X.algebra()->field();
    (void)field;
    auto fail = [&](bool& flag, const std::string& w) {
        if (rep.witness.empty()) rep.witness = w;
        flag = false;
    };
    for (int i = 0; i < F.top; ++i) {
        for (int n = -X.window(); n <= 0; ++n) {
            const auto& words = X.words_of_degree(n);
            for (std::size_t wi = 0; wi < words.size(); ++wi) {
                bool in_i = F.contains(X, i, n, words[wi]);
                // nesting
                if (in_i && i + 1 < F.top && !F.contains(X, i + 1, n, words[wi]))
                    fail(rep.nested, "F(" + std::to_string(i) + ") not inside F(" +
                                         std::to_string(i + 1) + ") at " + X.word_name(words[wi]));
                // closure under the differential
                if (in_i && n < 0) {
                    DGElement dw = X.differential(words[wi]);
                    for (auto& [u, c] : dw) {
                        if (!F.contains(X, i, n + 1, u))
                            fail(rep.subcomplex,
                                 "d leaves F(" + std::to_string(i) + "): d(" +
                                     X.word_name(words[wi]) + ") has " + X.word_name(u));
                    }
                }
            }
        }
    }
    // exhaustion within the window: F(top) is everything by construction
    // multiplicativity with the declared parameter
    for (int i = 0; i <= F.top && rep.multiplicative; ++i) {
        for (int j = 0; j <= F.top && rep.multiplicative; ++j) {
            for (int n = -X.window(); n <= 0; ++n) {
                for (int m = -X.window() - n; m <= 0; ++m) {
                    for (const Word& a : X.words_of_degree(n)) {
                        if (!F.contains(X, i, n, a)) continue;
                        for (const Word& b : X.words_of_degree(m)) {
                            if (!F.contains(X, j, m, b)) continue;
                            auto p = X.mul_words(a, b);
                            if (!p || X.algebra()->field().is_zero(p->first)) continue;
                            if (!F.contains(X, i + j + F.parameter, n + m, p->second))
                                fail(rep.multiplicative,
                                     X.word_name(a) + " * " + X.word_name(b) +
                                         " escapes F(" + std::to_string(i + j + F.parameter) +
                                         ")");
                        }
                    }
                }
            }
        }
    }
    // finite length of H^*(F(i)): automatic over an artinian coefficient ring
    rep.finite_length = X.algebra()->backend() == Backend::artinian;
    if (!rep.finite_length) rep.witness = "finite length certified only within the window";
    return rep;
}

FiltrationExtension good_filtration_extend(const DGAlgebra& X, const Filtration& F,
                                           const DGElement& raw, int rho,
                                           const std::string& name) {
    DGElement t = X.normalize(raw);
    // locate the declared piece: the smallest F(r) containing t
    int r = -1;
    for (int cand = 0; cand <= F.top; ++cand) {
        bool inside = true;
        for (auto& [w, c] : t) inside = inside && F.contains(X, cand, rho + 1, w);
        if (inside) {
            r = cand;
            break;
        }
    }
    if (r < 0) throw UserError("killed cycle lies in no filtration piece");
    int c = F.parameter;
    DGAlgebra Z = X.adjoin_variable(t, rho, name);
    std::size_t newv = Z.variables().size() - 1;
    bool divided = Z.variables().back().divided;

    Filtration G;
    G.parameter = divided ? 1 : r + 2 * c;
    // a generous cap on where the pieces become full within the window
    int cap = F.top + X.window() + r + c + 2;
    auto x_piece_contains = [&](int piece, int degree, const Word& xw) {
        return F.contains(X, piece, degree, xw);
    };
    std::vector<std::map<int, std::set<int>>> pieces;
    int full_at = -1;
    for (int i = 0; i <= cap; ++i) {
        std::map<int, std::set<int>> piece;
        bool full = true;
        for (int n = -Z.window(); n <= 0; ++n) {
            const auto& words = Z.words_of_degree(n);
            std::set<int> in;
            for (std::size_t wi = 0; wi < words.size(); ++wi) {
                const Word& w = words[wi];
                int e = newv < w.exps.size() ? w.exps[newv] : 0;
                Word xw = w;
                xw.exps.resize(newv);  // back in the base algebra's word space
                int xdeg = n - e * rho;
                bool member;
                if (!divided) {
                    // G(i)^n = F(i+r+c)^n + F(i)^{n-rho} T
                    member = e == 0 ? x_piece_contains(i + r + c, xdeg, xw)
                                    : x_piece_contains(i, xdeg, xw);
                } else {
                    // G(i)^n = sum_{l=0}^{-i} F((i+l)(r+c))^{n+rho l} T_l
                    member = e <= i && x_piece_contains((i - e) * (r + c), xdeg, xw);
                }
                if (member)
                    in.insert(static_cast<int>(wi));
                else
                    full = false;
            }
            if (!in.empty()) piece[n] = std::move(in);
        }
        pieces.push_back(std::move(piece));
        if (full) {
            full_at = i;
            break;
        }
    }
    if (full_at < 0) full_at = cap;
    G.top = full_at;
    G.pieces = std::move(pieces);
    G.pieces.resize(G.top);  // F(top) and beyond are implicit
    FiltrationExtension out;
    out.extended = std::move(Z);
    out.filtration = std::move(G);
    out.declared_r = r;
    return out;
}

TateWithFiltration tate_resolve_with_filtration(const AlgebraPtr& A, int bound) {
    if (A->backend() != Backend::artinian)
        throw UnsupportedBackend("tate resolution requires the artinian backend");
    std::vector<RingElem> gens;
    for (std::size_t v = 0; v < A->vars().size(); ++v) {
        RingElem x = A->variable(static_cast<int>(v));
        if (!x.is_zero()) gens.push_back(x);
    }
    TateWithFiltration out;
    out.resolution.bound = bound;
    DGAlgebra Y = DGAlgebra::koszul_base(A, gens, bound);
    Filtration F = trivial_filtration(Y);
    int counter = 0;
    for (int stage = 2; stage <= bound; ++stage) {
        int q = -stage + 1;
        Complex C = Y.to_complex();
        Cohomology H = cohomology(C, q);
        if (H.kdim == 0) continue;
        std::vector<DGElement> cycles;
        for (int r = 0; r < H.reps.rows(); ++r) {
            std::vector<Scalar> v(H.reps.cols(), A->field().zero());
            for (int c = 0; c < H.reps.cols(); ++c) v[c] = H.reps.at(r, c);
            const auto& words = Y.words_of_degree(q);
            int dA = A->dim();
            DGElement t;
            for (std::size_t wi = 0; wi < words.size(); ++wi) {
                RingElem acc = A->zero();
                for (int b = 0; b < dA; ++b)
                    if (!A->field().is_zero(v[wi * dA + b]))
                        acc = acc + A->monomial_elem(A->basis()[b], v[wi * dA + b]);
                if (!acc.is_zero()) t.emplace(words[wi], acc);
            }
            cycles.push_back(std::move(t));
        }
        for (auto& t : cycles) {
            ++counter;
            auto ext = good_filtration_extend(Y, F, t, -stage, "S" + std::to_string(counter));
            Y = std::move(ext.extended);
            F = std::move(ext.filtration);
        }
        out.resolution.stages.emplace_back(-stage, static_cast<int>(cycles.size()));
    }
    Complex C = Y.to_complex();
    for (int n = 0; n >= -bound; --n) out.resolution.ranks.push_back(C.rank(n));
    out.resolution.dg = std::move(Y);
    out.filtration = std::move(F);
    return out;
}

}  // namespace homforge
