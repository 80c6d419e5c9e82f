#pragma once

// Tate's construction: a Koszul base, adjunction of exterior or divided-power
// variables killing chosen cohomology classes, and good filtrations with
// their parameter calculus. Everything is materialized inside an explicit
// degree window; every verdict names its window.

#include <set>
#include <string>
#include <vector>

#include "homforge/complex.hpp"

namespace homforge {

/// Basis word: subset of the Koszul generators plus one exponent per
/// adjoined variable (exterior: 0/1; divided: m stands for the basis divided
/// power of index -m).
struct Word {
    std::uint32_t base_mask = 0;
    std::vector<int> exps;

    bool operator<(const Word& o) const {
        if (base_mask != o.base_mask) return base_mask < o.base_mask;
        return exps < o.exps;
    }
    bool operator==(const Word& o) const {
        return base_mask == o.base_mask && exps == o.exps;
    }
};

using DGElement = std::map<Word, RingElem>;

struct DGVariable {
    std::string name;
    bool divided = false;  // rho even; exterior otherwise
    int rho = -1;          // degree of T (exterior) or of the index -1 power
    DGElement cycle;       // t with d(t) = 0, degree rho + 1
};

class DGAlgebra {
public:
    /// Koszul base on the given degree-0 elements (the generators acquire
    /// degree -1), materialized in degrees >= -window.
    static DGAlgebra koszul_base(AlgebraPtr alg, std::vector<RingElem> elems, int window);

    const AlgebraPtr& algebra() const { return alg_; }
    int window() const { return window_; }
    const std::vector<RingElem>& base_elems() const { return base_; }
    const std::vector<DGVariable>& variables() const { return vars_; }

    int word_degree(const Word& w) const;
    /// Materialized words of the given degree, in a stable order.
    const std::vector<Word>& words_of_degree(int n) const;
    int word_index(int n, const Word& w) const;

    /// coeff * word, or nullopt when the product vanishes; the coefficient is
    /// the sign times the divided-power binomial.
    std::optional<std::pair<Scalar, Word>> mul_words(const Word& a, const Word& b) const;
    DGElement mul(const DGElement& a, const DGElement& b) const;
    DGElement scale(const DGElement& a, const RingElem& c) const;
    DGElement add(const DGElement& a, const DGElement& b) const;

    DGElement differential(const Word& w) const;
    DGElement differential(const DGElement& e) const;

    std::string word_name(const Word& w) const;
    std::optional<Word> parse_word(const std::string& s) const;

    /// The underlying complex of free A-modules on the materialized words.
    Complex to_complex() const;

    /// Kills the class of t (degree rho + 1): exterior for odd rho, divided
    /// powers for even rho. Throws UserError when t is not a cycle.
    DGAlgebra adjoin_variable(const DGElement& t, int rho, const std::string& name) const;

    /// DG axioms on materialized words: skew-commutativity, Leibniz, d^2 = 0,
    /// and the divided-power binomial identity. Throws on violation.
    void verify_axioms() const;

    /// Element of A embedded in degree 0.
    DGElement constant(const RingElem& a) const;

    /// Pads exponent vectors of words from an earlier stage to this algebra's
    /// variable count.
    DGElement normalize(const DGElement& e) const;

private:
    AlgebraPtr alg_;
    std::vector<RingElem> base_;
    std::vector<DGVariable> vars_;
    int window_ = 0;
    mutable std::map<int, std::vector<Word>> words_cache_;
    mutable std::map<int, std::map<Word, int>> index_cache_;
};

struct AdjoinHomologyReport {
    int window = 0;
    bool cycle_ok = true;
    bool class_nonzero = true;     // adjunction is pointless when false
    bool unchanged_above = true;   // H^q equal for rho+1 < q <= 0
    bool reduced_at_target = true; // dim drops exactly by the killed span
    std::vector<std::string> notes;
    bool pass() const { return cycle_ok && unchanged_above && reduced_at_target; }
};

AdjoinHomologyReport verify_adjoin_homology(const DGAlgebra& X, const DGAlgebra& Z,
                                            int rho, const DGElement& t);

struct TateResolution {
    DGAlgebra dg;
    std::vector<int> ranks;   // ranks in degrees 0, -1, ..., -bound
    int bound = 0;
    /// Adjunction history: (rho, count of variables adjoined).
    std::vector<std::pair<int, int>> stages;
};

/// Iterated killing of cycles starting from the Koszul complex on a minimal
/// generating set of m, until H^q = 0 for -bound < q < 0.
TateResolution tate_resolve(const AlgebraPtr& A, int bound);

struct TateWithFiltration;

/// Pieces F(0) .. F(top); F(i) for i >= top is everything materialized.
struct Filtration {
    int parameter = 0;
    int top = 0;
    /// pieces[i][degree] = word indices into words_of_degree(degree).
    std::vector<std::map<int, std::set<int>>> pieces;

    bool contains(const DGAlgebra& dg, int piece, int degree, const Word& w) const;
};

/// F(0) = A*1, F(i >= 1) = everything; parameter 0.
Filtration trivial_filtration(const DGAlgebra& X);

struct FiltrationAxiomReport {
    bool subcomplex = true;       // closed under d, termwise summand
    bool nested = true;           // F(i) inside F(i+1)
    bool exhausts_in_window = true;
    bool multiplicative = true;   // F(i)F(j) inside F(i+j+c)
    bool finite_length = true;    // automatic over the artinian backend
    int window = 0;
    std::string witness;          // first violation, when any
    bool pass() const {
        return subcomplex && nested && exhausts_in_window && multiplicative && finite_length;
    }
};

FiltrationAxiomReport verify_good_filtration(const DGAlgebra& X, const Filtration& F);

struct FiltrationExtension {
    DGAlgebra extended;
    Filtration filtration;
    int declared_r = 0;
};

/// Theorem-style extension of a good filtration along one adjunction: the new
/// parameter is r + 2c for odd rho and 1 for even rho.
FiltrationExtension good_filtration_extend(const DGAlgebra& X, const Filtration& F,
                                           const DGElement& t, int rho,
                                           const std::string& name);

struct TateWithFiltration {
    TateResolution resolution;
    Filtration filtration;
};

/// Tate process carrying a good filtration through every adjunction,
/// starting from the trivial filtration on the Koszul base.
TateWithFiltration tate_resolve_with_filtration(const AlgebraPtr& A, int bound);

}  // namespace homforge
