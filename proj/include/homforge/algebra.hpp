#pragma once

// Local k-algebra backends: monomial quotients of polynomial rings, either
// Artinian (finite monomial basis) or non-negatively graded with a degree
// window. Elements are kept in normal form: no monomial divisible by a
// relation generator.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homforge/errors.hpp"
#include "homforge/field.hpp"

namespace homforge {

/// Exponent vector in the declared variable order.
struct Monomial {
    std::vector<int> e;

    int degree() const;
    bool is_one() const;
    bool divisible_by(const Monomial& d) const;
    Monomial times(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return e == o.e; }
};

/// Degree first, then lexicographic in the declared variable order.
struct DegLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

enum class Backend { artinian, graded };

class LocalAlgebra;
using AlgebraPtr = std::shared_ptr<const LocalAlgebra>;

class RingElem {
public:
    RingElem() = default;
    RingElem(AlgebraPtr alg, std::map<Monomial, Scalar, DegLexLess> terms);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<Monomial, Scalar, DegLexLess>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    Scalar constant_term() const;
    bool is_unit() const;
    /// Artinian: exact geometric series. Graded: series truncated past the window.
    RingElem inverse() const;

    /// Degree when all monomials agree; nullopt for 0 or inhomogeneous.
    std::optional<int> homogeneous_degree() const;

    RingElem operator+(const RingElem& o) const;
    RingElem operator-(const RingElem& o) const;
    RingElem operator*(const RingElem& o) const;
    RingElem operator-() const;
    RingElem scaled(const Scalar& c) const;
    bool operator==(const RingElem& o) const;
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    std::string str() const;

private:
    AlgebraPtr alg_;
    std::map<Monomial, Scalar, DegLexLess> terms_;
};

class LocalAlgebra : public std::enable_shared_from_this<LocalAlgebra> {
public:
    /// Relations are monomial generators given as exponent vectors.
    static AlgebraPtr make(Field field, std::vector<std::string> vars,
                           std::vector<Monomial> relations, Backend backend,
                           int graded_window = 0);

    const Field& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Monomial>& relations() const { return relations_; }
    Backend backend() const { return backend_; }
    int graded_window() const { return window_; }
    int var_index(const std::string& name) const;

    bool kills(const Monomial& m) const;  // divisible by some relation generator

    // Artinian basis data
    int dim() const;  // k-dimension (Artinian only)
    const std::vector<Monomial>& basis() const;
    int basis_index(const Monomial& m) const;
    int max_total_degree() const;  // largest degree of a basis monomial

    /// Graded: standard monomials of the given total degree.
    const std::vector<Monomial>& basis_of_degree(int d) const;

    RingElem zero() const;
    RingElem one() const;
    RingElem from_scalar(const Scalar& c) const;
    RingElem monomial_elem(const Monomial& m, const Scalar& c) const;
    RingElem variable(int i) const;
    RingElem parse(const std::string& poly) const;

    /// Row-expanded multiplication-by-a on the monomial basis (Artinian):
    /// column j holds the coordinates of a * basis[j].
    std::vector<std::vector<Scalar>> mult_matrix(const RingElem& a) const;

    bool operator==(const LocalAlgebra& o) const;

private:
    LocalAlgebra() = default;
    void build_artinian_basis();

    Field field_ = Field::rationals();
    std::vector<std::string> vars_;
    std::vector<Monomial> relations_;
    Backend backend_ = Backend::artinian;
    int window_ = 0;

    std::vector<Monomial> basis_;
    std::map<Monomial, int, DegLexLess> basis_index_;
    int max_deg_ = 0;
    mutable std::map<int, std::vector<Monomial>> graded_basis_cache_;
};

/// k-basis of the socle (0 : m). Artinian only.
std::vector<RingElem> socle(const AlgebraPtr& A);

bool is_gorenstein_artinian(const AlgebraPtr& A);

/// E = Hom_k(A, k) with the contragredient action, E's basis dual to A's.
struct MatlisModule {
    AlgebraPtr algebra;
    // action[v] is the dim x dim matrix of x_v acting on the dual basis.
    std::vector<std::vector<std::vector<Scalar>>> action;

    /// Socle generator index when the algebra is Gorenstein: the basis
    /// monomial spanning (0:m), giving the module isomorphism A = E.
    std::optional<int> gorenstein_socle_index;
};

MatlisModule matlis_module(const AlgebraPtr& A);

std::optional<RingElem> parse_polynomial(const AlgebraPtr& A, const std::string& s,
                                         std::string* error);

}  // namespace homforge
