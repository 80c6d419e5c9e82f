#pragma once

// Exact coefficient fields: the rationals (GMP-backed) and prime fields F_p.
// Every scalar operation goes through a Field handle; no floating point.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace homforge {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) : v_(n, d) { canonical(); }
    explicit Rational(const mpz_class& z) : v_(z) {}
    explicit Rational(const mpq_class& q) : v_(q) { canonical(); }
    explicit Rational(const std::string& s) : v_(s) { canonical(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Rational operator+(const Rational& o) const { return Rational::raw(v_ + o.v_); }
    Rational operator-(const Rational& o) const { return Rational::raw(v_ - o.v_); }
    Rational operator*(const Rational& o) const { return Rational::raw(v_ * o.v_); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        return Rational::raw(v_ / o.v_);
    }
    Rational operator-() const { return Rational::raw(-v_); }
    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }

    const mpz_class numerator() const { return v_.get_num(); }
    const mpz_class denominator() const { return v_.get_den(); }

    // Lowest terms, denominator positive, e.g. "-1/2", "3".
    std::string str() const { return v_.get_str(); }

private:
    static Rational raw(mpq_class q) {
        Rational r;
        r.v_ = std::move(q);  // arithmetic on canonical operands stays canonical
        return r;
    }
    void canonical() {
        if (v_.get_den() == 0) throw std::domain_error("zero denominator");
        v_.canonicalize();
    }
    mpq_class v_;
};

/// A field element: rational or residue mod p, interpreted by a Field.
using Scalar = std::variant<Rational, std::uint64_t>;

class Field {
public:
    enum class Kind { rationals, prime };

    static Field rationals() { return Field(Kind::rationals, 0); }
    static Field prime(std::uint64_t p);

    Kind kind() const { return kind_; }
    std::uint64_t characteristic() const { return kind_ == Kind::prime ? p_ : 0; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long n) const;
    Scalar from_mpz(const mpz_class& z) const;
    Scalar from_rational(const Rational& q) const;  // Fp: reduces num/den mod p

    bool is_zero(const Scalar& a) const;
    bool is_one(const Scalar& a) const;
    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar div(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;
    bool eq(const Scalar& a, const Scalar& b) const;

    std::string str(const Scalar& a) const;
    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
    std::uint64_t fp(const Scalar& a) const { return std::get<std::uint64_t>(a); }
    const Rational& qq(const Scalar& a) const { return std::get<Rational>(a); }

    Kind kind_;
    std::uint64_t p_;
};

bool is_prime_u64(std::uint64_t n);

}  // namespace homforge
