#include "homforge/field.hpp"

namespace homforge {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

Field Field::prime(std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("field order must be prime: " + std::to_string(p));
    return Field(Kind::prime, p);
}

Scalar Field::zero() const {
    if (kind_ == Kind::rationals) return Scalar(Rational(0));
    return Scalar(std::uint64_t{0});
}

Scalar Field::one() const {
    if (kind_ == Kind::rationals) return Scalar(Rational(1));
    return Scalar(std::uint64_t{1 % p_});
}

Scalar Field::from_int(long n) const {
    if (kind_ == Kind::rationals) return Scalar(Rational(n));
    long long r = static_cast<long long>(n % static_cast<long long>(p_));
    if (r < 0) r += static_cast<long long>(p_);
    return Scalar(static_cast<std::uint64_t>(r));
}

Scalar Field::from_mpz(const mpz_class& z) const {
    if (kind_ == Kind::rationals) return Scalar(Rational(z));
    mpz_class m = z % mpz_class(static_cast<unsigned long>(p_));
    if (m < 0) m += mpz_class(static_cast<unsigned long>(p_));
    return Scalar(static_cast<std::uint64_t>(m.get_ui()));
}

Scalar Field::from_rational(const Rational& q) const {
    if (kind_ == Kind::rationals) return Scalar(q);
    Scalar n = from_mpz(q.numerator());
    Scalar d = from_mpz(q.denominator());
    return div(n, d);
}

bool Field::is_zero(const Scalar& a) const {
    if (kind_ == Kind::rationals) return qq(a).is_zero();
    return fp(a) == 0;
}

bool Field::is_one(const Scalar& a) const {
    if (kind_ == Kind::rationals) return qq(a).is_one();
    return fp(a) == 1 % p_;
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::rationals) return Scalar(qq(a) + qq(b));
    std::uint64_t s = fp(a) + fp(b);
    if (s >= p_) s -= p_;
    return Scalar(s);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::rationals) return Scalar(qq(a) - qq(b));
    std::uint64_t x = fp(a), y = fp(b);
    return Scalar(x >= y ? x - y : x + p_ - y);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::rationals) return Scalar(qq(a) * qq(b));
    return Scalar(mulmod_u64(fp(a), fp(b), p_));
}

Scalar Field::neg(const Scalar& a) const {
    if (kind_ == Kind::rationals) return Scalar(-qq(a));
    std::uint64_t x = fp(a);
    return Scalar(x == 0 ? x : p_ - x);
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    if (kind_ == Kind::rationals) return Scalar(Rational(1) / qq(a));
    return Scalar(powmod_u64(fp(a), p_ - 2, p_));  // Fermat
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

bool Field::eq(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::rationals) return qq(a) == qq(b);
    return fp(a) == fp(b);
}

std::string Field::str(const Scalar& a) const {
    if (kind_ == Kind::rationals) return qq(a).str();
    return std::to_string(fp(a));
}

}  // namespace homforge
