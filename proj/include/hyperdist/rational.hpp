#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyperdist {

// Exact rational scalar over GMP. Always canonical: den > 0, gcd(num, den) = 1.
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long n) { mpq_init(q_); mpq_set_si(q_, n, 1); }
    Rational(int n) : Rational(static_cast<long>(n)) {}
    Rational(long n, long d);
    explicit Rational(const mpq_t q) { mpq_init(q_); mpq_set(q_, q); mpq_canonicalize(q_); }
    // parses "5/4", "-1/24", "3"
    static Rational parse(const std::string& text);

    Rational(const Rational& o) { mpq_init(q_); mpq_set(q_, o.q_); }
    Rational(Rational&& o) noexcept { mpq_init(q_); mpq_swap(q_, o.q_); }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    const mpq_t& raw() const { return q_; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b); // throws on b == 0
    Rational operator-() const;
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_); }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }
    int cmp(const Rational& o) const { return mpq_cmp(q_, o.q_); }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    bool is_nonpositive_integer() const { return is_integer() && sign() <= 0; }
    // for integers that fit; throws otherwise
    long to_long() const;
    bool fits_long() const;

    Rational abs() const;
    Rational floor() const;
    // integer exponent power; e < 0 requires nonzero value
    Rational pow_int(long e) const;

    std::string to_string() const;
    double to_double() const { return mpq_get_d(q_); }
    std::size_t hash() const;

private:
    mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// rising factorial a (a+1) ... (a+k-1); 1 for k == 0
Rational pochhammer(const Rational& a, unsigned long k);
Rational binomial_coeff(unsigned long n, unsigned long k);
Rational factorial(unsigned long n);

// K/E are functions of the parameter m; this maps a modulus k to m = k^2.
inline Rational elliptic_parameter_from_modulus(const Rational& k) { return k * k; }

} // namespace hyperdist
