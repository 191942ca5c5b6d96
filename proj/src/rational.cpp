#include "hyperdist/rational.hpp"

#include "hyperdist/errors.hpp"

#include <ostream>

namespace hyperdist {

Rational::Rational(long n, long d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
    mpq_t den;
    mpq_init(den);
    mpq_set_si(den, d, 1);
    mpq_div(q_, q_, den);
    mpq_clear(den);
}

Rational Rational::parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw ParseError("empty rational literal");
    Rational r;
    if (mpq_set_str(r.q_, t.c_str(), 10) != 0)
        throw ParseError("bad rational literal: '" + text + "'");
    if (mpz_sgn(mpq_denref(r.q_)) == 0)
        throw ParseError("zero denominator in rational literal: '" + text + "'");
    mpq_canonicalize(r.q_);
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
}

Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
}

Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DomainError("rational division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
}

Rational Rational::operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
}

bool Rational::fits_long() const {
    return is_integer() && mpz_fits_slong_p(mpq_numref(q_));
}

long Rational::to_long() const {
    if (!fits_long()) throw DomainError("rational does not fit a machine integer: " + to_string());
    return mpz_get_si(mpq_numref(q_));
}

Rational Rational::abs() const {
    Rational r;
    mpq_abs(r.q_, q_);
    return r;
}

Rational Rational::floor() const {
    Rational r;
    mpz_fdiv_q(mpq_numref(r.q_), mpq_numref(q_), mpq_denref(q_));
    mpz_set_ui(mpq_denref(r.q_), 1);
    return r;
}

Rational Rational::pow_int(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero() && e < 0) throw DomainError("zero to a negative power");
    Rational r;
    unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(mpq_numref(r.q_), mpq_numref(q_), ue);
    mpz_pow_ui(mpq_denref(r.q_), mpq_denref(q_), ue);
    if (e < 0) mpq_inv(r.q_, r.q_);
    mpq_canonicalize(r.q_);
    return r;
}

std::string Rational::to_string() const {
    char* s = mpq_get_str(nullptr, 10, q_);
    std::string out(s);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, out.size() + 1);
    return out;
}

std::size_t Rational::hash() const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](unsigned long v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(mpz_get_ui(mpq_numref(q_)));
    mix(static_cast<unsigned long>(mpz_sgn(mpq_numref(q_)) + 2));
    mix(mpz_get_ui(mpq_denref(q_)));
    return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational pochhammer(const Rational& a, unsigned long k) {
    Rational r(1);
    Rational x = a;
    for (unsigned long i = 0; i < k; ++i) {
        r *= x;
        x += Rational(1);
    }
    return r;
}

Rational binomial_coeff(unsigned long n, unsigned long k) {
    if (k > n) return Rational(0);
    Rational r;
    mpz_bin_uiui(mpq_numref(const_cast<mpq_t&>(r.raw())), n, k);
    return r;
}

Rational factorial(unsigned long n) {
    Rational r;
    mpz_fac_ui(mpq_numref(const_cast<mpq_t&>(r.raw())), n);
    return r;
}

} // namespace hyperdist
