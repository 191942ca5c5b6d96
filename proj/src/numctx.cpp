#include "hyperdist/numctx.hpp"

#include "numctx_cache.hpp"

#include "hyperdist/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hyperdist {

namespace {

// keep exact zeros positive so atan2-based branch decisions stay principal
void fix_zero_sign(CBall& z) {
    if (mpfr_zero_p(z.re.raw())) mpfr_set_zero(z.re.raw(), 1);
    if (mpfr_zero_p(z.im.raw())) mpfr_set_zero(z.im.raw(), 1);
}

} // namespace


NumContext::NumContext(Precision prec)
    : prec_(prec), wp_(prec.bits()), cache_(new Cache) {}

NumContext::~NumContext() = default;

// --- real helpers ------------------------------------------------------------

Real NumContext::r_from(long v) const {
    Real r(wp_);
    mpfr_set_si(r.raw(), v, MPFR_RNDN);
    return r;
}

Real NumContext::r_from(const Rational& q) const {
    Real r(wp_);
    mpfr_set_q(r.raw(), q.raw(), MPFR_RNDN);
    return r;
}

Real NumContext::r_from(double v) const {
    Real r(wp_);
    mpfr_set_d(r.raw(), v, MPFR_RNDN);
    return r;
}

Real NumContext::r_add(const Real& a, const Real& b) const {
    Real r(wp_);
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real NumContext::r_sub(const Real& a, const Real& b) const {
    Real r(wp_);
    mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real NumContext::r_mul(const Real& a, const Real& b) const {
    Real r(wp_);
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real NumContext::r_div(const Real& a, const Real& b) const {
    Real r(wp_);
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real NumContext::r_abs(const Real& a) const {
    Real r(wp_);
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real NumContext::r_neg(const Real& a) const {
    Real r(wp_);
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real NumContext::r_sqrt(const Real& a) const {
    Real r(wp_);
    mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real NumContext::r_pi() const {
    if (!cache_->has_pi) {
        Real p(wp_);
        mpfr_const_pi(p.raw(), MPFR_RNDN);
        cache_->pi = p;
        cache_->has_pi = true;
    }
    return cache_->pi;
}

Real NumContext::r_log2() const {
    if (!cache_->has_log2) {
        Real p(wp_);
        mpfr_const_log2(p.raw(), MPFR_RNDN);
        cache_->log2 = p;
        cache_->has_log2 = true;
    }
    return cache_->log2;
}

// --- construction --------------------------------------------------------------

CBall NumContext::zero() const { return CBall(Real(wp_), Real(wp_)); }

CBall NumContext::one() const { return from_rational(Rational(1)); }

CBall NumContext::imag_unit() const {
    CBall z = zero();
    mpfr_set_si(z.im.raw(), 1, MPFR_RNDN);
    return z;
}

CBall NumContext::from_rational(const Rational& q) const {
    CBall z = zero();
    int t = mpfr_set_q(z.re.raw(), q.raw(), MPFR_RNDN);
    if (t != 0) z.err += ulp_err(z.re, z.im);
    return z;
}

CBall NumContext::from_real(Real r) const {
    CBall z = zero();
    z.re = std::move(r);
    return z;
}

CBall NumContext::pi() const {
    CBall z = from_real(r_pi());
    z.err += ulp_err(z.re, z.im);
    return z;
}

CBall NumContext::catalan() const {
    if (!cache_->has_catalan) {
        Real c(wp_);
        mpfr_const_catalan(c.raw(), MPFR_RNDN);
        cache_->catalan = c;
        cache_->has_catalan = true;
    }
    CBall z = from_real(cache_->catalan);
    z.err += ulp_err(z.re, z.im);
    return z;
}

CBall NumContext::root_of_unity(long n, long k) const {
    if (n <= 0) throw DomainError("root_of_unity: order must be positive");
    k %= n;
    if (k < 0) k += n;
    if (k == 0) return one();
    long g = std::gcd(n, k);
    n /= g;
    k /= g;
    if (2 * k == n) return from_rational(Rational(-1));
    if (n == 4) {
        CBall r = imag_unit();
        if (k == 3) r = neg(r);
        return r;
    }
    CBall z = zero();
    Real ang(wp_ + 16);
    mpfr_const_pi(ang.raw(), MPFR_RNDN);
    mpfr_mul_si(ang.raw(), ang.raw(), 2 * k, MPFR_RNDN);
    mpfr_div_si(ang.raw(), ang.raw(), n, MPFR_RNDN);
    mpfr_sin_cos(z.im.raw(), z.re.raw(), ang.raw(), MPFR_RNDN);
    z.err += ulp_err(z.re, z.im).mul2exp(2);
    return z;
}

Mag NumContext::ulp_err(const Real& re, const Real& im) const {
    Mag m = Mag::max(re.mag(), im.mag());
    if (m.is_zero()) return Mag::zero();
    return m.mul2exp(-static_cast<long>(wp_) + 2);
}

// --- arithmetic -----------------------------------------------------------------

CBall NumContext::add(const CBall& a, const CBall& b) const {
    CBall r{Real(wp_), Real(wp_)};
    int t1 = mpfr_add(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    int t2 = mpfr_add(r.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    r.err = a.err + b.err;
    if (t1 || t2) r.err += ulp_err(r.re, r.im);
    r.heuristic = a.heuristic || b.heuristic;
    fix_zero_sign(r);
    return r;
}

CBall NumContext::sub(const CBall& a, const CBall& b) const {
    CBall r{Real(wp_), Real(wp_)};
    int t1 = mpfr_sub(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    int t2 = mpfr_sub(r.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    r.err = a.err + b.err;
    if (t1 || t2) r.err += ulp_err(r.re, r.im);
    r.heuristic = a.heuristic || b.heuristic;
    fix_zero_sign(r);
    return r;
}

CBall NumContext::mul(const CBall& a, const CBall& b) const {
    CBall r{Real(wp_), Real(wp_)};
    Real t1(wp_), t2(wp_);
    // re = ar br - ai bi ; im = ar bi + ai br
    mpfr_mul(t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_sub(r.re.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_add(r.im.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    Mag ma = a.re.mag() + a.im.mag();
    Mag mb = b.re.mag() + b.im.mag();
    r.err = ma * b.err + mb * a.err + a.err * b.err + ulp_err(r.re, r.im).mul2exp(3);
    r.heuristic = a.heuristic || b.heuristic;
    fix_zero_sign(r);
    return r;
}

CBall NumContext::mul_rat(const CBall& a, const Rational& q) const {
    if (q.is_zero()) return zero();
    CBall r{Real(wp_), Real(wp_)};
    Real f = r_from(q);
    int t1 = mpfr_mul(r.re.raw(), a.re.raw(), f.raw(), MPFR_RNDN);
    int t2 = mpfr_mul(r.im.raw(), a.im.raw(), f.raw(), MPFR_RNDN);
    Mag mq = f.mag();
    r.err = mq * a.err;
    r.err += ulp_err(r.re, r.im).mul2exp(2); // covers rounding of f and products
    (void)t1;
    (void)t2;
    r.heuristic = a.heuristic;
    return r;
}

CBall NumContext::neg(const CBall& a) const {
    CBall r = a;
    mpfr_neg(r.re.raw(), r.re.raw(), MPFR_RNDN);
    mpfr_neg(r.im.raw(), r.im.raw(), MPFR_RNDN);
    fix_zero_sign(r);
    return r;
}

CBall NumContext::conj(const CBall& a) const {
    CBall r = a;
    mpfr_neg(r.im.raw(), r.im.raw(), MPFR_RNDN);
    fix_zero_sign(r);
    return r;
}

Real NumContext::abs_center(const CBall& a) const {
    Real r(wp_);
    mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
    return r;
}

Mag NumContext::abs_upper(const CBall& a) const {
    Real h = abs_center(a);
    return h.mag_tight() + a.err;
}

double NumContext::abs_lower_d(const CBall& a) const {
    Real h = abs_center(a);
    double c = h.to_double();
    if (!std::isfinite(c)) return 0.0;
    return c * (1.0 - 1e-12) - a.err.to_double();
}

CBall NumContext::inv(const CBall& a) const { return div(one(), a); }

CBall NumContext::div(const CBall& a, const CBall& b) const {
    double blo = abs_lower_d(b);
    if (!(blo > 0.0)) throw DomainError("division by a ball containing zero");
    CBall r{Real(wp_), Real(wp_)};
    Real d(wp_), t1(wp_), t2(wp_), t3(wp_);
    mpfr_mul(t1.raw(), b.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_add(d.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_add(t3.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_div(r.re.raw(), t3.raw(), d.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_sub(t3.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_div(r.im.raw(), t3.raw(), d.raw(), MPFR_RNDN);
    // |a'/b' - a/b| <= e_a/|b'| + |a| e_b / (|b||b'|)
    Mag inv_blo = Mag::from_double(1.0 / blo);
    Mag ma = a.re.mag() + a.im.mag() + a.err;
    r.err = (a.err + ma * b.err * inv_blo) * inv_blo;
    r.err += ulp_err(r.re, r.im).mul2exp(3);
    r.heuristic = a.heuristic || b.heuristic;
    fix_zero_sign(r);
    return r;
}

bool NumContext::contains_rational(const CBall& a, const Rational& re_q) const {
    Real d = r_sub(a.re, r_from(re_q));
    Real h(wp_);
    mpfr_hypot(h.raw(), d.raw(), a.im.raw(), MPFR_RNDN);
    Mag dist = h.mag();
    // a little slack for the hypot rounding
    return !(a.err + a.err < dist.mul2exp(-1));
}

// --- elementary functions ---------------------------------------------------------

CBall NumContext::sqrt(const CBall& a) const {
    const double e_in = a.err.to_double();
    if (a.im.is_zero()) {
        int s = a.re.sign();
        if (s == 0 && a.err.is_zero()) return zero();
        if (s >= 0) {
            double lo = a.re.to_double() - e_in;
            if (lo <= 0.0) {
                // ball touches 0: use the Hoelder bound |sqrt u - sqrt v| <= sqrt|u - v|
                CBall r = zero();
                int t = mpfr_sqrt(r.re.raw(), a.re.raw(), MPFR_RNDN);
                if (t) r.err += ulp_err(r.re, r.im);
                r.err += Mag::from_double(std::sqrt(e_in) * 1.001);
                r.heuristic = a.heuristic;
                return r;
            }
            CBall r = zero();
            mpfr_sqrt(r.re.raw(), a.re.raw(), MPFR_RNDN);
            r.err = a.err * Mag::from_double(0.5 / std::sqrt(lo)) + ulp_err(r.re, r.im);
            r.heuristic = a.heuristic;
            return r;
        }
        // negative real axis: an exactly-zero imaginary center is taken to
        // mean a real value, so the principal branch gives +i sqrt(|x|)
        double lo = -a.re.to_double() - e_in;
        if (lo <= 0.0) throw DomainError("sqrt: ball around a negative real touches zero");
        CBall r = zero();
        Real t = r_neg(a.re);
        mpfr_sqrt(r.im.raw(), t.raw(), MPFR_RNDN);
        r.err = a.err * Mag::from_double(0.5 / std::sqrt(lo)) + ulp_err(r.re, r.im);
        r.heuristic = a.heuristic;
        return r;
    }
    if (a.re.sign() < 0 && !a.err.is_zero()) {
        double imlo = std::abs(a.im.to_double()) - e_in;
        if (imlo <= 0.0) throw DomainError("sqrt: ball straddles the branch cut");
    }
    // w = sqrt((|z|+|re|)/2) etc., standard stable formula
    CBall r = zero();
    Real h = abs_center(a);
    Real t(wp_), u(wp_);
    mpfr_abs(t.raw(), a.re.raw(), MPFR_RNDN);
    mpfr_add(t.raw(), t.raw(), h.raw(), MPFR_RNDN);
    mpfr_div_ui(t.raw(), t.raw(), 2, MPFR_RNDN);
    mpfr_sqrt(t.raw(), t.raw(), MPFR_RNDN); // t = sqrt((|z|+|re|)/2)
    mpfr_abs(u.raw(), a.im.raw(), MPFR_RNDN);
    mpfr_div(u.raw(), u.raw(), t.raw(), MPFR_RNDN);
    mpfr_div_ui(u.raw(), u.raw(), 2, MPFR_RNDN); // u = |im|/(2t)
    if (a.re.sign() >= 0) {
        r.re = t;
        r.im = u;
        if (a.im.sign() < 0) mpfr_neg(r.im.raw(), r.im.raw(), MPFR_RNDN);
    } else {
        r.re = u;
        r.im = t;
        if (a.im.sign() < 0) mpfr_neg(r.im.raw(), r.im.raw(), MPFR_RNDN);
    }
    double wlo = abs_lower_d(r);
    if (wlo <= 0.0) throw DomainError("sqrt: cannot bound result away from zero");
    r.err = a.err * Mag::from_double(0.5 / wlo * 1.001) + ulp_err(r.re, r.im).mul2exp(2);
    r.heuristic = a.heuristic;
    return r;
}

CBall NumContext::exp(const CBall& a) const {
    if (a.err.to_double() > 0.25) throw PrecisionExhausted("exp: input error radius too large");
    CBall r = zero();
    Real ex(wp_), s(wp_), c(wp_);
    mpfr_exp(ex.raw(), a.re.raw(), MPFR_RNDN);
    mpfr_sin_cos(s.raw(), c.raw(), a.im.raw(), MPFR_RNDN);
    mpfr_mul(r.re.raw(), ex.raw(), c.raw(), MPFR_RNDN);
    mpfr_mul(r.im.raw(), ex.raw(), s.raw(), MPFR_RNDN);
    Mag mout = ex.mag();
    r.err = mout * a.err * Mag::from_double(1.3) + ulp_err(r.re, r.im).mul2exp(2);
    r.heuristic = a.heuristic;
    return r;
}

CBall NumContext::log(const CBall& a) const {
    double lo = abs_lower_d(a);
    if (lo <= 0.0) throw DomainError("log: ball touches zero");
    // an exactly-zero imaginary center is taken to mean a real value, so a
    // negative real ball sits on the cut's principal side (im = +pi)
    if (a.re.sign() < 0 && !a.im.is_zero()) {
        double imlo = std::abs(a.im.to_double()) - a.err.to_double();
        if (imlo <= 0.0 && !a.err.is_zero())
            throw DomainError("log: ball straddles the branch cut");
    }
    CBall r = zero();
    Real t1(wp_), t2(wp_);
    mpfr_mul(t1.raw(), a.re.raw(), a.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), a.im.raw(), MPFR_RNDN);
    mpfr_add(t1.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_log(t1.raw(), t1.raw(), MPFR_RNDN);
    mpfr_div_ui(r.re.raw(), t1.raw(), 2, MPFR_RNDN);
    mpfr_atan2(r.im.raw(), a.im.raw(), a.re.raw(), MPFR_RNDN);
    r.err = a.err * Mag::from_double(1.001 / lo) + ulp_err(r.re, r.im).mul2exp(2);
    r.heuristic = a.heuristic;
    return r;
}

CBall NumContext::pow_int(const CBall& a, long e) const {
    if (e == 0) return one();
    bool invert = e < 0;
    unsigned long ue = static_cast<unsigned long>(invert ? -e : e);
    CBall base = a;
    CBall acc = one();
    while (ue) {
        if (ue & 1) acc = mul(acc, base);
        ue >>= 1;
        if (ue) base = mul(base, base);
    }
    return invert ? inv(acc) : acc;
}

CBall NumContext::pow_rat(const CBall& a, const Rational& e) const {
    if (e.is_integer() && e.fits_long()) return pow_int(a, e.to_long());
    // positive real base: use rootn + integer power, no exponent rounding
    if (a.im.is_zero() && a.re.sign() > 0 && a.err.is_zero()) {
        Rational num = e;
        long den = 1;
        // e = p/q with small q
        if (mpz_fits_slong_p(mpq_denref(e.raw()))) {
            den = mpz_get_si(mpq_denref(e.raw()));
            Rational p_num(e * Rational(den));
            if (p_num.fits_long() && den <= 1024) {
                CBall root = zero();
                mpfr_rootn_ui(root.re.raw(), a.re.raw(), static_cast<unsigned long>(den), MPFR_RNDN);
                root.err = ulp_err(root.re, root.im);
                return pow_int(root, p_num.to_long());
            }
        }
        (void)num;
    }
    if (a.im.is_zero() && a.re.is_zero() && a.err.is_zero()) {
        if (e.sign() > 0) return zero();
        throw DomainError("pow: zero base with nonpositive exponent");
    }
    return exp(mul_rat(log(a), e));
}

CBall NumContext::pow(const CBall& a, const CBall& b) const {
    if (b.im.is_zero() && b.err.is_zero()) {
        // exact real exponent stored in a Real can still be irrational; only
        // integers are recoverable exactly
        if (mpfr_integer_p(b.re.raw()) && mpfr_fits_slong_p(b.re.raw(), MPFR_RNDN))
            return pow_int(a, mpfr_get_si(b.re.raw(), MPFR_RNDN));
    }
    if (a.im.is_zero() && a.re.is_zero() && a.err.is_zero()) {
        if (b.im.is_zero() && b.re.sign() > 0) return zero();
        throw DomainError("pow: zero base");
    }
    return exp(mul(b, log(a)));
}

namespace {

double im_scale_bound(const CBall& a) {
    return std::abs(a.im.to_double()) + a.err.to_double();
}

double re_scale_bound(const CBall& a) {
    return std::abs(a.re.to_double()) + a.err.to_double();
}

} // namespace

CBall NumContext::sin(const CBall& a) const {
    CBall r = zero();
    Real s(wp_), c(wp_), sh(wp_), ch(wp_);
    mpfr_sin_cos(s.raw(), c.raw(), a.re.raw(), MPFR_RNDN);
    mpfr_sinh_cosh(sh.raw(), ch.raw(), a.im.raw(), MPFR_RNDN);
    mpfr_mul(r.re.raw(), s.raw(), ch.raw(), MPFR_RNDN);
    mpfr_mul(r.im.raw(), c.raw(), sh.raw(), MPFR_RNDN);
    double d = std::exp(std::min(700.0, im_scale_bound(a)));
    r.err = a.err * Mag::from_double(d * 1.1) + ulp_err(r.re, r.im).mul2exp(2);
    r.heuristic = a.heuristic;
    return r;
}

CBall NumContext::cos(const CBall& a) const {
    CBall r = zero();
    Real s(wp_), c(wp_), sh(wp_), ch(wp_);
    mpfr_sin_cos(s.raw(), c.raw(), a.re.raw(), MPFR_RNDN);
    mpfr_sinh_cosh(sh.raw(), ch.raw(), a.im.raw(), MPFR_RNDN);
    mpfr_mul(r.re.raw(), c.raw(), ch.raw(), MPFR_RNDN);
    mpfr_mul(r.im.raw(), s.raw(), sh.raw(), MPFR_RNDN);
    mpfr_neg(r.im.raw(), r.im.raw(), MPFR_RNDN);
    double d = std::exp(std::min(700.0, im_scale_bound(a)));
    r.err = a.err * Mag::from_double(d * 1.1) + ulp_err(r.re, r.im).mul2exp(2);
    r.heuristic = a.heuristic;
    return r;
}

CBall NumContext::sinh(const CBall& a) const {
    CBall r = zero();
    Real s(wp_), c(wp_), sh(wp_), ch(wp_);
    mpfr_sinh_cosh(sh.raw(), ch.raw(), a.re.raw(), MPFR_RNDN);
    mpfr_sin_cos(s.raw(), c.raw(), a.im.raw(), MPFR_RNDN);
    mpfr_mul(r.re.raw(), sh.raw(), c.raw(), MPFR_RNDN);
    mpfr_mul(r.im.raw(), ch.raw(), s.raw(), MPFR_RNDN);
    double d = std::exp(std::min(700.0, re_scale_bound(a)));
    r.err = a.err * Mag::from_double(d * 1.1) + ulp_err(r.re, r.im).mul2exp(2);
    r.heuristic = a.heuristic;
    return r;
}

CBall NumContext::cosh(const CBall& a) const {
    CBall r = zero();
    Real s(wp_), c(wp_), sh(wp_), ch(wp_);
    mpfr_sinh_cosh(sh.raw(), ch.raw(), a.re.raw(), MPFR_RNDN);
    mpfr_sin_cos(s.raw(), c.raw(), a.im.raw(), MPFR_RNDN);
    mpfr_mul(r.re.raw(), ch.raw(), c.raw(), MPFR_RNDN);
    mpfr_mul(r.im.raw(), sh.raw(), s.raw(), MPFR_RNDN);
    double d = std::exp(std::min(700.0, re_scale_bound(a)));
    r.err = a.err * Mag::from_double(d * 1.1) + ulp_err(r.re, r.im).mul2exp(2);
    r.heuristic = a.heuristic;
    return r;
}

CBall NumContext::asin(const CBall& a) const {
    if (a.im.is_zero() && a.err.is_zero()) {
        Real one_r = r_from(1L);
        if (mpfr_cmpabs(a.re.raw(), one_r.raw()) <= 0) {
            CBall r = zero();
            mpfr_asin(r.re.raw(), a.re.raw(), MPFR_RNDN);
            r.err = ulp_err(r.re, r.im);
            r.heuristic = a.heuristic;
            return r;
        }
    }
    // asin z = -i log(i z + sqrt(1 - z^2))
    CBall z2 = mul(a, a);
    CBall s = sqrt(sub(one(), z2));
    CBall iz = mul(imag_unit(), a);
    CBall l = log(add(iz, s));
    return neg(mul(imag_unit(), l));
}

CBall NumContext::atan(const CBall& a) const {
    if (a.im.is_zero() && a.err.is_zero()) {
        CBall r = zero();
        mpfr_atan(r.re.raw(), a.re.raw(), MPFR_RNDN);
        r.err = ulp_err(r.re, r.im);
        r.heuristic = a.heuristic;
        return r;
    }
    // atan z = (i/2) (log(1 - i z) - log(1 + i z))
    CBall iz = mul(imag_unit(), a);
    CBall l = sub(log(sub(one(), iz)), log(add(one(), iz)));
    CBall half_i = mul_rat(imag_unit(), Rational(1, 2));
    return mul(half_i, l);
}

CBall NumContext::asinh(const CBall& a) const {
    if (a.im.is_zero() && a.err.is_zero()) {
        CBall r = zero();
        mpfr_asinh(r.re.raw(), a.re.raw(), MPFR_RNDN);
        r.err = ulp_err(r.re, r.im);
        r.heuristic = a.heuristic;
        return r;
    }
    CBall s = sqrt(add(mul(a, a), one()));
    return log(add(a, s));
}

CBall NumContext::atanh(const CBall& a) const {
    if (a.im.is_zero() && a.err.is_zero()) {
        Real one_r = r_from(1L);
        if (mpfr_cmpabs(a.re.raw(), one_r.raw()) < 0) {
            CBall r = zero();
            mpfr_atanh(r.re.raw(), a.re.raw(), MPFR_RNDN);
            r.err = ulp_err(r.re, r.im);
            r.heuristic = a.heuristic;
            return r;
        }
    }
    CBall l = sub(log(add(one(), a)), log(sub(one(), a)));
    return mul_rat(l, Rational(1, 2));
}

} // namespace hyperdist
