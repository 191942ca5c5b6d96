#pragma once

#include "hyperdist/mag.hpp"
#include "hyperdist/precision.hpp"
#include "hyperdist/rational.hpp"
#include "hyperdist/real.hpp"

#include <map>
#include <memory>
#include <vector>

namespace hyperdist {

// Arbitrary-precision complex value with an absolute error radius. The center
// is (re, im); the true value lies within distance err of it. Values computed
// through accelerated boundary summation carry heuristic = true, meaning err
// is an empirical doubling-check estimate rather than a proven bound.
struct CBall {
    Real re, im;
    Mag err;
    bool heuristic = false;

    CBall() = default;
    CBall(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real_exactish() const { return im.is_zero(); }
};

// Numeric evaluation context: working precision plus per-context caches.
// Contexts are cheap to create and are confined to one thread each.
class NumContext {
public:
    explicit NumContext(Precision prec);
    ~NumContext();

    Precision precision() const { return prec_; }
    mpfr_prec_t wp() const { return wp_; }

    // --- real helpers ------------------------------------------------------
    Real r_from(long v) const;
    Real r_from(const Rational& q) const;
    Real r_from(double v) const;
    Real r_add(const Real& a, const Real& b) const;
    Real r_sub(const Real& a, const Real& b) const;
    Real r_mul(const Real& a, const Real& b) const;
    Real r_div(const Real& a, const Real& b) const;
    Real r_abs(const Real& a) const;
    Real r_neg(const Real& a) const;
    Real r_sqrt(const Real& a) const;
    Real r_pi() const;
    Real r_log2() const;

    // --- complex ball construction -----------------------------------------
    CBall zero() const;
    CBall one() const;
    CBall imag_unit() const;
    CBall from_rational(const Rational& q) const;
    CBall from_real(Real r) const;
    CBall pi() const;
    CBall catalan() const;
    CBall root_of_unity(long n, long k) const;

    // --- ball arithmetic ----------------------------------------------------
    CBall add(const CBall& a, const CBall& b) const;
    CBall sub(const CBall& a, const CBall& b) const;
    CBall mul(const CBall& a, const CBall& b) const;
    CBall div(const CBall& a, const CBall& b) const;
    CBall neg(const CBall& a) const;
    CBall conj(const CBall& a) const;
    CBall mul_rat(const CBall& a, const Rational& q) const;
    CBall inv(const CBall& a) const;

    // center |a| (rounded), upper bound including err, and strict lower bound
    Real abs_center(const CBall& a) const;
    Mag abs_upper(const CBall& a) const;
    // lower bound on |a| as a double exponent estimate; <= 0 means "may be 0"
    double abs_lower_d(const CBall& a) const;

    Mag ulp_err(const Real& re, const Real& im) const;

    // --- elementary functions (principal branches) --------------------------
    CBall sqrt(const CBall& a) const;
    CBall exp(const CBall& a) const;
    CBall log(const CBall& a) const;
    CBall pow(const CBall& a, const CBall& b) const;
    CBall pow_rat(const CBall& a, const Rational& e) const;
    CBall pow_int(const CBall& a, long e) const;
    CBall sin(const CBall& a) const;
    CBall cos(const CBall& a) const;
    CBall sinh(const CBall& a) const;
    CBall cosh(const CBall& a) const;
    CBall asin(const CBall& a) const;
    CBall atan(const CBall& a) const;
    CBall asinh(const CBall& a) const;
    CBall atanh(const CBall& a) const;

    // --- special functions ---------------------------------------------------
    CBall gamma(const CBall& z) const;
    CBall zeta_int(long s) const;
    // polylog of order 2..4, principal sheet, cut on [1, inf)
    CBall polylog(int order, const CBall& z) const;
    // complete elliptic integrals in the parameter m (m = k^2)
    CBall elliptic_k(const CBall& m) const;
    CBall elliptic_e(const CBall& m) const;
    // Hurwitz zeta for Re(s) > 1, a > 0 rational, via Euler-Maclaurin
    CBall hurwitz_zeta(const CBall& s, const Rational& a) const;
    Real hurwitz_zeta_real(const Rational& s, const Rational& a) const;

    // true if the ball contains the given rational point
    bool contains_rational(const CBall& a, const Rational& re_q) const;

private:
    struct Cache;

    Real real_gamma(const Real& x) const;
    CBall gamma_spouge(const CBall& z) const;
    CBall polylog_series(int order, const CBall& z) const;
    CBall polylog_log_expansion(int order, const CBall& z) const;
    void agm(const CBall& a0, const CBall& b0, CBall& agm_out, CBall& c_sq_sum) const;

    Precision prec_;
    mpfr_prec_t wp_;
    std::unique_ptr<Cache> cache_;
};

} // namespace hyperdist
