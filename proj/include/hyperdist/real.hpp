#pragma once

#include <mpfr.h>

#include "hyperdist/mag.hpp"
#include "hyperdist/rational.hpp"

#include <cmath>
#include <string>

namespace hyperdist {

// RAII wrapper over mpfr_t. The precision is fixed per value; arithmetic is
// done through NumContext, which decides the working precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_swap(x_, o.x_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

    int sign() const { return mpfr_sgn(x_); }
    bool is_zero() const { return mpfr_zero_p(x_); }
    bool is_finite() const { return mpfr_number_p(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

    // upper bound on |x| as a Mag (coarse: power of two)
    Mag mag() const {
        if (mpfr_zero_p(x_)) return Mag::zero();
        if (!mpfr_number_p(x_)) return Mag::inf();
        long e = mpfr_get_exp(x_);
        return Mag::pow2(e); // |x| < 2^e by mpfr exponent convention
    }

    // tight upper bound on |x|
    Mag mag_tight() const {
        if (mpfr_zero_p(x_)) return Mag::zero();
        if (!mpfr_number_p(x_)) return Mag::inf();
        long e = 0;
        double d = mpfr_get_d_2exp(&e, x_, MPFR_RNDU);
        return Mag::from_double(std::abs(d) * (1.0 + 1e-13)).mul2exp(e);
    }

    // decimal string with the given number of significant digits
    std::string to_string(int digits) const;

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) < 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) == 0; }

private:
    mpfr_t x_;
};

} // namespace hyperdist
