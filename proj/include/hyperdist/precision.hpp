#pragma once

#include <mpfr.h>

namespace hyperdist {

// Requested decimal accuracy plus guard digits used for internal work.
struct Precision {
    unsigned digits = 40;
    unsigned guard = 10;

    Precision() = default;
    Precision(unsigned d, unsigned g = 10) : digits(d < 10 ? 10 : d), guard(g < 10 ? 10 : g) {}

    mpfr_prec_t bits() const {
        double b = (digits + guard) * 3.3219280948873623 + 16.0;
        return static_cast<mpfr_prec_t>(b) + 1;
    }
};

} // namespace hyperdist
