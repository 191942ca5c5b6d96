#pragma once

#include "hyperdist/numctx.hpp"

#include <vector>

namespace hyperdist {

struct NumContext::Cache {
    bool has_pi = false;
    Real pi;
    bool has_catalan = false;
    Real catalan;
    bool has_log2 = false;
    Real log2;
    // Spouge gamma coefficients for this precision
    long spouge_a = 0;
    std::vector<Real> spouge_c;
    Real spouge_sqrt2pi;
};

} // namespace hyperdist
