#pragma once

#include "hyperdist/errors.hpp"
#include "hyperdist/evaluator.hpp"
#include "hyperdist/parser.hpp"

#include <cmath>
#include <string>

namespace hyperdist::testutil {

inline CBall ev(NumContext& ctx, const std::string& text) {
    return eval_expression(ctx, parse_expression(text), {});
}

inline double diff_log10(NumContext& ctx, const CBall& a, const CBall& b) {
    CBall d = ctx.sub(a, b);
    Real m = ctx.abs_center(d);
    if (m.is_zero()) return -400.0;
    return static_cast<double>(mpfr_get_exp(m.raw())) * 0.30102999566398119521;
}

inline double diff_log10(NumContext& ctx, const std::string& a, const std::string& b) {
    return diff_log10(ctx, ev(ctx, a), ev(ctx, b));
}

} // namespace hyperdist::testutil
