#pragma once

#include "hyperdist/expression.hpp"
#include "hyperdist/rational.hpp"

#include <string>
#include <vector>

namespace hyperdist {

// Ordered parameter multiset: insertion order is kept for display, equality
// ignores order.
using ParamList = std::vector<Rational>;

bool multiset_equal(const ParamList& a, const ParamList& b);
// removes the maximal common multiset from both lists (value-preserving
// Pochhammer cancellation)
void cancel_common(ParamList& upper, ParamList& lower);
// true if the list is acceptable as a lower-parameter list
bool valid_lower_params(const ParamList& lower);

// A concrete pFq(A; B; z) with rational parameters and an exact argument.
struct HypSeries {
    ParamList upper;
    ParamList lower;
    Expr argument;

    HypSeries() = default;
    HypSeries(ParamList up, ParamList lo, Expr z);

    std::size_t p() const { return upper.size(); }
    std::size_t q() const { return lower.size(); }
    bool terminating() const;
    // index of the terminating cutoff: smallest -a over nonpositive integer uppers
    long terminating_order() const;

    std::string to_text() const;
};

HypSeries cancel_parameters(const HypSeries& s);

enum class SeriesClass { terminating, inside_disk, boundary_abs, boundary_cond, divergent };

const char* series_class_name(SeriesClass c);

// convergence excess s = sum(lower) - sum(upper); decides boundary behaviour
Rational convergence_excess(const HypSeries& s);

class NumContext;
SeriesClass convergence_class(const HypSeries& s, NumContext& ctx);

// exact k-th Maclaurin term as an expression in the argument
Expr series_term(const HypSeries& s, unsigned long k);
// rational coefficient of z^k
Rational series_coeff(const HypSeries& s, unsigned long k);

// Expression <-> HypSeries bridging
Expr hyp_expr(const HypSeries& s);
// requires every parameter entry to fold to a rational
HypSeries hyp_from_expr(const Expr& e);

} // namespace hyperdist
