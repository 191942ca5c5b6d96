#pragma once

#include "hyperdist/expression.hpp"
#include "hyperdist/series.hpp"

#include <string>

namespace hyperdist {

// Infix expression grammar (see README): rationals like 5/4, symbols,
// pi / catalan / i, omega(n,k), zeta(n), Li2/Li3/Li4, K/E, the elementary
// functions, and embedded series in the canonical text syntax
// pFq(a1,...,ap; b1,...,bq; z), e.g. "2F1(1/2,1/2;2;1)".
Expr parse_expression(const std::string& text);

// strict form of the canonical series syntax; parameters must be rational
HypSeries parse_series(const std::string& text);

} // namespace hyperdist
