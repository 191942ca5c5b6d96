#pragma once

#include "hyperdist/expression.hpp"
#include "hyperdist/numctx.hpp"

#include <map>

namespace hyperdist {

// Recursive expression evaluation. Every SymbolRef must be bound; Hyp nodes
// are instantiated and evaluated through the series evaluator. The result's
// rigor tag is heuristic iff any sub-evaluation was heuristic.
CBall eval_expression(NumContext& ctx, const Expr& e,
                      const std::map<std::string, Rational>& bindings);

} // namespace hyperdist
