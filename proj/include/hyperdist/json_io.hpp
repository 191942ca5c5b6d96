#pragma once

#include "hyperdist/expression.hpp"
#include "hyperdist/identity.hpp"

#include <json.hpp>

namespace hyperdist {

// Expression tree encoding: {"kind": "...", ...} with rationals as strings.
nlohmann::json expr_to_json(const Expr& e);
Expr expr_from_json(const nlohmann::json& j);

nlohmann::json constraint_to_json(const Constraint& c);
Constraint constraint_from_json(const nlohmann::json& j);

nlohmann::json identity_to_json(const Identity& id);
Identity identity_from_json(const nlohmann::json& j);

} // namespace hyperdist
