#pragma once

#include "hyperdist/expression.hpp"
#include "hyperdist/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace hyperdist {

// Decidable predicate over rational bindings: affine(x) REL bound.
struct Constraint {
    enum class Rel { Greater, GreaterEq, NotEqual, IsInteger, NotNonposInt };

    std::map<std::string, Rational> coeffs;
    Rational constant; // affine = sum coeffs[s]*x_s + constant
    Rel rel = Rel::Greater;
    Rational bound;

    Rational affine_value(const std::map<std::string, Rational>& binding) const;
    bool satisfied(const std::map<std::string, Rational>& binding) const;
    std::string to_text() const;

    static Constraint greater(std::map<std::string, Rational> c, Rational k, Rational bound = Rational(0));
    static Constraint not_nonpos_int(std::map<std::string, Rational> c, Rational k);
};

// lhs = rhs over the given free symbols, subject to constraints
struct Identity {
    std::string name;
    Expr lhs;
    Expr rhs;
    std::vector<std::string> free_symbols;
    std::vector<Constraint> constraints;
    std::string provenance;

    // every SymbolRef in lhs/rhs must appear in free_symbols
    void validate() const;
    bool concrete() const { return free_symbols.empty(); }
};

Identity substitute(const Identity& id, const std::map<std::string, Rational>& binding);

} // namespace hyperdist
