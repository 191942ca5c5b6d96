#pragma once

#include "hyperdist/identity.hpp"
#include "hyperdist/series.hpp"

#include <map>
#include <vector>

namespace hyperdist {

enum class TheoremId {
    Gauss1,
    KummerMinus1,
    KummerHalf,
    Dixon,
    Watson,
    Whipple,
    ClausenSquare,
    DougallL1,
    DougallL2,
    DougallL3,
    DougallL4,
    K1,          // argument e^(+pi i/3)
    K1Conjugate, // argument e^(-pi i/3)
    K2,
    K3,
    K4,
    ArcsinSquare, // 3F2(1,1,1;3/2,2;z) = asin(sqrt z)^2 / z
};

const char* theorem_name(TheoremId t);

struct TheoremTemplate {
    TheoremId id;
    std::string name;
    std::vector<std::string> symbols;
    std::vector<Expr> upper, lower; // affine in the symbols
    Expr argument;                  // concrete, or a SymbolRef for free-argument templates
    Expr rhs;
    std::vector<Constraint> side_conditions;
    bool argument_free = false;     // argument is a template symbol
    bool argument_any_expr = false; // free argument may be any expression (ArcsinSquare)
};

// the closed set of templates, frozen in construction order
const std::vector<TheoremTemplate>& theorem_registry();
const TheoremTemplate& theorem(TheoremId id);

struct MatchResult {
    TheoremId theorem;
    std::map<std::string, Rational> binding;
    Expr argument_binding; // for free-argument templates
    Expr closed_form;
    std::vector<Constraint> side_conditions;
};

// fully instantiated identity for a binding satisfying the side conditions
Identity apply_theorem(TheoremId t, const std::map<std::string, Rational>& binding,
                       const Expr* argument = nullptr);

// all templates matching the concrete series, up to parameter permutation
std::vector<MatchResult> match_closed_form(const HypSeries& s);

struct SummedIdentity {
    Identity identity;
    std::vector<TheoremId> fired;
};

// replaces every matched series node in id.rhs by its closed form
SummedIdentity sum_dist_rhs(const Identity& id);

} // namespace hyperdist
