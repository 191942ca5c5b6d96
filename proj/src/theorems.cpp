#include "hyperdist/theorems.hpp"

#include "hyperdist/errors.hpp"
#include "hyperdist/evaluator.hpp"
#include "hyperdist/numctx.hpp"
#include "hyperdist/parser.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <functional>

namespace hyperdist {

const char* theorem_name(TheoremId t) {
    switch (t) {
    case TheoremId::Gauss1: return "Gauss1";
    case TheoremId::KummerMinus1: return "KummerMinus1";
    case TheoremId::KummerHalf: return "KummerHalf";
    case TheoremId::Dixon: return "Dixon";
    case TheoremId::Watson: return "Watson";
    case TheoremId::Whipple: return "Whipple";
    case TheoremId::ClausenSquare: return "ClausenSquare";
    case TheoremId::DougallL1: return "DougallL1";
    case TheoremId::DougallL2: return "DougallL2";
    case TheoremId::DougallL3: return "DougallL3";
    case TheoremId::DougallL4: return "DougallL4";
    case TheoremId::K1: return "K1";
    case TheoremId::K1Conjugate: return "K1Conjugate";
    case TheoremId::K2: return "K2";
    case TheoremId::K3: return "K3";
    case TheoremId::K4: return "K4";
    case TheoremId::ArcsinSquare: return "ArcsinSquare";
    }
    return "?";
}

// --- affine views of template parameters ------------------------------------------

namespace {

struct Affine {
    std::map<std::string, Rational> coeffs;
    Rational constant;

    bool is_constant() const { return coeffs.empty(); }
};

std::optional<Affine> affine_of(const Expr& e) {
    Expr c = canonical(e);
    const ExprNode& n = c.node();
    if (auto r = c.as_rational()) return Affine{{}, *r};
    if (n.kind == Kind::SymbolRef) return Affine{{{n.symbol, Rational(1)}}, Rational(0)};
    if (n.kind == Kind::Mul) {
        // rational coefficient times at most one affine subtree
        Rational coef(1);
        std::optional<Affine> inner;
        for (const Expr& f : n.children) {
            if (auto r = f.as_rational()) {
                coef *= *r;
            } else {
                auto a = affine_of(f);
                if (!a || inner) return std::nullopt;
                inner = a;
            }
        }
        if (!inner) return Affine{{}, coef};
        Affine out{{}, inner->constant * coef};
        for (const auto& [s, v] : inner->coeffs) {
            Rational c = v * coef;
            if (!c.is_zero()) out.coeffs[s] = c;
        }
        return out;
    }
    if (n.kind == Kind::Add) {
        Affine acc{{}, Rational(0)};
        for (const Expr& t : n.children) {
            auto a = affine_of(t);
            if (!a) return std::nullopt;
            acc.constant += a->constant;
            for (const auto& [s, v] : a->coeffs) {
                acc.coeffs[s] += v;
                if (acc.coeffs[s].is_zero()) acc.coeffs.erase(s);
            }
        }
        return acc;
    }
    return std::nullopt;
}

Constraint make_constraint(const std::string& text) {
    // "<affine> > 0", ">=", "!=", or "<affine> notnpi"
    std::size_t pos;
    Constraint::Rel rel;
    std::string lhs, rhs = "0";
    if ((pos = text.find(">=")) != std::string::npos) {
        rel = Constraint::Rel::GreaterEq;
        lhs = text.substr(0, pos);
        rhs = text.substr(pos + 2);
    } else if ((pos = text.find("!=")) != std::string::npos) {
        rel = Constraint::Rel::NotEqual;
        lhs = text.substr(0, pos);
        rhs = text.substr(pos + 2);
    } else if ((pos = text.find('>')) != std::string::npos) {
        rel = Constraint::Rel::Greater;
        lhs = text.substr(0, pos);
        rhs = text.substr(pos + 1);
    } else if ((pos = text.find("notnpi")) != std::string::npos) {
        rel = Constraint::Rel::NotNonposInt;
        lhs = text.substr(0, pos);
    } else {
        throw ParseError("bad constraint spec: " + text);
    }
    auto a = affine_of(parse_expression(lhs));
    if (!a) throw ParseError("constraint is not affine: " + text);
    Constraint c;
    c.coeffs = a->coeffs;
    c.constant = a->constant;
    c.rel = rel;
    c.bound = Rational::parse(rhs.empty() ? "0" : rhs);
    return c;
}

std::vector<Expr> parse_params(const std::string& csv) {
    std::vector<Expr> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= csv.size(); ++i) {
        if (i == csv.size() || (csv[i] == ',' && depth == 0)) {
            std::string piece = csv.substr(start, i - start);
            if (!piece.empty()) out.push_back(parse_expression(piece));
            start = i + 1;
        } else if (csv[i] == '(') {
            ++depth;
        } else if (csv[i] == ')') {
            --depth;
        }
    }
    return out;
}

TheoremTemplate make_template(TheoremId id, std::vector<std::string> symbols,
                              const std::string& upper_csv, const std::string& lower_csv,
                              const std::string& arg, const std::string& rhs,
                              const std::vector<std::string>& conditions,
                              bool arg_free = false, bool arg_any = false) {
    TheoremTemplate t;
    t.id = id;
    t.name = theorem_name(id);
    t.symbols = std::move(symbols);
    t.upper = parse_params(upper_csv);
    t.lower = parse_params(lower_csv);
    t.argument = parse_expression(arg);
    t.rhs = parse_expression(rhs);
    for (const std::string& c : conditions) t.side_conditions.push_back(make_constraint(c));
    t.argument_free = arg_free;
    t.argument_any_expr = arg_any;
    return t;
}

std::vector<TheoremTemplate> build_registry() {
    std::vector<TheoremTemplate> reg;

    reg.push_back(make_template(
        TheoremId::Gauss1, {"a", "b", "c"}, "a,b", "c", "1",
        "gamma(c)*gamma(c-a-b)/(gamma(c-a)*gamma(c-b))",
        {"c-a-b > 0", "c notnpi", "c-a notnpi", "c-b notnpi"}));

    reg.push_back(make_template(
        TheoremId::KummerMinus1, {"a", "b"}, "a,b", "1+a-b", "-1",
        "gamma(1+a-b)*gamma(1+a/2)/(gamma(1+a)*gamma(1+a/2-b))",
        {"1-b > 0", "1+a-b notnpi", "1+a/2 notnpi", "1+a notnpi", "1+a/2-b notnpi"}));

    reg.push_back(make_template(
        TheoremId::KummerHalf, {"a", "b"}, "a,b", "(a+b+1)/2", "1/2",
        "sqrt(pi)*gamma((a+b+1)/2)/(gamma((a+1)/2)*gamma((b+1)/2))",
        {"(a+b+1)/2 notnpi", "(a+1)/2 notnpi", "(b+1)/2 notnpi"}));

    reg.push_back(make_template(
        TheoremId::Dixon, {"a", "b", "c"}, "a,b,c", "1+a-b,1+a-c", "1",
        "gamma(1+a/2)*gamma(1+a-b)*gamma(1+a-c)*gamma(1+a/2-b-c)/"
        "(gamma(1+a)*gamma(1+a/2-b)*gamma(1+a/2-c)*gamma(1+a-b-c))",
        {"1+a/2-b-c > 0", "1+a/2 notnpi", "1+a-b notnpi", "1+a-c notnpi", "1+a notnpi",
         "1+a/2-b notnpi", "1+a/2-c notnpi", "1+a-b-c notnpi"}));

    reg.push_back(make_template(
        TheoremId::Watson, {"a", "b", "c"}, "a,b,c", "(a+b+1)/2,2*c", "1",
        "sqrt(pi)*gamma(c+1/2)*gamma((a+b+1)/2)*gamma(c-(a+b-1)/2)/"
        "(gamma((a+1)/2)*gamma((b+1)/2)*gamma(c+(1-a)/2)*gamma(c+(1-b)/2))",
        {"c-(a+b-1)/2 > 0", "c+1/2 notnpi", "(a+b+1)/2 notnpi", "(a+1)/2 notnpi",
         "(b+1)/2 notnpi", "c+(1-a)/2 notnpi", "c+(1-b)/2 notnpi", "2*c notnpi"}));

    reg.push_back(make_template(
        TheoremId::Whipple, {"a", "c", "e"}, "a,1-a,c", "e,1+2*c-e", "1",
        "pi*2^(1-2*c)*gamma(e)*gamma(1+2*c-e)/"
        "(gamma((a+e)/2)*gamma((a+1+2*c-e)/2)*gamma((1-a+e)/2)*gamma((2+2*c-a-e)/2))",
        {"c > 0", "e notnpi", "1+2*c-e notnpi", "(a+e)/2 notnpi", "(a+1+2*c-e)/2 notnpi",
         "(1-a+e)/2 notnpi", "(2+2*c-a-e)/2 notnpi"}));

    reg.push_back(make_template(
        TheoremId::ClausenSquare, {"a", "b", "z"}, "1/2,1/2-a,a+1/2", "1-b,b+1", "z",
        "2F1(1/2-a,a+1/2;1-b;(1-sqrt(1-z))/2) * 2F1(1/2-a,a+1/2;b+1;(1-sqrt(1-z))/2)",
        {"1-b notnpi", "b+1 notnpi", "z+1 > 0", "1-z > 0"},
        /*arg_free=*/true));

    reg.push_back(make_template(
        TheoremId::DougallL1, {"a", "b", "c"}, "a,a/2+1,b,c", "a/2,a-b+1,a-c+1", "1",
        "gamma((a+1)/2)*gamma(a-b+1)*gamma(a-c+1)*gamma((a+1)/2-b-c)/"
        "(gamma(a+1)*gamma((a+1)/2-b)*gamma((a+1)/2-c)*gamma(a-b-c+1))",
        {"(a+1)/2 > 0", "a-b+1 > 0", "a-c+1 > 0", "(a+1)/2-b-c > 0", "a+1 > 0",
         "(a+1)/2-b notnpi", "(a+1)/2-c notnpi", "a-b-c+1 notnpi", "a/2 notnpi"}));

    reg.push_back(make_template(
        TheoremId::DougallL2, {"a", "b", "c"}, "a,a/2+1,b,c", "a/2,a-b+1,a-c+1", "-1",
        "gamma(a-b+1)*gamma(a-c+1)/(gamma(a+1)*gamma(a-b-c+1))",
        {"a-b+1 > 0", "a-c+1 > 0", "a+1 > 0", "a-b-c+1 > 0", "a-2*b-2*c+2 > 0", "a/2 notnpi"}));

    reg.push_back(make_template(
        TheoremId::DougallL3, {"a", "b", "c", "d"}, "a/2+1,a,b,c,d",
        "a/2,a-b+1,a-c+1,a-d+1", "1",
        "gamma(a-b+1)*gamma(a-c+1)*gamma(a-d+1)*gamma(a-b-c-d+1)/"
        "(gamma(a+1)*gamma(a-b-c+1)*gamma(a-b-d+1)*gamma(a-c-d+1))",
        {"a-b+1 > 0", "a-c+1 > 0", "a-d+1 > 0", "a-b-c-d+1 > 0", "a+1 > 0", "a-b-c+1 > 0",
         "a-b-d+1 > 0", "a-c-d+1 > 0", "a/2 notnpi"}));

    reg.push_back(make_template(
        TheoremId::DougallL4, {"a", "b", "c", "d", "e"}, "a/2+1,a,b,c,d,e",
        "a/2,a-b+1,a-c+1,a-d+1,a-e+1", "-1",
        "gamma(a-d+1)*gamma(a-e+1)/(gamma(a+1)*gamma(a-d-e+1)) * "
        "3F2(a-b-c+1,d,e;a-b+1,a-c+1;1)",
        {"a-d+1 > 0", "a-e+1 > 0", "a+1 > 0", "a-d-e+1 > 0", "a-b+1 notnpi", "a-c+1 notnpi",
         "3*a+3-2*b-2*c-2*d-2*e > 0", "a/2 notnpi"}));

    reg.push_back(make_template(
        TheoremId::K1, {"a"}, "a,(a+1)/3", "2*(a+1)/3", "omega(6,1)",
        "3^(a/2-1)*exp(pi*i*a/6)*gamma(a/3)*gamma(2*(a+1)/3)/(gamma(2/3)*gamma(a))",
        {"a > 0", "1/2-a > 0", "2*(a+1)/3 notnpi"}));

    reg.push_back(make_template(
        TheoremId::K1Conjugate, {"a"}, "a,(a+1)/3", "2*(a+1)/3", "omega(6,5)",
        "3^(a/2-1)*exp(-pi*i*a/6)*gamma(a/3)*gamma(2*(a+1)/3)/(gamma(2/3)*gamma(a))",
        {"a > 0", "1/2-a > 0", "2*(a+1)/3 notnpi"}));

    reg.push_back(make_template(
        TheoremId::K2, {"a"}, "a+1/2,1/2-a", "1-a", "(1-sqrt(2))/2",
        "sqrt(pi)*2^(2*a-1/4)*(sqrt(2)-1)^a*gamma(1-a)/(gamma(5/8-a/2)*gamma(7/8-a/2))",
        {"1-a > 0", "5/8-a/2 > 0", "7/8-a/2 > 0"}));

    reg.push_back(make_template(
        TheoremId::K3, {"a"}, "1/2,1/2-a,a+1/2", "1-a,a+1", "1",
        "pi^2*a/sin(pi*a)/(gamma(3/4)^2*gamma(3/4-a)*gamma(a+3/4))",
        {"a > 0", "3/4-a > 0"}));

    reg.push_back(make_template(
        TheoremId::K4, {"a"}, "1/2,1/2-a,a+1/2", "1-a,a+1", "-1",
        "pi^2*a/sin(pi*a)/"
        "(sqrt(2)*gamma(5/8-a/2)*gamma(7/8-a/2)*gamma(a/2+5/8)*gamma(a/2+7/8))",
        {"a > 0", "5/8-a/2 > 0", "1-a notnpi"}));

    reg.push_back(make_template(
        TheoremId::ArcsinSquare, {"z"}, "1,1,1", "3/2,2", "z",
        "asin(sqrt(z))^2/z", {},
        /*arg_free=*/true, /*arg_any=*/true));

    return reg;
}

} // namespace

const std::vector<TheoremTemplate>& theorem_registry() {
    static const std::vector<TheoremTemplate> reg = build_registry();
    return reg;
}

const TheoremTemplate& theorem(TheoremId id) {
    for (const TheoremTemplate& t : theorem_registry())
        if (t.id == id) return t;
    throw ValidationError("unknown theorem id");
}

// --- application --------------------------------------------------------------------

namespace {

// rough runtime pole screen on a fully instantiated closed form
void check_poles(const Expr& e) {
    const ExprNode& n = e.node();
    if (n.kind == Kind::Gamma) {
        auto r = canonical(n.children[0]).as_rational();
        if (r && r->is_nonpositive_integer())
            throw PoleInRHS("gamma pole at " + r->to_string());
    }
    if (n.kind == Kind::Sin) {
        // csc poles show up as sin(pi * integer) in a denominator
        Expr c = canonical(n.children[0]);
        if (c.kind() == Kind::Mul) {
            Rational coef(1);
            bool has_pi = false, clean = true;
            for (const Expr& f : c.node().children) {
                if (f.kind() == Kind::Pi) has_pi = true;
                else if (auto rr = f.as_rational()) coef *= *rr;
                else clean = false;
            }
            if (clean && has_pi && coef.is_integer())
                throw PoleInRHS("sin(pi n) vanishes in a denominator");
        }
    }
    for (const Expr& c : n.children) check_poles(c);
    for (const Expr& c : n.hyp_upper) check_poles(c);
    for (const Expr& c : n.hyp_lower) check_poles(c);
}

} // namespace

Identity apply_theorem(TheoremId tid, const std::map<std::string, Rational>& binding,
                       const Expr* argument) {
    const TheoremTemplate& t = theorem(tid);
    std::map<std::string, Rational> full = binding;
    std::map<std::string, Expr> expr_binding;
    if (t.argument_any_expr) {
        if (!argument) throw SideConditionViolated(t.name + " needs an explicit argument");
        expr_binding["z"] = *argument;
    }
    for (const std::string& s : t.symbols) {
        if (expr_binding.count(s)) continue;
        if (!full.count(s))
            throw SideConditionViolated(t.name + ": missing binding for symbol " + s);
    }
    for (const Constraint& c : t.side_conditions) {
        bool involves_expr_bound = false;
        for (const auto& [sym, v] : c.coeffs)
            if (expr_binding.count(sym)) involves_expr_bound = true;
        if (involves_expr_bound) continue;
        if (!c.satisfied(full))
            throw SideConditionViolated(t.name + ": side condition failed: " + c.to_text());
    }

    auto instantiate = [&](const Expr& e) {
        Expr x = substitute(e, full);
        if (!expr_binding.empty()) x = substitute_exprs(x, expr_binding);
        return canonical(x);
    };
    std::vector<Expr> up, lo;
    for (const Expr& e : t.upper) up.push_back(instantiate(e));
    for (const Expr& e : t.lower) lo.push_back(instantiate(e));
    Expr arg = instantiate(t.argument);
    Expr rhs = instantiate(t.rhs);
    check_poles(rhs);

    // reject invalid lower parameters eagerly
    for (const Expr& e : lo) {
        auto r = e.as_rational();
        if (r && r->is_nonpositive_integer())
            throw SideConditionViolated(t.name + ": instantiated lower parameter is a nonpositive integer");
    }

    Identity id;
    id.name = t.name;
    id.lhs = Expr::hyp(std::move(up), std::move(lo), std::move(arg));
    id.rhs = std::move(rhs);
    id.provenance = std::string("theorem/") + t.name;
    id.validate();
    return id;
}

// --- matching -------------------------------------------------------------------------

namespace {

struct LinearSystem {
    // reduced rows: affine forms constrained to equal zero
    std::vector<Affine> rows;

    bool add_equation(Affine eq) {
        for (const Affine& r : rows) {
            // eliminate the leading symbol of r from eq
            const auto& lead = *r.coeffs.begin();
            auto it = eq.coeffs.find(lead.first);
            if (it == eq.coeffs.end()) continue;
            Rational f = it->second / lead.second;
            for (const auto& [s, v] : r.coeffs) {
                eq.coeffs[s] -= f * v;
                if (eq.coeffs[s].is_zero()) eq.coeffs.erase(s);
            }
            eq.constant -= f * r.constant;
        }
        if (eq.coeffs.empty()) return eq.constant.is_zero();
        // normalize on the leading symbol
        rows.push_back(std::move(eq));
        return true;
    }

    // unique solution over the given symbols, if fully determined
    std::optional<std::map<std::string, Rational>> solve(const std::vector<std::string>& symbols) {
        std::map<std::string, Rational> sol;
        // back-substitution: iterate until fixed point
        std::vector<Affine> pending = rows;
        bool progress = true;
        while (progress && !pending.empty()) {
            progress = false;
            for (std::size_t i = 0; i < pending.size();) {
                Affine& r = pending[i];
                for (auto it = r.coeffs.begin(); it != r.coeffs.end();) {
                    auto s = sol.find(it->first);
                    if (s != sol.end()) {
                        r.constant += it->second * s->second;
                        it = r.coeffs.erase(it);
                    } else {
                        ++it;
                    }
                }
                if (r.coeffs.empty()) {
                    if (!r.constant.is_zero()) return std::nullopt;
                    pending.erase(pending.begin() + static_cast<long>(i));
                    progress = true;
                } else if (r.coeffs.size() == 1) {
                    const auto& [sym, coef] = *r.coeffs.begin();
                    sol[sym] = -r.constant / coef;
                    pending.erase(pending.begin() + static_cast<long>(i));
                    progress = true;
                } else {
                    ++i;
                }
            }
        }
        if (!pending.empty()) return std::nullopt;
        for (const std::string& s : symbols)
            if (!sol.count(s)) return std::nullopt;
        return sol;
    }
};

bool args_equal(const Expr& a, const Expr& b) {
    if (equal_canonical(a, b)) return true;
    try {
        NumContext ctx(Precision(48));
        CBall va = eval_expression(ctx, a, {});
        CBall vb = eval_expression(ctx, b, {});
        CBall d = ctx.sub(va, vb);
        Mag upper = ctx.abs_upper(d);
        return upper.log10() < -40.0;
    } catch (const Error&) {
        return false;
    }
}

void match_template(const TheoremTemplate& t, const HypSeries& s,
                    std::vector<MatchResult>& out) {
    if (t.upper.size() != s.upper.size() || t.lower.size() != s.lower.size()) return;

    std::map<std::string, Rational> arg_binding;
    Expr arg_expr;
    if (t.argument_any_expr) {
        // any nonzero argument; the closed form divides by it
        try {
            NumContext ctx(Precision(32));
            CBall z = eval_expression(ctx, s.argument, {});
            if (ctx.abs_lower_d(z) <= 1e-25) return;
        } catch (const Error&) {
            return;
        }
        arg_expr = s.argument;
    } else if (t.argument_free) {
        auto zr = canonical(s.argument).as_rational();
        if (!zr) return;
        arg_binding["z"] = *zr;
    } else {
        if (!args_equal(t.argument, s.argument)) return;
    }

    std::vector<Affine> up_aff, lo_aff;
    for (const Expr& e : t.upper) {
        auto a = affine_of(e);
        if (!a) return;
        up_aff.push_back(*a);
    }
    for (const Expr& e : t.lower) {
        auto a = affine_of(e);
        if (!a) return;
        lo_aff.push_back(*a);
    }

    std::vector<std::string> solve_symbols;
    for (const std::string& sym : t.symbols)
        if (!arg_binding.count(sym) && !(t.argument_any_expr && sym == "z"))
            solve_symbols.push_back(sym);

    std::vector<int> up_assign(t.upper.size(), -1), lo_assign(t.lower.size(), -1);
    std::vector<bool> up_used(s.upper.size(), false), lo_used(s.lower.size(), false);
    std::vector<std::map<std::string, Rational>> found;

    // backtracking assignment of template slots to series entries with
    // incremental consistency filtering via a full solve at the leaves
    auto try_complete = [&]() {
        LinearSystem sys;
        bool ok = true;
        auto feed = [&](const std::vector<Affine>& aff, const std::vector<int>& assign,
                        const ParamList& vals) {
            for (std::size_t i = 0; i < aff.size() && ok; ++i) {
                Affine eq = aff[i];
                eq.constant -= vals[static_cast<std::size_t>(assign[i])];
                for (const auto& [sym, v] : arg_binding) {
                    auto it = eq.coeffs.find(sym);
                    if (it != eq.coeffs.end()) {
                        eq.constant += it->second * v;
                        eq.coeffs.erase(it);
                    }
                }
                if (!sys.add_equation(std::move(eq))) ok = false;
            }
        };
        feed(up_aff, up_assign, s.upper);
        feed(lo_aff, lo_assign, s.lower);
        if (!ok) return;
        auto sol = sys.solve(solve_symbols);
        if (!sol) return;
        std::map<std::string, Rational> full = *sol;
        for (const auto& [k, v] : arg_binding) full[k] = v;
        // side conditions
        for (const Constraint& c : t.side_conditions) {
            bool skip = false;
            for (const auto& [sym, v] : c.coeffs)
                if (t.argument_any_expr && sym == "z") skip = true;
            if (skip) continue;
            if (!c.satisfied(full)) return;
        }
        // verify the instantiated parameter lists agree as multisets
        for (const auto& existing : found) {
            bool same = true;
            for (const auto& [k, v] : full)
                if (existing.at(k) != v) { same = false; break; }
            if (same) return;
        }
        found.push_back(full);
    };

    // order lower slots first (usually more constrained), then uppers
    std::function<void(std::size_t)> rec_up = [&](std::size_t i) {
        if (i == t.upper.size()) {
            try_complete();
            return;
        }
        for (std::size_t j = 0; j < s.upper.size(); ++j) {
            if (up_used[j]) continue;
            // quick reject: constant template slots must match exactly
            if (up_aff[i].is_constant() && up_aff[i].constant != s.upper[j]) continue;
            up_used[j] = true;
            up_assign[i] = static_cast<int>(j);
            rec_up(i + 1);
            up_used[j] = false;
        }
    };
    std::function<void(std::size_t)> rec_lo = [&](std::size_t i) {
        if (i == t.lower.size()) {
            rec_up(0);
            return;
        }
        for (std::size_t j = 0; j < s.lower.size(); ++j) {
            if (lo_used[j]) continue;
            if (lo_aff[i].is_constant() && lo_aff[i].constant != s.lower[j]) continue;
            lo_used[j] = true;
            lo_assign[i] = static_cast<int>(j);
            rec_lo(i + 1);
            lo_used[j] = false;
        }
    };
    rec_lo(0);

    for (const auto& binding : found) {
        MatchResult m;
        m.theorem = t.id;
        m.binding = binding;
        if (t.argument_any_expr) m.argument_binding = arg_expr;
        try {
            Identity id = apply_theorem(t.id, binding, t.argument_any_expr ? &arg_expr : nullptr);
            // the matched series must reproduce the input up to permutation
            HypSeries matched = hyp_from_expr(id.lhs);
            if (!multiset_equal(matched.upper, s.upper) ||
                !multiset_equal(matched.lower, s.lower))
                continue;
            m.closed_form = id.rhs;
        } catch (const Error&) {
            continue;
        }
        m.side_conditions = t.side_conditions;
        out.push_back(std::move(m));
    }
}

} // namespace

std::vector<MatchResult> match_closed_form(const HypSeries& s) {
    std::vector<MatchResult> out;
    for (const TheoremTemplate& t : theorem_registry()) match_template(t, s, out);
    // deterministic order: registry order, then lexicographic binding
    std::stable_sort(out.begin(), out.end(), [](const MatchResult& x, const MatchResult& y) {
        if (x.theorem != y.theorem) return static_cast<int>(x.theorem) < static_cast<int>(y.theorem);
        auto xi = x.binding.begin();
        auto yi = y.binding.begin();
        for (; xi != x.binding.end() && yi != y.binding.end(); ++xi, ++yi) {
            if (xi->first != yi->first) return xi->first < yi->first;
            if (xi->second != yi->second) return xi->second < yi->second;
        }
        return false;
    });
    return out;
}

namespace {

Expr sum_walk(const Expr& e, std::vector<TheoremId>& fired) {
    const ExprNode& n = e.node();
    if (n.kind == Kind::Hyp) {
        bool concrete = true;
        for (const Expr& c : n.hyp_upper)
            if (!canonical(c).as_rational()) concrete = false;
        for (const Expr& c : n.hyp_lower)
            if (!canonical(c).as_rational()) concrete = false;
        if (concrete) {
            try {
                HypSeries s = hyp_from_expr(e);
                auto matches = match_closed_form(s);
                if (!matches.empty()) {
                    fired.push_back(matches.front().theorem);
                    return matches.front().closed_form;
                }
            } catch (const Error&) {
            }
        }
        return e;
    }
    bool touched = false;
    std::vector<Expr> kids;
    kids.reserve(n.children.size());
    for (const Expr& c : n.children) {
        Expr w = sum_walk(c, fired);
        if (w.ptr() != c.ptr()) touched = true;
        kids.push_back(std::move(w));
    }
    if (!touched) return e;
    auto nn = std::make_shared<ExprNode>();
    nn->kind = n.kind;
    nn->value = n.value;
    nn->symbol = n.symbol;
    nn->polylog_order = n.polylog_order;
    nn->root_n = n.root_n;
    nn->root_k = n.root_k;
    nn->zeta_s = n.zeta_s;
    nn->children = std::move(kids);
    nn->hyp_upper = n.hyp_upper;
    nn->hyp_lower = n.hyp_lower;
    return Expr(nn);
}

} // namespace

SummedIdentity sum_dist_rhs(const Identity& id) {
    SummedIdentity out;
    out.identity = id;
    out.identity.rhs = canonical(sum_walk(id.rhs, out.fired));
    if (!out.fired.empty()) {
        std::ostringstream prov;
        prov << id.provenance << " + summed[";
        for (std::size_t i = 0; i < out.fired.size(); ++i) {
            if (i) prov << ",";
            prov << theorem_name(out.fired[i]);
        }
        prov << "]";
        out.identity.provenance = prov.str();
    }
    return out;
}

} // namespace hyperdist
