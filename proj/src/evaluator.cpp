#include "hyperdist/evaluator.hpp"

#include "hyperdist/errors.hpp"
#include "hyperdist/series.hpp"
#include "hyperdist/series_eval.hpp"

namespace hyperdist {

CBall eval_expression(NumContext& ctx, const Expr& e,
                      const std::map<std::string, Rational>& bindings) {
    const ExprNode& n = e.node();
    auto ev = [&](const Expr& c) { return eval_expression(ctx, c, bindings); };
    switch (n.kind) {
    case Kind::IntLit:
    case Kind::RationalLit:
        return ctx.from_rational(n.value);
    case Kind::SymbolRef: {
        auto it = bindings.find(n.symbol);
        if (it == bindings.end()) throw UnboundSymbol("unbound symbol: " + n.symbol);
        return ctx.from_rational(it->second);
    }
    case Kind::ImaginaryUnit: return ctx.imag_unit();
    case Kind::Pi: return ctx.pi();
    case Kind::CatalanC: return ctx.catalan();
    case Kind::Add: {
        CBall acc = ctx.zero();
        for (const Expr& c : n.children) acc = ctx.add(acc, ev(c));
        return acc;
    }
    case Kind::Mul: {
        CBall acc = ctx.one();
        for (const Expr& c : n.children) {
            // keep exact rational factors exact
            if (auto r = c.as_rational()) acc = ctx.mul_rat(acc, *r);
            else acc = ctx.mul(acc, ev(c));
        }
        return acc;
    }
    case Kind::Pow: {
        if (auto r = n.children[1].as_rational()) return ctx.pow_rat(ev(n.children[0]), *r);
        return ctx.pow(ev(n.children[0]), ev(n.children[1]));
    }
    case Kind::Neg: return ctx.neg(ev(n.children[0]));
    case Kind::Log: return ctx.log(ev(n.children[0]));
    case Kind::Exp: return ctx.exp(ev(n.children[0]));
    case Kind::Sin: return ctx.sin(ev(n.children[0]));
    case Kind::Cos: return ctx.cos(ev(n.children[0]));
    case Kind::Sinh: return ctx.sinh(ev(n.children[0]));
    case Kind::Cosh: return ctx.cosh(ev(n.children[0]));
    case Kind::ArcSin: return ctx.asin(ev(n.children[0]));
    case Kind::ArcTan: return ctx.atan(ev(n.children[0]));
    case Kind::ArcSinh: return ctx.asinh(ev(n.children[0]));
    case Kind::ArcTanh: return ctx.atanh(ev(n.children[0]));
    case Kind::Gamma: return ctx.gamma(ev(n.children[0]));
    case Kind::Zeta: return ctx.zeta_int(n.zeta_s);
    case Kind::PolyLog: return ctx.polylog(n.polylog_order, ev(n.children[0]));
    case Kind::EllipticK: return ctx.elliptic_k(ev(n.children[0]));
    case Kind::EllipticE: return ctx.elliptic_e(ev(n.children[0]));
    case Kind::RootOfUnity: return ctx.root_of_unity(n.root_n, n.root_k);
    case Kind::Hyp: {
        Expr inst = bindings.empty() ? e : substitute(e, bindings);
        HypSeries s = hyp_from_expr(inst);
        return eval_pfq(s, ctx);
    }
    }
    throw EvaluationError("unknown node kind");
}

} // namespace hyperdist
