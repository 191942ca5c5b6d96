#include "hyperdist/series.hpp"

#include "hyperdist/errors.hpp"
#include "hyperdist/evaluator.hpp"
#include "hyperdist/identity.hpp"
#include "hyperdist/numctx.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <sstream>

namespace hyperdist {

bool multiset_equal(const ParamList& a, const ParamList& b) {
    if (a.size() != b.size()) return false;
    ParamList x = a, y = b;
    auto lt = [](const Rational& p, const Rational& q) { return p < q; };
    std::sort(x.begin(), x.end(), lt);
    std::sort(y.begin(), y.end(), lt);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) return false;
    return true;
}

void cancel_common(ParamList& upper, ParamList& lower) {
    ParamList new_upper;
    std::vector<bool> used(lower.size(), false);
    for (const Rational& u : upper) {
        bool cancelled = false;
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (!used[j] && lower[j] == u) {
                used[j] = true;
                cancelled = true;
                break;
            }
        }
        if (!cancelled) new_upper.push_back(u);
    }
    ParamList new_lower;
    for (std::size_t j = 0; j < lower.size(); ++j)
        if (!used[j]) new_lower.push_back(lower[j]);
    upper = std::move(new_upper);
    lower = std::move(new_lower);
}

bool valid_lower_params(const ParamList& lower) {
    for (const Rational& b : lower)
        if (b.is_nonpositive_integer()) return false;
    return true;
}

HypSeries::HypSeries(ParamList up, ParamList lo, Expr z)
    : upper(std::move(up)), lower(std::move(lo)), argument(std::move(z)) {
    if (!valid_lower_params(lower))
        throw ValidationError("series has a nonpositive integer lower parameter");
    if (!argument.valid()) throw ValidationError("series argument missing");
}

bool HypSeries::terminating() const {
    for (const Rational& a : upper)
        if (a.is_nonpositive_integer()) return true;
    return false;
}

long HypSeries::terminating_order() const {
    long best = -1;
    for (const Rational& a : upper) {
        if (a.is_nonpositive_integer()) {
            long m = (-a).to_long();
            if (best < 0 || m < best) best = m;
        }
    }
    return best;
}

std::string HypSeries::to_text() const { return hyperdist::to_text(hyp_expr(*this)); }

HypSeries cancel_parameters(const HypSeries& s) {
    ParamList u = s.upper, l = s.lower;
    cancel_common(u, l);
    return HypSeries(std::move(u), std::move(l), s.argument);
}

const char* series_class_name(SeriesClass c) {
    switch (c) {
    case SeriesClass::terminating: return "terminating";
    case SeriesClass::inside_disk: return "inside_disk";
    case SeriesClass::boundary_abs: return "boundary_abs";
    case SeriesClass::boundary_cond: return "boundary_cond";
    case SeriesClass::divergent: return "divergent";
    }
    return "?";
}

Rational convergence_excess(const HypSeries& s) {
    Rational e(0);
    for (const Rational& b : s.lower) e += b;
    for (const Rational& a : s.upper) e -= a;
    return e;
}

namespace {

// |z| relative to 1: -1 below, 0 on the circle, +1 outside; uses exact
// structure when available, numeric balls otherwise
int modulus_vs_one(const Expr& arg, NumContext& ctx, bool& exactly_one_known) {
    exactly_one_known = false;
    Expr c = canonical(arg);
    if (auto r = c.as_rational()) {
        Rational a = r->abs();
        int cm = a.cmp(Rational(1));
        exactly_one_known = true;
        return cm;
    }
    // structural pass: product of rational, root_of_unity, pow(rational, rational)
    std::vector<Expr> factors;
    if (c.kind() == Kind::Mul)
        factors = c.node().children;
    else
        factors = {c};
    Rational mod2_num(1); // |z|^(2L) accumulated exactly when possible
    long lcm_den = 1;
    std::vector<std::pair<Rational, Rational>> pow_parts; // (base>0, exponent)
    bool structural = true;
    for (const Expr& f : factors) {
        const ExprNode& n = f.node();
        if (auto r = f.as_rational()) {
            pow_parts.push_back({r->abs(), Rational(1)});
            if (r->is_zero()) { exactly_one_known = true; return -1; }
        } else if (n.kind == Kind::RootOfUnity || n.kind == Kind::ImaginaryUnit) {
            // modulus 1
        } else if (n.kind == Kind::Pow) {
            auto b = n.children[0].as_rational();
            auto e = n.children[1].as_rational();
            if (b && e && b->sign() > 0) {
                pow_parts.push_back({*b, *e});
            } else {
                structural = false;
                break;
            }
        } else {
            structural = false;
            break;
        }
    }
    if (structural) {
        // |z|^L = prod base^(exp L) with common denominator L
        for (auto& pp : pow_parts) {
            long d = 1;
            if (mpz_fits_slong_p(mpq_denref(pp.second.raw())))
                d = mpz_get_si(mpq_denref(pp.second.raw()));
            else { structural = false; break; }
            lcm_den = std::lcm(lcm_den, d);
        }
        if (structural && lcm_den <= (1 << 20)) {
            Rational prod(1);
            bool ok = true;
            for (auto& pp : pow_parts) {
                Rational e = pp.second * Rational(lcm_den);
                if (!e.fits_long()) { ok = false; break; }
                prod *= pp.first.pow_int(e.to_long());
            }
            if (ok) {
                exactly_one_known = true;
                (void)mod2_num;
                return prod.cmp(Rational(1));
            }
        }
    }
    (void)ctx;
    return 2; // sentinel: caller evaluates numerically
}

} // namespace

SeriesClass convergence_class(const HypSeries& s, NumContext& ctx) {
    if (s.terminating()) return SeriesClass::terminating;
    std::size_t p = s.p(), q = s.q();
    if (p <= q) return SeriesClass::inside_disk;
    if (p > q + 1) return SeriesClass::divergent;
    bool exact = false;
    int cmp = modulus_vs_one(s.argument, ctx, exact);
    if (!exact || cmp == 2) {
        // numeric: needs the argument to be evaluable
        CBall z = eval_expression(ctx, s.argument, {});
        double hi = ctx.abs_upper(z).to_double();
        double lo = ctx.abs_lower_d(z);
        double slack = std::max(1e-30, z.err.to_double() * 4);
        if (hi < 1.0 - slack) cmp = -1;
        else if (lo > 1.0 + slack) cmp = 1;
        else cmp = 0;
    }
    if (cmp < 0) return SeriesClass::inside_disk;
    if (cmp > 0) return SeriesClass::divergent;
    Rational excess = convergence_excess(s);
    if (excess > Rational(0)) return SeriesClass::boundary_abs;
    // z == 1 exactly?
    Expr c = canonical(s.argument);
    auto r = c.as_rational();
    bool z_is_one = r && *r == Rational(1);
    if (excess > Rational(-1) && !z_is_one) return SeriesClass::boundary_cond;
    return SeriesClass::divergent;
}

Rational series_coeff(const HypSeries& s, unsigned long k) {
    Rational num(1), den(1);
    for (const Rational& a : s.upper) num *= pochhammer(a, k);
    for (const Rational& b : s.lower) den *= pochhammer(b, k);
    den *= factorial(k);
    return num / den;
}

Expr series_term(const HypSeries& s, unsigned long k) {
    if (k == 0) return Expr::integer(1);
    Rational c = series_coeff(s, k);
    if (c.is_zero()) return Expr::integer(0);
    Expr zk = Expr::pow(s.argument, Expr::integer(static_cast<long>(k)));
    return canonical(Expr::mul({Expr::rational(c), zk}));
}

Expr hyp_expr(const HypSeries& s) {
    std::vector<Expr> up, lo;
    up.reserve(s.upper.size());
    lo.reserve(s.lower.size());
    for (const Rational& a : s.upper) up.push_back(Expr::rational(a));
    for (const Rational& b : s.lower) lo.push_back(Expr::rational(b));
    return Expr::hyp(std::move(up), std::move(lo), s.argument);
}

HypSeries hyp_from_expr(const Expr& e) {
    if (e.kind() != Kind::Hyp) throw ValidationError("expression is not a series node");
    const ExprNode& n = e.node();
    ParamList up, lo;
    for (const Expr& c : n.hyp_upper) {
        auto r = canonical(c).as_rational();
        if (!r) throw ValidationError("series upper parameter is not rational: " + to_text(c));
        up.push_back(*r);
    }
    for (const Expr& c : n.hyp_lower) {
        auto r = canonical(c).as_rational();
        if (!r) throw ValidationError("series lower parameter is not rational: " + to_text(c));
        lo.push_back(*r);
    }
    return HypSeries(std::move(up), std::move(lo), n.children[0]);
}

// --- constraints / identities ----------------------------------------------------

Rational Constraint::affine_value(const std::map<std::string, Rational>& binding) const {
    Rational v = constant;
    for (const auto& [sym, c] : coeffs) {
        auto it = binding.find(sym);
        if (it == binding.end()) throw ConstraintViolated("unbound symbol in constraint: " + sym);
        v += c * it->second;
    }
    return v;
}

bool Constraint::satisfied(const std::map<std::string, Rational>& binding) const {
    Rational v = affine_value(binding);
    switch (rel) {
    case Rel::Greater: return v > bound;
    case Rel::GreaterEq: return v >= bound;
    case Rel::NotEqual: return v != bound;
    case Rel::IsInteger: return v.is_integer();
    case Rel::NotNonposInt: return !v.is_nonpositive_integer();
    }
    return false;
}

std::string Constraint::to_text() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [sym, c] : coeffs) {
        if (!first) os << " + ";
        os << c.to_string() << "*" << sym;
        first = false;
    }
    if (!constant.is_zero() || first) {
        if (!first) os << " + ";
        os << constant;
    }
    switch (rel) {
    case Rel::Greater: os << " > " << bound; break;
    case Rel::GreaterEq: os << " >= " << bound; break;
    case Rel::NotEqual: os << " != " << bound; break;
    case Rel::IsInteger: os << " integer"; break;
    case Rel::NotNonposInt: os << " not a nonpositive integer"; break;
    }
    return os.str();
}

Constraint Constraint::greater(std::map<std::string, Rational> c, Rational k, Rational bound) {
    Constraint cc;
    cc.coeffs = std::move(c);
    cc.constant = std::move(k);
    cc.rel = Rel::Greater;
    cc.bound = std::move(bound);
    return cc;
}

Constraint Constraint::not_nonpos_int(std::map<std::string, Rational> c, Rational k) {
    Constraint cc;
    cc.coeffs = std::move(c);
    cc.constant = std::move(k);
    cc.rel = Rel::NotNonposInt;
    return cc;
}

void Identity::validate() const {
    std::set<std::string> syms = hyperdist::free_symbols(lhs);
    std::set<std::string> rsyms = hyperdist::free_symbols(rhs);
    syms.insert(rsyms.begin(), rsyms.end());
    for (const std::string& s : syms)
        if (std::find(free_symbols.begin(), free_symbols.end(), s) == free_symbols.end())
            throw ValidationError("identity '" + name + "': symbol '" + s +
                                  "' not declared among free symbols");
}

Identity substitute(const Identity& id, const std::map<std::string, Rational>& binding) {
    Identity out = id;
    out.lhs = hyperdist::substitute(id.lhs, binding);
    out.rhs = hyperdist::substitute(id.rhs, binding);
    std::vector<std::string> remaining;
    for (const std::string& s : id.free_symbols)
        if (!binding.count(s)) remaining.push_back(s);
    out.free_symbols = std::move(remaining);
    if (out.free_symbols.empty()) out.constraints.clear();
    return out;
}

} // namespace hyperdist
