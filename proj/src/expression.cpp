#include "hyperdist/expression.hpp"

#include "hyperdist/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hyperdist {

const char* kind_name(Kind k) {
    switch (k) {
    case Kind::IntLit: return "int";
    case Kind::RationalLit: return "rat";
    case Kind::SymbolRef: return "sym";
    case Kind::ImaginaryUnit: return "i";
    case Kind::Pi: return "pi";
    case Kind::CatalanC: return "catalan";
    case Kind::Add: return "add";
    case Kind::Mul: return "mul";
    case Kind::Pow: return "pow";
    case Kind::Neg: return "neg";
    case Kind::Log: return "log";
    case Kind::Exp: return "exp";
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::Sinh: return "sinh";
    case Kind::Cosh: return "cosh";
    case Kind::ArcSin: return "asin";
    case Kind::ArcTan: return "atan";
    case Kind::ArcSinh: return "asinh";
    case Kind::ArcTanh: return "atanh";
    case Kind::Gamma: return "gamma";
    case Kind::Zeta: return "zeta";
    case Kind::PolyLog: return "polylog";
    case Kind::EllipticK: return "elliptic_k";
    case Kind::EllipticE: return "elliptic_e";
    case Kind::RootOfUnity: return "root_of_unity";
    case Kind::Hyp: return "hyp";
    }
    return "?";
}

Kind Expr::kind() const { return node_->kind; }

namespace {

std::shared_ptr<ExprNode> make(Kind k) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    return n;
}

} // namespace

Expr Expr::integer(long v) {
    auto n = make(Kind::IntLit);
    n->value = Rational(v);
    return Expr(n);
}

Expr Expr::integer(const Rational& v) {
    auto n = make(Kind::IntLit);
    n->value = v;
    return Expr(n);
}

Expr Expr::rational(const Rational& v) {
    if (v.is_integer()) return integer(v);
    auto n = make(Kind::RationalLit);
    n->value = v;
    return Expr(n);
}

Expr Expr::symbol(const std::string& name) {
    auto n = make(Kind::SymbolRef);
    n->symbol = name;
    return Expr(n);
}

Expr Expr::imaginary() { return Expr(make(Kind::ImaginaryUnit)); }
Expr Expr::pi() { return Expr(make(Kind::Pi)); }
Expr Expr::catalan() { return Expr(make(Kind::CatalanC)); }

Expr Expr::add(std::vector<Expr> terms) {
    auto n = make(Kind::Add);
    n->children = std::move(terms);
    return Expr(n);
}

Expr Expr::mul(std::vector<Expr> factors) {
    auto n = make(Kind::Mul);
    n->children = std::move(factors);
    return Expr(n);
}

Expr Expr::pow(Expr base, Expr exponent) {
    auto n = make(Kind::Pow);
    n->children = {std::move(base), std::move(exponent)};
    return Expr(n);
}

Expr Expr::pow(Expr base, const Rational& exponent) {
    return pow(std::move(base), rational(exponent));
}

Expr Expr::neg(Expr x) {
    auto n = make(Kind::Neg);
    n->children = {std::move(x)};
    return Expr(n);
}

Expr Expr::sub(Expr a, Expr b) { return add({std::move(a), neg(std::move(b))}); }

Expr Expr::div(Expr a, Expr b) {
    return mul({std::move(a), pow(std::move(b), Rational(-1))});
}

Expr Expr::fn(Kind k, Expr arg) {
    auto n = make(k);
    n->children = {std::move(arg)};
    return Expr(n);
}

Expr Expr::zeta(long s) {
    auto n = make(Kind::Zeta);
    n->zeta_s = s;
    return Expr(n);
}

Expr Expr::polylog(int order, Expr arg) {
    auto n = make(Kind::PolyLog);
    n->polylog_order = order;
    n->children = {std::move(arg)};
    return Expr(n);
}

Expr Expr::elliptic_k(Expr m) { return fn(Kind::EllipticK, std::move(m)); }
Expr Expr::elliptic_e(Expr m) { return fn(Kind::EllipticE, std::move(m)); }

Expr Expr::root_of_unity(long n_, long k_) {
    if (n_ <= 0) throw DomainError("root_of_unity order must be positive");
    auto n = make(Kind::RootOfUnity);
    n->root_n = n_;
    n->root_k = ((k_ % n_) + n_) % n_;
    return Expr(n);
}

Expr Expr::hyp(std::vector<Expr> upper, std::vector<Expr> lower, Expr arg) {
    auto n = make(Kind::Hyp);
    n->hyp_upper = std::move(upper);
    n->hyp_lower = std::move(lower);
    n->children = {std::move(arg)};
    return Expr(n);
}

std::optional<Rational> Expr::as_rational() const {
    if (!node_) return std::nullopt;
    if (node_->kind == Kind::IntLit || node_->kind == Kind::RationalLit) return node_->value;
    return std::nullopt;
}

// --- total order ---------------------------------------------------------------

int compare(const Expr& a, const Expr& b) {
    const ExprNode& x = a.node();
    const ExprNode& y = b.node();
    Kind kx = x.kind == Kind::IntLit ? Kind::RationalLit : x.kind;
    Kind ky = y.kind == Kind::IntLit ? Kind::RationalLit : y.kind;
    if (kx != ky) return kx < ky ? -1 : 1;
    switch (kx) {
    case Kind::RationalLit: return x.value.cmp(y.value);
    case Kind::SymbolRef:
        return x.symbol < y.symbol ? -1 : (x.symbol == y.symbol ? 0 : 1);
    case Kind::Zeta: return x.zeta_s < y.zeta_s ? -1 : (x.zeta_s == y.zeta_s ? 0 : 1);
    case Kind::RootOfUnity:
        if (x.root_n != y.root_n) return x.root_n < y.root_n ? -1 : 1;
        if (x.root_k != y.root_k) return x.root_k < y.root_k ? -1 : 1;
        return 0;
    case Kind::PolyLog:
        if (x.polylog_order != y.polylog_order)
            return x.polylog_order < y.polylog_order ? -1 : 1;
        break;
    case Kind::Hyp: {
        if (x.hyp_upper.size() != y.hyp_upper.size())
            return x.hyp_upper.size() < y.hyp_upper.size() ? -1 : 1;
        if (x.hyp_lower.size() != y.hyp_lower.size())
            return x.hyp_lower.size() < y.hyp_lower.size() ? -1 : 1;
        for (std::size_t i = 0; i < x.hyp_upper.size(); ++i)
            if (int c = compare(x.hyp_upper[i], y.hyp_upper[i])) return c;
        for (std::size_t i = 0; i < x.hyp_lower.size(); ++i)
            if (int c = compare(x.hyp_lower[i], y.hyp_lower[i])) return c;
        break;
    }
    default: break;
    }
    if (x.children.size() != y.children.size())
        return x.children.size() < y.children.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.children.size(); ++i)
        if (int c = compare(x.children[i], y.children[i])) return c;
    return 0;
}

// --- canonicalization ------------------------------------------------------------

namespace {

Expr canon(const Expr& e);

void flatten_into(Kind k, const Expr& e, std::vector<Expr>& out) {
    if (e.kind() == k) {
        for (const Expr& c : e.node().children) flatten_into(k, c, out);
    } else {
        out.push_back(e);
    }
}

Expr canon_add(std::vector<Expr> kids) {
    std::vector<Expr> flat;
    for (const Expr& c : kids) flatten_into(Kind::Add, c, flat);
    Rational acc(0);
    std::vector<Expr> rest;
    for (const Expr& c : flat) {
        if (auto r = c.as_rational())
            acc += *r;
        else
            rest.push_back(c);
    }
    std::sort(rest.begin(), rest.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
    if (!acc.is_zero() || rest.empty()) rest.insert(rest.begin(), Expr::rational(acc));
    if (rest.size() == 1) return rest[0];
    return Expr::add(std::move(rest));
}

Expr canon_mul(std::vector<Expr> kids) {
    std::vector<Expr> flat;
    for (const Expr& c : kids) flatten_into(Kind::Mul, c, flat);
    Rational acc(1);
    std::vector<Expr> rest;
    for (const Expr& c : flat) {
        if (auto r = c.as_rational())
            acc *= *r;
        else
            rest.push_back(c);
    }
    if (acc.is_zero()) return Expr::rational(Rational(0));
    std::sort(rest.begin(), rest.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
    if (acc != Rational(1) || rest.empty()) rest.insert(rest.begin(), Expr::rational(acc));
    if (rest.size() == 1) return rest[0];
    return Expr::mul(std::move(rest));
}

Expr canon(const Expr& e) {
    const ExprNode& n = e.node();
    switch (n.kind) {
    case Kind::IntLit:
    case Kind::RationalLit:
        return Expr::rational(n.value);
    case Kind::SymbolRef:
    case Kind::ImaginaryUnit:
    case Kind::Pi:
    case Kind::CatalanC:
    case Kind::Zeta:
        return e;
    case Kind::RootOfUnity: {
        long g = std::gcd(n.root_n, n.root_k == 0 ? n.root_n : n.root_k);
        long nn = n.root_n / g, kk = n.root_k / g;
        if (nn == 1) return Expr::rational(Rational(1));
        if (nn == 2) return Expr::rational(Rational(-1)); // kk == 1 after reduction
        if (nn == 4 && kk == 1) return Expr::imaginary();
        if (nn == 4 && kk == 3) return Expr::mul({Expr::rational(Rational(-1)), Expr::imaginary()});
        return Expr::root_of_unity(nn, kk);
    }
    case Kind::Neg:
        return canon_mul({Expr::rational(Rational(-1)), canon(n.children[0])});
    case Kind::Add: {
        std::vector<Expr> kids;
        kids.reserve(n.children.size());
        for (const Expr& c : n.children) kids.push_back(canon(c));
        return canon_add(std::move(kids));
    }
    case Kind::Mul: {
        std::vector<Expr> kids;
        kids.reserve(n.children.size());
        for (const Expr& c : n.children) kids.push_back(canon(c));
        return canon_mul(std::move(kids));
    }
    case Kind::Pow: {
        Expr b = canon(n.children[0]);
        Expr x = canon(n.children[1]);
        auto rb = b.as_rational();
        auto rx = x.as_rational();
        if (rx) {
            if (rx->is_zero()) return Expr::rational(Rational(1));
            if (*rx == Rational(1)) return b;
            if (rb && rx->is_integer() && rx->fits_long()) {
                long ee = rx->to_long();
                if (!(rb->is_zero() && ee < 0) && (ee > -64 && ee < 64))
                    return Expr::rational(rb->pow_int(ee));
            }
            if (rb && *rb == Rational(1)) return Expr::rational(Rational(1));
        }
        return Expr::pow(std::move(b), std::move(x));
    }
    case Kind::PolyLog:
        return Expr::polylog(n.polylog_order, canon(n.children[0]));
    case Kind::Hyp: {
        std::vector<Expr> up, lo;
        up.reserve(n.hyp_upper.size());
        lo.reserve(n.hyp_lower.size());
        for (const Expr& c : n.hyp_upper) up.push_back(canon(c));
        for (const Expr& c : n.hyp_lower) lo.push_back(canon(c));
        return Expr::hyp(std::move(up), std::move(lo), canon(n.children[0]));
    }
    default: {
        // unary functions
        return Expr::fn(n.kind, canon(n.children[0]));
    }
    }
}

} // namespace

Expr canonical(const Expr& e) { return canon(e); }

bool equal_canonical(const Expr& a, const Expr& b) {
    return compare(canonical(a), canonical(b)) == 0;
}

// --- symbols ----------------------------------------------------------------------

namespace {

void collect_symbols(const Expr& e, std::set<std::string>& out) {
    const ExprNode& n = e.node();
    if (n.kind == Kind::SymbolRef) out.insert(n.symbol);
    for (const Expr& c : n.children) collect_symbols(c, out);
    for (const Expr& c : n.hyp_upper) collect_symbols(c, out);
    for (const Expr& c : n.hyp_lower) collect_symbols(c, out);
}

} // namespace

std::set<std::string> free_symbols(const Expr& e) {
    std::set<std::string> s;
    collect_symbols(e, s);
    return s;
}

Expr substitute(const Expr& e, const std::map<std::string, Rational>& bindings) {
    const ExprNode& n = e.node();
    if (n.kind == Kind::SymbolRef) {
        auto it = bindings.find(n.symbol);
        if (it == bindings.end()) return e;
        return Expr::rational(it->second);
    }
    bool touched = false;
    auto subst_vec = [&](const std::vector<Expr>& in) {
        std::vector<Expr> out;
        out.reserve(in.size());
        for (const Expr& c : in) {
            Expr s = substitute(c, bindings);
            if (s.ptr() != c.ptr()) touched = true;
            out.push_back(std::move(s));
        }
        return out;
    };
    std::vector<Expr> kids = subst_vec(n.children);
    std::vector<Expr> up = subst_vec(n.hyp_upper);
    std::vector<Expr> lo = subst_vec(n.hyp_lower);
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
    nn->hyp_upper = std::move(up);
    nn->hyp_lower = std::move(lo);
    return Expr(nn);
}

Expr substitute_exprs(const Expr& e, const std::map<std::string, Expr>& bindings) {
    const ExprNode& n = e.node();
    if (n.kind == Kind::SymbolRef) {
        auto it = bindings.find(n.symbol);
        if (it == bindings.end()) return e;
        return it->second;
    }
    bool touched = false;
    auto subst_vec = [&](const std::vector<Expr>& in) {
        std::vector<Expr> out;
        out.reserve(in.size());
        for (const Expr& c : in) {
            Expr s = substitute_exprs(c, bindings);
            if (s.ptr() != c.ptr()) touched = true;
            out.push_back(std::move(s));
        }
        return out;
    };
    std::vector<Expr> kids = subst_vec(n.children);
    std::vector<Expr> up = subst_vec(n.hyp_upper);
    std::vector<Expr> lo = subst_vec(n.hyp_lower);
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
    nn->hyp_upper = std::move(up);
    nn->hyp_lower = std::move(lo);
    return Expr(nn);
}

bool contains_hyp(const Expr& e) {
    const ExprNode& n = e.node();
    if (n.kind == Kind::Hyp) return true;
    for (const Expr& c : n.children)
        if (contains_hyp(c)) return true;
    return false;
}

// --- printing ---------------------------------------------------------------------

namespace {

void print(const Expr& e, std::ostream& os, int parent_prec);

void print_list(const std::vector<Expr>& v, std::ostream& os) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        print(v[i], os, 0);
    }
}

// precedence: 1 add, 2 mul, 3 pow/unary
void print(const Expr& e, std::ostream& os, int parent_prec) {
    const ExprNode& n = e.node();
    switch (n.kind) {
    case Kind::IntLit:
    case Kind::RationalLit: {
        bool neg = n.value.sign() < 0 || !n.value.is_integer();
        if (neg && parent_prec >= 2) os << "(" << n.value << ")";
        else os << n.value;
        return;
    }
    case Kind::SymbolRef: os << n.symbol; return;
    case Kind::ImaginaryUnit: os << "i"; return;
    case Kind::Pi: os << "pi"; return;
    case Kind::CatalanC: os << "catalan"; return;
    case Kind::Zeta: os << "zeta(" << n.zeta_s << ")"; return;
    case Kind::RootOfUnity:
        os << "omega(" << n.root_n << "," << n.root_k << ")";
        return;
    case Kind::Add: {
        if (parent_prec >= 2) os << "(";
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) os << " + ";
            print(n.children[i], os, 1);
        }
        if (parent_prec >= 2) os << ")";
        return;
    }
    case Kind::Mul: {
        if (parent_prec >= 3) os << "(";
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) os << "*";
            print(n.children[i], os, 2);
        }
        if (parent_prec >= 3) os << ")";
        return;
    }
    case Kind::Pow: {
        bool wrap = n.children[0].kind() == Kind::Neg || n.children[0].kind() == Kind::Pow;
        if (wrap) os << "(";
        print(n.children[0], os, 3);
        if (wrap) os << ")";
        os << "^";
        bool wrap_e = n.children[1].kind() == Kind::Neg || n.children[1].kind() == Kind::Pow;
        if (wrap_e) os << "(";
        print(n.children[1], os, 3);
        if (wrap_e) os << ")";
        return;
    }
    case Kind::Neg:
        os << "-";
        print(n.children[0], os, 3);
        return;
    case Kind::PolyLog:
        os << "Li" << n.polylog_order << "(";
        print(n.children[0], os, 0);
        os << ")";
        return;
    case Kind::EllipticK:
    case Kind::EllipticE:
        os << (n.kind == Kind::EllipticK ? "K(" : "E(");
        print(n.children[0], os, 0);
        os << ")";
        return;
    case Kind::Hyp: {
        os << n.hyp_upper.size() << "F" << n.hyp_lower.size() << "(";
        print_list(n.hyp_upper, os);
        os << ";";
        print_list(n.hyp_lower, os);
        os << ";";
        print(n.children[0], os, 0);
        os << ")";
        return;
    }
    default:
        os << kind_name(n.kind) << "(";
        print(n.children[0], os, 0);
        os << ")";
        return;
    }
}

} // namespace

std::string to_text(const Expr& e) {
    std::ostringstream os;
    print(e, os, 0);
    return os.str();
}

} // namespace hyperdist
