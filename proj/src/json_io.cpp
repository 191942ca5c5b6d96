#include "hyperdist/json_io.hpp"

#include "hyperdist/errors.hpp"

namespace hyperdist {

using nlohmann::json;

json expr_to_json(const Expr& e) {
    const ExprNode& n = e.node();
    json j;
    j["kind"] = kind_name(n.kind);
    switch (n.kind) {
    case Kind::IntLit:
    case Kind::RationalLit:
        j["value"] = n.value.to_string();
        return j;
    case Kind::SymbolRef:
        j["name"] = n.symbol;
        return j;
    case Kind::ImaginaryUnit:
    case Kind::Pi:
    case Kind::CatalanC:
        return j;
    case Kind::Zeta:
        j["s"] = n.zeta_s;
        return j;
    case Kind::RootOfUnity:
        j["n"] = n.root_n;
        j["k"] = n.root_k;
        return j;
    case Kind::PolyLog:
        j["order"] = n.polylog_order;
        j["args"] = json::array({expr_to_json(n.children[0])});
        return j;
    case Kind::Hyp: {
        json up = json::array(), lo = json::array();
        for (const Expr& c : n.hyp_upper) up.push_back(expr_to_json(c));
        for (const Expr& c : n.hyp_lower) lo.push_back(expr_to_json(c));
        j["upper"] = std::move(up);
        j["lower"] = std::move(lo);
        j["z"] = expr_to_json(n.children[0]);
        return j;
    }
    default: {
        json args = json::array();
        for (const Expr& c : n.children) args.push_back(expr_to_json(c));
        j["args"] = std::move(args);
        return j;
    }
    }
}

Expr expr_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("expression node must be an object with a 'kind'");
    std::string k = j.at("kind").get<std::string>();
    auto args = [&](std::size_t want) {
        std::vector<Expr> out;
        const json& a = j.at("args");
        for (const json& c : a) out.push_back(expr_from_json(c));
        if (want != 0 && out.size() != want)
            throw ParseError("node '" + k + "' expects " + std::to_string(want) + " children");
        return out;
    };
    if (k == "int" || k == "rat") {
        Rational v = Rational::parse(j.at("value").get<std::string>());
        return k == "int" ? Expr::integer(v) : Expr::rational(v);
    }
    if (k == "sym") return Expr::symbol(j.at("name").get<std::string>());
    if (k == "i") return Expr::imaginary();
    if (k == "pi") return Expr::pi();
    if (k == "catalan") return Expr::catalan();
    if (k == "zeta") return Expr::zeta(j.at("s").get<long>());
    if (k == "root_of_unity") return Expr::root_of_unity(j.at("n").get<long>(), j.at("k").get<long>());
    if (k == "polylog") {
        auto a = args(1);
        return Expr::polylog(j.at("order").get<int>(), a[0]);
    }
    if (k == "hyp") {
        std::vector<Expr> up, lo;
        for (const json& c : j.at("upper")) up.push_back(expr_from_json(c));
        for (const json& c : j.at("lower")) lo.push_back(expr_from_json(c));
        return Expr::hyp(std::move(up), std::move(lo), expr_from_json(j.at("z")));
    }
    if (k == "add") {
        auto a = args(0);
        return Expr::add(std::move(a));
    }
    if (k == "mul") {
        auto a = args(0);
        return Expr::mul(std::move(a));
    }
    if (k == "pow") {
        auto a = args(2);
        return Expr::pow(a[0], a[1]);
    }
    if (k == "neg") {
        auto a = args(1);
        return Expr::neg(a[0]);
    }
    static const std::pair<const char*, Kind> unary[] = {
        {"log", Kind::Log},       {"exp", Kind::Exp},     {"sin", Kind::Sin},
        {"cos", Kind::Cos},       {"sinh", Kind::Sinh},   {"cosh", Kind::Cosh},
        {"asin", Kind::ArcSin},   {"atan", Kind::ArcTan}, {"asinh", Kind::ArcSinh},
        {"atanh", Kind::ArcTanh}, {"gamma", Kind::Gamma}, {"elliptic_k", Kind::EllipticK},
        {"elliptic_e", Kind::EllipticE}};
    for (const auto& [name, kind] : unary) {
        if (k == name) {
            auto a = args(1);
            return Expr::fn(kind, a[0]);
        }
    }
    throw ParseError("unknown expression kind '" + k + "'");
}

json constraint_to_json(const Constraint& c) {
    json j;
    json coeffs = json::object();
    for (const auto& [sym, v] : c.coeffs) coeffs[sym] = v.to_string();
    j["coeffs"] = std::move(coeffs);
    j["const"] = c.constant.to_string();
    switch (c.rel) {
    case Constraint::Rel::Greater: j["rel"] = ">"; break;
    case Constraint::Rel::GreaterEq: j["rel"] = ">="; break;
    case Constraint::Rel::NotEqual: j["rel"] = "!="; break;
    case Constraint::Rel::IsInteger: j["rel"] = "int"; break;
    case Constraint::Rel::NotNonposInt: j["rel"] = "not_nonpos_int"; break;
    }
    j["bound"] = c.bound.to_string();
    return j;
}

Constraint constraint_from_json(const json& j) {
    Constraint c;
    for (auto it = j.at("coeffs").begin(); it != j.at("coeffs").end(); ++it)
        c.coeffs[it.key()] = Rational::parse(it.value().get<std::string>());
    c.constant = Rational::parse(j.at("const").get<std::string>());
    std::string rel = j.at("rel").get<std::string>();
    if (rel == ">") c.rel = Constraint::Rel::Greater;
    else if (rel == ">=") c.rel = Constraint::Rel::GreaterEq;
    else if (rel == "!=") c.rel = Constraint::Rel::NotEqual;
    else if (rel == "int") c.rel = Constraint::Rel::IsInteger;
    else if (rel == "not_nonpos_int") c.rel = Constraint::Rel::NotNonposInt;
    else throw ParseError("unknown constraint relation '" + rel + "'");
    c.bound = Rational::parse(j.at("bound").get<std::string>());
    return c;
}

json identity_to_json(const Identity& id) {
    json j;
    j["name"] = id.name;
    j["lhs"] = expr_to_json(id.lhs);
    j["rhs"] = expr_to_json(id.rhs);
    j["free_symbols"] = id.free_symbols;
    json cons = json::array();
    for (const Constraint& c : id.constraints) cons.push_back(constraint_to_json(c));
    j["constraints"] = std::move(cons);
    j["provenance"] = id.provenance;
    return j;
}

Identity identity_from_json(const json& j) {
    Identity id;
    id.name = j.at("name").get<std::string>();
    id.lhs = expr_from_json(j.at("lhs"));
    id.rhs = expr_from_json(j.at("rhs"));
    for (const json& s : j.at("free_symbols")) id.free_symbols.push_back(s.get<std::string>());
    for (const json& c : j.at("constraints")) id.constraints.push_back(constraint_from_json(c));
    id.provenance = j.value("provenance", "");
    id.validate();
    return id;
}

} // namespace hyperdist
