#include "hyperdist/parser.hpp"

#include "hyperdist/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace hyperdist {

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            throw ParseError("expected '" + std::string(1, c) + "' at offset " +
                             std::to_string(pos) + " in '" + s + "'");
    }

    bool at_digit() {
        char c = peek();
        return c >= '0' && c <= '9';
    }

    std::string read_int() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected digits at offset " + std::to_string(pos));
        return s.substr(start, pos - start);
    }

    std::string read_ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(const std::string& text) : lex(text) {}

    Expr parse() {
        Expr e = expr();
        lex.skip_ws();
        if (lex.pos != lex.s.size())
            throw ParseError("trailing input at offset " + std::to_string(lex.pos) + " in '" +
                             lex.s + "'");
        return e;
    }

    Expr expr() {
        Expr t = term();
        std::vector<Expr> sum = {t};
        for (;;) {
            char c = lex.peek();
            if (c == '+') {
                lex.eat('+');
                sum.push_back(term());
            } else if (c == '-') {
                lex.eat('-');
                sum.push_back(Expr::neg(term()));
            } else {
                break;
            }
        }
        if (sum.size() == 1) return sum[0];
        return Expr::add(std::move(sum));
    }

    Expr term() {
        Expr f = factor();
        std::vector<Expr> prod = {f};
        for (;;) {
            char c = lex.peek();
            if (c == '*') {
                lex.eat('*');
                prod.push_back(factor());
            } else if (c == '/') {
                lex.eat('/');
                prod.push_back(Expr::pow(factor(), Rational(-1)));
            } else {
                break;
            }
        }
        if (prod.size() == 1) return prod[0];
        return Expr::mul(std::move(prod));
    }

    Expr factor() {
        if (lex.peek() == '-') {
            lex.eat('-');
            return Expr::neg(factor());
        }
        Expr base = atom();
        if (lex.peek() == '^') {
            lex.eat('^');
            return Expr::pow(std::move(base), factor());
        }
        return base;
    }

    std::vector<Expr> arg_list(char terminator) {
        std::vector<Expr> out;
        if (lex.peek() == terminator) return out;
        out.push_back(expr());
        while (lex.eat(',')) out.push_back(expr());
        return out;
    }

    // pFq(upper; lower; z) after having read the leading integer p
    Expr pfq_tail(const std::string& p_digits) {
        lex.expect('F');
        std::string q_digits = lex.read_int();
        lex.expect('(');
        std::vector<Expr> up = arg_list(';');
        lex.expect(';');
        std::vector<Expr> lo = arg_list(';');
        lex.expect(';');
        Expr z = expr();
        lex.expect(')');
        if (up.size() != static_cast<std::size_t>(std::atol(p_digits.c_str())) ||
            lo.size() != static_cast<std::size_t>(std::atol(q_digits.c_str())))
            throw ParseError("series arity does not match its parameter lists");
        return Expr::hyp(std::move(up), std::move(lo), std::move(z));
    }

    Expr atom() {
        char c = lex.peek();
        if (c == '(') {
            lex.eat('(');
            Expr e = expr();
            lex.expect(')');
            return e;
        }
        if (lex.at_digit()) {
            std::string digits = lex.read_int();
            lex.skip_ws();
            if (lex.pos < lex.s.size() && lex.s[lex.pos] == 'F')
                return pfq_tail(digits);
            return Expr::integer(Rational::parse(digits));
        }
        std::string id = lex.read_ident();
        if (id.empty())
            throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " +
                             std::to_string(lex.pos) + " in '" + lex.s + "'");
        if (id == "pi") return Expr::pi();
        if (id == "catalan" || id == "C") return Expr::catalan();
        if (id == "i") return Expr::imaginary();
        if (lex.peek() == '(') {
            lex.eat('(');
            if (id == "omega") {
                Expr n = expr();
                lex.expect(',');
                Expr k = expr();
                lex.expect(')');
                auto rn = canonical(n).as_rational();
                auto rk = canonical(k).as_rational();
                if (!rn || !rk || !rn->is_integer() || !rk->is_integer())
                    throw ParseError("omega(n,k) needs integer arguments");
                return Expr::root_of_unity(rn->to_long(), rk->to_long());
            }
            if (id == "zeta") {
                Expr n = expr();
                lex.expect(')');
                auto rn = canonical(n).as_rational();
                if (!rn || !rn->is_integer()) throw ParseError("zeta(n) needs an integer order");
                return Expr::zeta(rn->to_long());
            }
            if (id == "polylog") {
                Expr n = expr();
                lex.expect(',');
                Expr a = expr();
                lex.expect(')');
                auto rn = canonical(n).as_rational();
                if (!rn || !rn->is_integer()) throw ParseError("polylog order must be an integer");
                return Expr::polylog(static_cast<int>(rn->to_long()), std::move(a));
            }
            if (id == "Li2" || id == "Li3" || id == "Li4") {
                Expr a = expr();
                lex.expect(')');
                return Expr::polylog(id[2] - '0', std::move(a));
            }
            Expr a = expr();
            lex.expect(')');
            if (id == "sqrt") return Expr::sqrt(std::move(a));
            if (id == "log") return Expr::fn(Kind::Log, std::move(a));
            if (id == "exp") return Expr::fn(Kind::Exp, std::move(a));
            if (id == "sin") return Expr::fn(Kind::Sin, std::move(a));
            if (id == "cos") return Expr::fn(Kind::Cos, std::move(a));
            if (id == "sinh") return Expr::fn(Kind::Sinh, std::move(a));
            if (id == "cosh") return Expr::fn(Kind::Cosh, std::move(a));
            if (id == "asin") return Expr::fn(Kind::ArcSin, std::move(a));
            if (id == "atan") return Expr::fn(Kind::ArcTan, std::move(a));
            if (id == "asinh") return Expr::fn(Kind::ArcSinh, std::move(a));
            if (id == "atanh") return Expr::fn(Kind::ArcTanh, std::move(a));
            if (id == "gamma") return Expr::fn(Kind::Gamma, std::move(a));
            if (id == "K") return Expr::elliptic_k(std::move(a));
            if (id == "E") return Expr::elliptic_e(std::move(a));
            throw ParseError("unknown function '" + id + "'");
        }
        return Expr::symbol(id);
    }
};

} // namespace

Expr parse_expression(const std::string& text) {
    Parser p(text);
    return p.parse();
}

HypSeries parse_series(const std::string& text) {
    Expr e = parse_expression(text);
    if (e.kind() != Kind::Hyp)
        throw ParseError("not a series in pFq(...) syntax: '" + text + "'");
    return hyp_from_expr(e);
}

} // namespace hyperdist
