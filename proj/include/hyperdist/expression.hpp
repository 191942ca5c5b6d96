#pragma once

#include "hyperdist/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hyperdist {

enum class Kind {
    IntLit,
    RationalLit,
    SymbolRef,
    ImaginaryUnit,
    Pi,
    CatalanC,
    Add,
    Mul,
    Pow,
    Neg,
    Log,
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    ArcSin,
    ArcTan,
    ArcSinh,
    ArcTanh,
    Gamma,
    Zeta,
    PolyLog,
    EllipticK,
    EllipticE,
    RootOfUnity,
    Hyp,
};

const char* kind_name(Kind k);

struct ExprNode;

// Immutable closed-form expression tree. Copying shares nodes.
class Expr {
public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}

    bool valid() const { return node_ != nullptr; }
    const ExprNode& node() const { return *node_; }
    std::shared_ptr<const ExprNode> ptr() const { return node_; }

    Kind kind() const;

    // --- factories -----------------------------------------------------------
    static Expr integer(long v);
    static Expr integer(const Rational& v);
    static Expr rational(const Rational& v);
    static Expr symbol(const std::string& name);
    static Expr imaginary();
    static Expr pi();
    static Expr catalan();
    static Expr add(std::vector<Expr> terms);
    static Expr mul(std::vector<Expr> factors);
    static Expr pow(Expr base, Expr exponent);
    static Expr pow(Expr base, const Rational& exponent);
    static Expr neg(Expr x);
    static Expr sub(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr fn(Kind k, Expr arg); // Log..Gamma unary kinds
    static Expr zeta(long s);
    static Expr polylog(int order, Expr arg);
    static Expr elliptic_k(Expr m);
    static Expr elliptic_e(Expr m);
    static Expr root_of_unity(long n, long k);
    static Expr hyp(std::vector<Expr> upper, std::vector<Expr> lower, Expr arg);
    static Expr sqrt(Expr x) { return pow(std::move(x), Rational(1, 2)); }

    // rational value if this (sub)tree is a literal
    std::optional<Rational> as_rational() const;

private:
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    Kind kind;
    Rational value;            // IntLit / RationalLit
    std::string symbol;        // SymbolRef
    int polylog_order = 0;     // PolyLog
    long root_n = 0, root_k = 0; // RootOfUnity
    long zeta_s = 0;           // Zeta
    std::vector<Expr> children;
    // Hyp payload: parameter entries may hold free symbols until instantiated
    std::vector<Expr> hyp_upper, hyp_lower;
};

// flatten/sort/fold-rationals normal form used for structural equality and
// display; performs no algebraic simplification beyond rational folding
Expr canonical(const Expr& e);
bool equal_canonical(const Expr& a, const Expr& b);
// total order over canonical trees (used for sorting Add/Mul children)
int compare(const Expr& a, const Expr& b);

std::set<std::string> free_symbols(const Expr& e);
Expr substitute(const Expr& e, const std::map<std::string, Rational>& bindings);
Expr substitute_exprs(const Expr& e, const std::map<std::string, Expr>& bindings);

// human-readable infix form (parseable back by the expression parser)
std::string to_text(const Expr& e);

bool contains_hyp(const Expr& e);

} // namespace hyperdist
