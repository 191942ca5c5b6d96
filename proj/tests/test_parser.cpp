#include <doctest.h>

#include "test_util.hpp"

#include "hyperdist/json_io.hpp"

using namespace hyperdist;

TEST_CASE("series text syntax round trips") {
    HypSeries s = parse_series("6F5(1,1,1,5/4,3/2,7/4; 9/8,11/8,13/8,15/8,2; 1)");
    CHECK(s.p() == 6);
    CHECK(s.q() == 5);
    CHECK(s.upper[3] == Rational(5, 4));
    CHECK(s.lower[4] == Rational(2));
    HypSeries again = parse_series(s.to_text());
    CHECK(multiset_equal(again.upper, s.upper));
    CHECK(multiset_equal(again.lower, s.lower));

    HypSeries bess = parse_series("0F2(; 1/2, 2/3; -1/4)");
    CHECK(bess.p() == 0);
    CHECK(bess.q() == 2);
}

TEST_CASE("series arity is checked") {
    CHECK_THROWS_AS(parse_series("2F1(1;2;1)"), ParseError);
    CHECK_THROWS_AS(parse_series("2F1(1,1,1;2;1)"), ParseError);
    CHECK_THROWS_AS(parse_series("notaseries"), ParseError);
}

TEST_CASE("expression grammar corner cases") {
    CHECK(equal_canonical(parse_expression("2^-1"), parse_expression("1/2")));
    CHECK(equal_canonical(parse_expression("-x^2"), Expr::neg(parse_expression("x^2"))));
    // canonicalization performs no algebraic rewriting
    CHECK(!equal_canonical(parse_expression("2^(1/2)*2^(1/2)"), parse_expression("2")));
    CHECK_THROWS_AS(parse_expression("foo(3)"), ParseError);
    CHECK_THROWS_AS(parse_expression("1 +"), ParseError);
    CHECK_THROWS_AS(parse_expression("(1"), ParseError);
    Expr li = parse_expression("Li3(1/2)");
    CHECK(li.kind() == Kind::PolyLog);
    CHECK(li.node().polylog_order == 3);
}

TEST_CASE("printer output parses back to an equal tree") {
    const char* samples[] = {
        "35/64*(pi^2 + 4*asin((-1)^(1/4))^2 - 4*asinh(1)^2)",
        "K(1/2 - sqrt(65)/16)*E(1/2)",
        "3F2(1,1,1;3/2,2;omega(4,1))",
        "Li2(3/4 - i*sqrt(7)/4) + catalan",
        "gamma(a-b+1)/gamma(a+1)",
        "zeta(3)*2^(1-2*c)",
    };
    for (const char* s : samples) {
        Expr e = parse_expression(s);
        Expr back = parse_expression(to_text(e));
        CHECK(equal_canonical(e, back));
    }
}

TEST_CASE("json round trip preserves trees") {
    const char* samples[] = {
        "1/2 + x*pi - Li4(1/2)",
        "4F3(1/4,1/4,3/4,3/4;1/2,1,1;z)",
        "omega(12,5)*gamma(1/3)^2",
        "asin(sqrt(z))^2/z",
    };
    for (const char* s : samples) {
        Expr e = parse_expression(s);
        nlohmann::json j = expr_to_json(e);
        Expr back = expr_from_json(j);
        CHECK(equal_canonical(e, back));
        CHECK(expr_to_json(canonical(e)) == expr_to_json(canonical(back)));
    }
}

TEST_CASE("identity json round trip") {
    Identity id;
    id.name = "demo";
    id.lhs = parse_expression("2F1(a,b;a-b+1;-1)");
    id.rhs = parse_expression("gamma(1+a-b)*gamma(1+a/2)/(gamma(1+a)*gamma(1+a/2-b))");
    id.free_symbols = {"a", "b"};
    Constraint c;
    c.coeffs = {{"b", Rational(-1)}};
    c.constant = Rational(1);
    c.rel = Constraint::Rel::Greater;
    id.constraints = {c};
    id.provenance = "demo";
    nlohmann::json j = identity_to_json(id);
    Identity back = identity_from_json(j);
    CHECK(back.name == id.name);
    CHECK(equal_canonical(back.lhs, id.lhs));
    CHECK(equal_canonical(back.rhs, id.rhs));
    CHECK(back.constraints.size() == 1);
    CHECK(back.constraints[0].to_text() == c.to_text());
}

TEST_CASE("identities declare their symbols") {
    Identity id;
    id.name = "bad";
    id.lhs = parse_expression("a + 1");
    id.rhs = parse_expression("2");
    CHECK_THROWS_AS(id.validate(), ValidationError);
}
