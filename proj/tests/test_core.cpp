#include <doctest.h>

#include "test_util.hpp"

#include "hyperdist/identity.hpp"
#include "hyperdist/series.hpp"

#include <random>

using namespace hyperdist;

TEST_CASE("rational arithmetic and parsing") {
    CHECK(Rational::parse("5/4") == Rational(5, 4));
    CHECK(Rational::parse("-1/24") == Rational(-1, 24));
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3).pow_int(-2) == Rational(9, 4));
    CHECK(Rational(-4).is_nonpositive_integer());
    CHECK(!Rational(-4, 3).is_nonpositive_integer());
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("pochhammer values") {
    CHECK(pochhammer(Rational(1, 2), 3) == Rational(15, 8));
    CHECK(pochhammer(Rational(7, 3), 0) == Rational(1));
    CHECK(pochhammer(Rational(-2), 4) == Rational(0));
}

TEST_CASE("pochhammer splitting property") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        long den = 1 + static_cast<long>(rng() % 24);
        long num = static_cast<long>(rng() % 97) - 48;
        Rational a(num, den);
        unsigned long j = rng() % 26, k = rng() % 26;
        CHECK(pochhammer(a, j + k) == pochhammer(a, j) * pochhammer(a + Rational(static_cast<long>(j)), k));
    }
}

TEST_CASE("parameter cancellation") {
    auto R = [](const char* s) { return Rational::parse(s); };
    SUBCASE("the 13F12 reduction") {
        ParamList up = {R("1"), R("1"), R("1"), R("1"), R("5/4"), R("5/4"), R("5/4"),
                        R("3/2"), R("3/2"), R("3/2"), R("7/4"), R("7/4"), R("7/4")};
        ParamList lo = {R("1"), R("5/4"), R("5/4"), R("3/2"), R("3/2"), R("7/4"),
                        R("7/4"), R("2"), R("9/8"), R("11/8"), R("13/8"), R("15/8")};
        cancel_common(up, lo);
        CHECK(multiset_equal(up, {R("1"), R("1"), R("1"), R("5/4"), R("3/2"), R("7/4")}));
        CHECK(multiset_equal(lo, {R("9/8"), R("11/8"), R("13/8"), R("15/8"), R("2")}));
    }
    SUBCASE("full cancellation") {
        ParamList up = {R("7/5")};
        ParamList lo = {R("7/5")};
        cancel_common(up, lo);
        CHECK(up.empty());
        CHECK(lo.empty());
    }
    SUBCASE("disjoint lists unchanged") {
        ParamList up = {R("1/2"), R("1/3")};
        ParamList lo = {R("2"), R("5/2")};
        cancel_common(up, lo);
        CHECK(up.size() == 2);
        CHECK(lo.size() == 2);
    }
    SUBCASE("idempotent") {
        ParamList up = {R("1"), R("1"), R("3/2")};
        ParamList lo = {R("1"), R("3/2"), R("2")};
        cancel_common(up, lo);
        ParamList up2 = up, lo2 = lo;
        cancel_common(up2, lo2);
        CHECK(multiset_equal(up, up2));
        CHECK(multiset_equal(lo, lo2));
    }
}

TEST_CASE("series construction guards") {
    CHECK_THROWS_AS(HypSeries({Rational(1)}, {Rational(0)}, Expr::integer(1)), ValidationError);
    CHECK_THROWS_AS(HypSeries({Rational(1)}, {Rational(-2)}, Expr::integer(1)), ValidationError);
    HypSeries s({Rational(-3)}, {Rational(1, 2)}, Expr::integer(1));
    CHECK(s.terminating());
    CHECK(s.terminating_order() == 3);
}

TEST_CASE("convergence classification") {
    NumContext ctx(Precision(20));
    auto cls = [&](const char* text) {
        return convergence_class(parse_series(text), ctx);
    };
    CHECK(cls("2F1(1/2,1/2;2;1)") == SeriesClass::boundary_abs);
    CHECK(cls("6F5(1,1,1,5/4,3/2,7/4;9/8,11/8,13/8,15/8,2;1)") == SeriesClass::boundary_abs);
    CHECK(cls("3F2(1,1,1;2,2;1/2)") == SeriesClass::inside_disk);
    CHECK(cls("2F1(1,1;2;1)") == SeriesClass::divergent); // excess 0 right at z = 1
    CHECK(cls("2F1(1,2;3;1)") == SeriesClass::divergent);
    CHECK(cls("2F1(1,1;3;1)") == SeriesClass::boundary_abs);
    CHECK(cls("2F1(1,1;2;-1)") == SeriesClass::boundary_cond);
    CHECK(cls("3F2(1,1,1;2,2;2)") == SeriesClass::divergent);
    CHECK(cls("2F1(-4,7;2;9)") == SeriesClass::terminating);
    CHECK(cls("1F2(1/2;2,3;100)") == SeriesClass::inside_disk);
    // invariance under permutation and cancellation
    CHECK(cls("3F2(1/2,1,1/2;2,1;1)") == cls("3F2(1/2,1/2,1;1,2;1)"));
    CHECK(cls("3F2(1/2,1,1/2;2,1;1)") == cls("2F1(1/2,1/2;2;1)"));
}

TEST_CASE("series terms") {
    NumContext ctx(Precision(30));
    HypSeries s = parse_series("2F1(1,1;2;z)");
    CHECK(series_coeff(s, 2) == Rational(1, 3));
    CHECK(equal_canonical(series_term(s, 0), Expr::integer(1)));
    HypSeries t = parse_series("3F2(1/2,1/2,1/2;3/2,3/2;z)");
    CHECK(series_coeff(t, 1) == Rational(1, 18));
    Expr term = series_term(t, 1);
    CHECK(equal_canonical(term, parse_expression("z/18")));
}

TEST_CASE("expression canonicalization is an equivalence") {
    Expr a = parse_expression("1/2 + x + 1/3");
    Expr b = parse_expression("x + 5/6");
    CHECK(equal_canonical(a, b));
    CHECK(equal_canonical(b, a));
    Expr c = parse_expression("2*(3*x)*y");
    Expr d = parse_expression("6*(x*y)");
    CHECK(equal_canonical(c, d));
    Expr e = parse_expression("omega(4,2)");
    CHECK(equal_canonical(e, Expr::integer(-1)));
    CHECK(equal_canonical(parse_expression("omega(8,2)"), Expr::imaginary()));
    CHECK(equal_canonical(parse_expression("x^1"), parse_expression("x")));
    CHECK(equal_canonical(parse_expression("(1/2)^3"), parse_expression("1/8")));
    CHECK(!equal_canonical(parse_expression("x + y"), parse_expression("x*y")));
}

TEST_CASE("free symbols and substitution") {
    Expr e = parse_expression("gamma(a-b+1)/gamma(a+1) + c");
    auto syms = free_symbols(e);
    CHECK(syms == std::set<std::string>{"a", "b", "c"});
    std::map<std::string, Rational> bind{{"a", Rational(1, 2)}, {"b", Rational(1, 4)}, {"c", Rational(0)}};
    Expr inst = substitute(e, bind);
    CHECK(free_symbols(inst).empty());
}

TEST_CASE("constraints evaluate over bindings") {
    Constraint c = Constraint::greater({{"a", Rational(1)}, {"b", Rational(-2)}}, Rational(1));
    std::map<std::string, Rational> good{{"a", Rational(1)}, {"b", Rational(1, 2)}};
    std::map<std::string, Rational> bad{{"a", Rational(-4)}, {"b", Rational(0)}};
    CHECK(c.satisfied(good)); // 1 - 1 + 1 > 0
    CHECK(!c.satisfied(bad));
    Constraint npi = Constraint::not_nonpos_int({{"a", Rational(1)}}, Rational(0));
    CHECK(npi.satisfied({{"a", Rational(1, 2)}}));
    CHECK(!npi.satisfied({{"a", Rational(-3)}}));
    CHECK(npi.satisfied({{"a", Rational(3)}}));
}
