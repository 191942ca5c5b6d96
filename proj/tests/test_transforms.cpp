#include <doctest.h>

#include "test_util.hpp"

#include "hyperdist/series_eval.hpp"
#include "hyperdist/transforms.hpp"

#include <random>

using namespace hyperdist;
using testutil::diff_log10;
using testutil::ev;

namespace {

double verify_identity(const Identity& id, unsigned digits) {
    NumContext ctx{Precision(digits)};
    CBall lhs = eval_expression(ctx, id.lhs, {});
    CBall rhs = eval_expression(ctx, id.rhs, {});
    return diff_log10(ctx, lhs, rhs);
}

Rational rnd_rational(std::mt19937_64& rng, long max_den, long lo_num, long hi_num) {
    long den = 1 + static_cast<long>(rng() % static_cast<unsigned long>(max_den));
    long span = hi_num - lo_num + 1;
    long num = lo_num + static_cast<long>(rng() % static_cast<unsigned long>(span));
    return Rational(num, den);
}

} // namespace

TEST_CASE("dist blocks") {
    auto R = [](const char* s) { return Rational::parse(s); };
    ParamList b = dist_block(R("3/2"), 4, 3);
    CHECK(b == ParamList{R("9/8"), R("11/8"), R("13/8"), R("15/8")});
    CHECK(dist_block(R("1"), 1, 0) == ParamList{R("1")});
    CHECK(dist_block(R("2"), 4, 3) == ParamList{R("5/4"), R("3/2"), R("7/4"), R("2")});
    CHECK_THROWS_AS(dist_block(R("1"), 2, 2), InvalidSpec);
}

TEST_CASE("dist reproduces the displayed parameter lists") {
    DistSpec spec;
    spec.n = 4;
    spec.m = 3;
    spec.z = Expr::integer(1);
    spec.upper = {Rational(1), Rational(1), Rational(1)};
    spec.lower = {Rational(3, 2), Rational(2)};
    Identity id = dist(spec);
    HypSeries lhs = hyp_from_expr(id.lhs);
    auto R = [](const char* s) { return Rational::parse(s); };
    CHECK(multiset_equal(lhs.upper, {R("1"), R("1"), R("1"), R("5/4"), R("3/2"), R("7/4")}));
    CHECK(multiset_equal(lhs.lower, {R("9/8"), R("11/8"), R("13/8"), R("15/8"), R("2")}));
    // raw (uncancelled) form on request
    DistOptions raw;
    raw.cancel = false;
    Identity id_raw = dist(spec, raw);
    HypSeries raw_lhs = hyp_from_expr(id_raw.lhs);
    CHECK(raw_lhs.p() == 13);
    CHECK(raw_lhs.q() == 12);
}

TEST_CASE("dist with n = 1 is the identity transform") {
    DistSpec spec;
    spec.n = 1;
    spec.m = 0;
    spec.z = Expr::rational(Rational(1, 3));
    spec.upper = {Rational(1, 2), Rational(1, 4)};
    spec.lower = {Rational(5, 4)};
    Identity id = dist(spec);
    CHECK(verify_identity(id, 35) < -30.0);
    HypSeries lhs = hyp_from_expr(id.lhs);
    CHECK(multiset_equal(lhs.upper, spec.upper));
}

TEST_CASE("dist numeric soundness over random specs") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 25) {
        DistSpec spec;
        spec.n = 1 + static_cast<long>(rng() % 4);
        spec.m = static_cast<long>(rng() % static_cast<unsigned long>(spec.n));
        long p = static_cast<long>(rng() % 3);
        long q = static_cast<long>(rng() % 3);
        if (p > q + 1) continue; // both sides must converge for the numeric check
        for (long i = 0; i < p; ++i) spec.upper.push_back(rnd_rational(rng, 8, 1, 24));
        for (long i = 0; i < q; ++i) spec.lower.push_back(rnd_rational(rng, 8, 1, 24));
        Rational z = rnd_rational(rng, 12, -6, 6) * Rational(1, 12);
        if (z.is_zero()) z = Rational(1, 3);
        spec.z = Expr::rational(z);
        Identity id;
        try {
            id = dist(spec);
        } catch (const InvalidSpec&) {
            continue;
        }
        double d = verify_identity(id, 35);
        CAPTURE(id.name);
        CAPTURE(z.to_string());
        CHECK(d < -25.0);
        ++done;
    }
}

TEST_CASE("root of unity annihilation") {
    // sum over k of e^(2 pi i k d / n) vanishes unless d = 0 mod n
    NumContext ctx(Precision(40));
    for (long n = 1; n <= 12; ++n) {
        for (long d = -2 * n; d <= 2 * n; ++d) {
            Rational exact = root_of_unity_sum(n, d);
            CHECK(exact == ((d % n + n) % n == 0 ? Rational(n) : Rational(0)));
            CBall num = ctx.zero();
            for (long k = 0; k < n; ++k)
                num = ctx.add(num, ctx.root_of_unity(n, (k * d) % n));
            CHECK(diff_log10(ctx, num, ctx.from_rational(exact)) < -38.0);
        }
    }
}

TEST_CASE("stir rewrites") {
    SUBCASE("m = 0 removes a matched pair") {
        HypSeries s = parse_series("3F2(5/4,1/2,1/3;5/4,5/2;1/3)");
        Identity id = stir(s, 0, 0);
        HypSeries rhs = hyp_from_expr(id.rhs);
        CHECK(rhs.p() == 2);
        CHECK(verify_identity(id, 35) < -30.0);
    }
    SUBCASE("derived example") {
        HypSeries s = parse_series("3F2(3,1/2,1/3;2,5/2;1/3)");
        Identity id = stir(s, 0, 0);
        CHECK(verify_identity(id, 35) < -30.0);
    }
    SUBCASE("rejects a non-integer difference") {
        HypSeries s = parse_series("2F1(1/2,1;1/3;1/4)");
        CHECK_THROWS_AS(stir(s, 0, 0), NotIntegerDifference);
    }
}

TEST_CASE("init rewrites") {
    SUBCASE("derived 2F1 example") {
        // 2F1(1, a; 2; z) at a = 1/3, z = 1/2
        HypSeries s = parse_series("2F1(1,1/3;2;1/2)");
        Identity id = init(s, 0, 0);
        CHECK(verify_identity(id, 35) < -30.0);
    }
    SUBCASE("n = 2 case") {
        HypSeries s = parse_series("3F2(1,1/2,1/4;3,7/2;2/5)");
        Identity id = init(s, 0, 0);
        CHECK(verify_identity(id, 35) < -30.0);
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(init(parse_series("2F1(1,1/3;1;1/2)"), 0, 0), InvalidSpec);
        CHECK_THROWS_AS(init(parse_series("2F1(1/2,1/3;2;1/2)"), 0, 0), InvalidSpec);
        // (1-a)_n vanishing: a = 2, n = 2 -> (1-2)_2 = 0
        CHECK_THROWS_AS(init(parse_series("3F2(1,2,1/4;3,1/2;1/2)"), 0, 0),
                        VanishingPochhammer);
    }
}

TEST_CASE("pfd rewrites") {
    SUBCASE("single pair is the identity transform") {
        HypSeries s = parse_series("2F1(1/4,1/3;5/4;1/2)");
        Identity id = pfd(s, {{0, 0}});
        CHECK(verify_identity(id, 35) < -30.0);
        CHECK(equal_canonical(id.lhs, id.rhs));
    }
    SUBCASE("derived two-pair example") {
        HypSeries s = parse_series("3F2(1/4,3/4,1;5/4,7/4;1/2)");
        Identity id = pfd(s, {{0, 0}, {1, 1}});
        CHECK(verify_identity(id, 35) < -30.0);
    }
    SUBCASE("guards") {
        HypSeries bad = parse_series("3F2(1/4,1/4,1;5/4,5/4;1/2)");
        CHECK_THROWS_AS(pfd(bad, {{0, 0}, {1, 1}}), DuplicateParameter);
        HypSeries mis = parse_series("2F1(1/4,1/3;3/2;1/2)");
        CHECK_THROWS_AS(pfd(mis, {{0, 0}}), InvalidSpec);
    }
}

TEST_CASE("stir/init/pfd random numeric soundness") {
    std::mt19937_64 rng(555);
    int stir_done = 0, init_done = 0, pfd_done = 0;
    while (stir_done < 12) {
        Rational a = rnd_rational(rng, 6, 1, 18);
        long m = static_cast<long>(rng() % 3);
        Rational x = rnd_rational(rng, 8, 1, 16);
        Rational b = rnd_rational(rng, 8, 1, 16) + Rational(1);
        Rational z = rnd_rational(rng, 16, -8, 8) * Rational(1, 16);
        Rational lower0 = a - Rational(m);
        if (lower0.is_nonpositive_integer() || z.is_zero()) continue;
        try {
            HypSeries s({a, x}, {lower0, b}, Expr::rational(z));
            Identity id = stir(s, 0, 0);
            CHECK(verify_identity(id, 35) < -28.0);
            ++stir_done;
        } catch (const Error&) {
            continue;
        }
    }
    while (init_done < 12) {
        long n = 1 + static_cast<long>(rng() % 3);
        Rational x = rnd_rational(rng, 8, 1, 30);
        Rational b = rnd_rational(rng, 8, 1, 30) + Rational(n) + Rational(1, 2);
        Rational z = rnd_rational(rng, 16, -8, 8) * Rational(1, 16);
        if (z.is_zero()) continue;
        try {
            HypSeries s({Rational(1), x}, {Rational(n + 1), b}, Expr::rational(z));
            Identity id = init(s, 0, 0);
            CHECK(verify_identity(id, 35) < -28.0);
            ++init_done;
        } catch (const Error&) {
            continue;
        }
    }
    while (pfd_done < 12) {
        Rational a1 = rnd_rational(rng, 8, 1, 16);
        Rational a2 = rnd_rational(rng, 8, 1, 16);
        Rational c = rnd_rational(rng, 6, 1, 12);
        Rational z = rnd_rational(rng, 16, -8, 8) * Rational(1, 16);
        if (a1 == a2 || z.is_zero()) continue;
        try {
            HypSeries s({a1, a2, c}, {a1 + Rational(1), a2 + Rational(1)}, Expr::rational(z));
            Identity id = pfd(s, {{0, 0}, {1, 1}});
            CHECK(verify_identity(id, 35) < -28.0);
            ++pfd_done;
        } catch (const Error&) {
            continue;
        }
    }
}

TEST_CASE("transforms on concrete inputs have no free symbols") {
    DistSpec spec;
    spec.n = 2;
    spec.m = 1;
    spec.z = Expr::integer(1);
    spec.upper = {Rational(1, 2)};
    spec.lower = {Rational(5, 2)};
    Identity id = dist(spec);
    CHECK(id.concrete());
    CHECK(free_symbols(id.lhs).empty());
    CHECK(free_symbols(id.rhs).empty());
}
