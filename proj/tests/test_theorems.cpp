#include <doctest.h>

#include "test_util.hpp"

#include "hyperdist/series_eval.hpp"
#include "hyperdist/theorems.hpp"
#include "hyperdist/transforms.hpp"

#include <random>

using namespace hyperdist;
using testutil::diff_log10;

namespace {

double verify_identity(const Identity& id, unsigned digits) {
    NumContext ctx{Precision(digits)};
    CBall lhs = eval_expression(ctx, id.lhs, {});
    CBall rhs = eval_expression(ctx, id.rhs, {});
    return diff_log10(ctx, lhs, rhs);
}

using Binding = std::map<std::string, Rational>;

} // namespace

TEST_CASE("apply_theorem basics") {
    Binding b{{"a", Rational(1, 2)}, {"b", Rational(1, 2)}, {"c", Rational(2)}};
    Identity id = apply_theorem(TheoremId::Gauss1, b);
    HypSeries s = hyp_from_expr(id.lhs);
    CHECK(s.p() == 2);
    CHECK(verify_identity(id, 35) < -25.0);

    // divergent binding rejected: c - a - b = 0
    Binding bad{{"a", Rational(1)}, {"b", Rational(1)}, {"c", Rational(2)}};
    CHECK_THROWS_AS(apply_theorem(TheoremId::Gauss1, bad), SideConditionViolated);
}

TEST_CASE("theorem property suite: random bindings satisfy lhs = rhs") {
    std::mt19937_64 rng(91);
    auto sample = [&](long max_den, long lo, long hi) {
        long den = 1 + static_cast<long>(rng() % static_cast<unsigned long>(max_den));
        long num = lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
        return Rational(num, den);
    };
    struct Case {
        TheoremId id;
        std::vector<std::string> syms;
        unsigned digits;
        double tol;
    };
    std::vector<Case> cases = {
        {TheoremId::Gauss1, {"a", "b", "c"}, 30, -20.0},
        {TheoremId::KummerMinus1, {"a", "b"}, 30, -20.0},
        {TheoremId::KummerHalf, {"a", "b"}, 30, -24.0},
        {TheoremId::Dixon, {"a", "b", "c"}, 30, -20.0},
        {TheoremId::Watson, {"a", "b", "c"}, 30, -20.0},
        {TheoremId::Whipple, {"a", "c", "e"}, 30, -20.0},
        {TheoremId::DougallL1, {"a", "b", "c"}, 30, -20.0},
        {TheoremId::DougallL2, {"a", "b", "c"}, 30, -20.0},
        {TheoremId::DougallL3, {"a", "b", "c", "d"}, 30, -20.0},
        {TheoremId::DougallL4, {"a", "b", "c", "d", "e"}, 30, -18.0},
        {TheoremId::K1, {"a"}, 30, -18.0},
        {TheoremId::K1Conjugate, {"a"}, 30, -18.0},
        {TheoremId::K2, {"a"}, 30, -24.0},
        {TheoremId::K3, {"a"}, 30, -18.0},
        {TheoremId::K4, {"a"}, 30, -18.0},
    };
    for (const Case& c : cases) {
        int done = 0, attempts = 0;
        while (done < 6 && attempts < 4000) {
            ++attempts;
            Binding b;
            for (const std::string& s : c.syms) b[s] = sample(8, -8, 16) * Rational(1, 4);
            Identity id;
            try {
                id = apply_theorem(c.id, b);
            } catch (const Error&) {
                continue;
            }
            double d;
            try {
                d = verify_identity(id, c.digits);
            } catch (const Error&) {
                continue; // e.g. sampling made the boundary excess too small
            }
            CAPTURE(theorem_name(c.id));
            CHECK(d < c.tol);
            ++done;
        }
        CAPTURE(theorem_name(c.id));
        CHECK(done == 6);
    }
}

TEST_CASE("L1 is the d -> (a+1)/2 limit of L3") {
    std::mt19937_64 rng(17);
    for (int done = 0; done < 8;) {
        long dn = 1 + static_cast<long>(rng() % 8);
        Rational a(1 + static_cast<long>(rng() % 8), dn);
        Rational b(1 + static_cast<long>(rng() % 8), 24);
        Rational c(1 + static_cast<long>(rng() % 8), 24);
        Binding l3{{"a", a}, {"b", b}, {"c", c}, {"d", (a + Rational(1)) * Rational(1, 2)}};
        Binding l1{{"a", a}, {"b", b}, {"c", c}};
        Identity i3, i1;
        try {
            i3 = apply_theorem(TheoremId::DougallL3, l3);
            i1 = apply_theorem(TheoremId::DougallL1, l1);
        } catch (const Error&) {
            continue;
        }
        NumContext ctx(Precision(35));
        CBall r3 = eval_expression(ctx, i3.rhs, {});
        CBall r1 = eval_expression(ctx, i1.rhs, {});
        CHECK(diff_log10(ctx, r3, r1) < -30.0);
        ++done;
    }
}

TEST_CASE("Clausen-style product identity") {
    std::mt19937_64 rng(23);
    for (int done = 0; done < 8;) {
        Rational a(1 + static_cast<long>(rng() % 12), 24);
        Rational b(1 + static_cast<long>(rng() % 12), 25);
        Rational z(static_cast<long>(rng() % 17) - 8, 16);
        if (z.is_zero()) continue;
        Binding bind{{"a", a}, {"b", b}, {"z", z}};
        Identity id;
        try {
            id = apply_theorem(TheoremId::ClausenSquare, bind);
        } catch (const Error&) {
            continue;
        }
        CHECK(verify_identity(id, 35) < -28.0);
        ++done;
    }
}

TEST_CASE("match recovers applied theorems") {
    Binding b{{"a", Rational(1, 2)}, {"b", Rational(1, 8)}};
    Identity id = apply_theorem(TheoremId::KummerMinus1, b);
    HypSeries s = hyp_from_expr(id.lhs);
    auto matches = match_closed_form(s);
    bool found = false;
    for (const MatchResult& m : matches) {
        if (m.theorem != TheoremId::KummerMinus1) continue;
        if (m.binding.at("a") == Rational(1, 2) && m.binding.at("b") == Rational(1, 8))
            found = true;
    }
    CHECK(found);
}

TEST_CASE("match round trip across the registry") {
    std::mt19937_64 rng(3111);
    auto sample = [&]() {
        long den = 1 + static_cast<long>(rng() % 8);
        long num = 1 + static_cast<long>(rng() % 12);
        return Rational(num, den * 4);
    };
    std::vector<std::pair<TheoremId, std::vector<std::string>>> cases = {
        {TheoremId::Gauss1, {"a", "b", "c"}},
        {TheoremId::Dixon, {"a", "b", "c"}},
        {TheoremId::DougallL3, {"a", "b", "c", "d"}},
        {TheoremId::K3, {"a"}},
    };
    for (const auto& [tid, syms] : cases) {
        int done = 0, attempts = 0;
        while (done < 4 && attempts < 2000) {
            ++attempts;
            Binding b;
            for (const std::string& s : syms) b[s] = sample();
            Identity id;
            try {
                id = apply_theorem(tid, b);
            } catch (const Error&) {
                continue;
            }
            auto matches = match_closed_form(hyp_from_expr(id.lhs));
            bool found = false;
            for (const MatchResult& m : matches)
                if (m.theorem == tid) found = true;
            CAPTURE(theorem_name(tid));
            CHECK(found);
            ++done;
        }
        CHECK(done == 4);
    }
}

TEST_CASE("no match for a divergent Gauss target") {
    HypSeries s = parse_series("2F1(1,1;2;1)");
    auto matches = match_closed_form(s);
    for (const MatchResult& m : matches) CHECK(m.theorem != TheoremId::Gauss1);
}

TEST_CASE("sum_dist_rhs recognizes arcsin squares and reproduces the display") {
    DistSpec spec;
    spec.n = 4;
    spec.m = 3;
    spec.z = Expr::integer(1);
    spec.upper = {Rational(1), Rational(1), Rational(1)};
    spec.lower = {Rational(3, 2), Rational(2)};
    Identity id = dist(spec);
    SummedIdentity summed = sum_dist_rhs(id);
    CHECK(summed.fired.size() == 4);
    // the z = 1 node is equally a Watson instance; the others are arcsin squares
    int arcsin_count = 0;
    for (TheoremId t : summed.fired)
        if (t == TheoremId::ArcsinSquare) ++arcsin_count;
    CHECK(arcsin_count >= 3);
    CHECK(!contains_hyp(summed.identity.rhs));
    // the summed closed form equals the displayed constant
    NumContext ctx(Precision(40));
    CBall rhs = eval_expression(ctx, summed.identity.rhs, {});
    CBall display = testutil::ev(
        ctx, "35/64*(pi^2 + 4*asin((-1)^(1/4))^2 - 4*asinh(1)^2 - 4*asinh((-1)^(1/4))^2)");
    CHECK(diff_log10(ctx, rhs, display) < -35.0);
}

TEST_CASE("sum_dist_rhs leaves unmatched nodes alone") {
    Identity id;
    id.name = "demo";
    id.lhs = parse_expression("1");
    id.rhs = parse_expression("3F2(1/7,2/7,3/7;4/7,5/7;1/2) + pi");
    id.provenance = "demo";
    SummedIdentity summed = sum_dist_rhs(id);
    CHECK(summed.fired.empty());
    CHECK(contains_hyp(summed.identity.rhs));
}

TEST_CASE("identity with no series nodes is unchanged") {
    Identity id;
    id.name = "demo";
    id.lhs = parse_expression("zeta(3)");
    id.rhs = parse_expression("zeta(3)");
    SummedIdentity summed = sum_dist_rhs(id);
    CHECK(equal_canonical(summed.identity.rhs, id.rhs));
}
