#include <doctest.h>

#include "test_util.hpp"

#include "hyperdist/series_eval.hpp"

#include <random>

using namespace hyperdist;
using testutil::diff_log10;
using testutil::ev;

namespace {

CBall evs(NumContext& ctx, const char* text, EvalOptions opts = {}) {
    return eval_pfq(parse_series(text), ctx, opts);
}

} // namespace

TEST_CASE("argument analysis") {
    NumContext ctx(Precision(20));
    ArgForm a = analyze_argument(parse_expression("1"), ctx);
    CHECK(a.form == ArgForm::Form::rational);
    CHECK(a.rat == Rational(1));
    a = analyze_argument(parse_expression("-1"), ctx);
    CHECK(a.rat == Rational(-1));
    a = analyze_argument(parse_expression("omega(4,1)"), ctx);
    CHECK(a.form == ArgForm::Form::unit_root);
    CHECK(a.M == 4);
    CHECK(a.j == 1);
    // the scaled root from a distribution-relation right side at z = 1
    a = analyze_argument(parse_expression("4^0 * omega(4,3) * 1^(1/4)"), ctx);
    CHECK(a.form == ArgForm::Form::unit_root);
    CHECK(a.M == 4);
    CHECK(a.j == 3);
    // (-1)^(1/3) as a phase
    a = analyze_argument(parse_expression("(-1)^(1/3)"), ctx);
    CHECK(a.form == ArgForm::Form::unit_root);
    CHECK(a.M == 6);
    CHECK(a.j == 1);
    a = analyze_argument(parse_expression("1/2 * omega(3,1)"), ctx);
    CHECK(a.form == ArgForm::Form::numeric);
}

TEST_CASE("evaluation plans") {
    NumContext ctx(Precision(40));
    CHECK(plan(parse_series("2F1(1,1;2;1/2)"), ctx).strategy == EvalPlan::Strategy::direct);
    CHECK(plan(parse_series("6F5(1,1,1,5/4,3/2,7/4;9/8,11/8,13/8,15/8,2;1)"), ctx).strategy ==
          EvalPlan::Strategy::tail_asymptotic);
    CHECK(plan(parse_series("2F1(1/2,1/2;2;-1)"), ctx).strategy ==
          EvalPlan::Strategy::alternating_accel);
    CHECK(plan(parse_series("2F1(1,1;2;-1)"), ctx).strategy ==
          EvalPlan::Strategy::alternating_accel); // conditionally convergent
    CHECK_THROWS_AS(plan(parse_series("3F2(1,1,1;2,2;2)"), ctx), DivergentSeries);
    CHECK(plan(parse_series("2F1(-3,17;2;5)"), ctx).strategy == EvalPlan::Strategy::direct);
}

TEST_CASE("direct evaluation: binomial and log series") {
    NumContext ctx(Precision(40));
    CHECK(diff_log10(ctx, evs(ctx, "1F0(1/2;;1/2)"), ev(ctx, "sqrt(2)")) < -38.0);
    CHECK(diff_log10(ctx, evs(ctx, "2F1(1,1;2;1/2)"), ev(ctx, "2*log(2)")) < -38.0);
    CHECK(diff_log10(ctx, evs(ctx, "1F1(1;2;1)"), ev(ctx, "exp(1)-1")) < -38.0);
    // terminating with an argument outside the disk
    CHECK(diff_log10(ctx, evs(ctx, "2F1(-2,1;3;4)"), ev(ctx, "1 - 8/3 + 8/3")) < -38.0);
}

TEST_CASE("direct evaluation at complex arguments stays rigorous") {
    NumContext ctx(Precision(40));
    CBall v = evs(ctx, "2F1(1/3,2/3;5/4;1/2*omega(3,1))");
    CHECK(!v.heuristic);
    CHECK(v.err.log10() < -38.0);
    // conjugate symmetry
    CBall w = evs(ctx, "2F1(1/3,2/3;5/4;1/2*omega(3,2))");
    CHECK(diff_log10(ctx, v, ctx.conj(w)) < -36.0);
}

TEST_CASE("Gauss value as a boundary tail oracle") {
    NumContext ctx(Precision(40));
    // 2F1(1/2,1/2;2;1) = Gamma(2)Gamma(1)/Gamma(3/2)^2 = 4/pi
    CBall v = evs(ctx, "2F1(1/2,1/2;2;1)");
    CHECK(v.heuristic);
    CHECK(diff_log10(ctx, v, ev(ctx, "4/pi")) < -34.0);
    // across a doubled plan the reported digits persist
    EvalOptions big;
    big.head_terms = 2048;
    big.tail_order = 12;
    CBall w = evs(ctx, "2F1(1/2,1/2;2;1)", big);
    CHECK(diff_log10(ctx, v, w) < -34.0);
}

TEST_CASE("boundary evaluation matches closed forms") {
    NumContext ctx(Precision(40));
    // the displayed 6F5 at unit argument
    CBall lhs = evs(ctx, "6F5(1,1,1,5/4,3/2,7/4;9/8,11/8,13/8,15/8,2;1)");
    CBall rhs = ev(ctx,
                   "35/64*(pi^2 + 4*asin((-1)^(1/4))^2 - 4*asinh(1)^2 - 4*asinh((-1)^(1/4))^2)");
    CHECK(lhs.heuristic);
    CHECK(std::abs(rhs.im.to_double()) < 1e-35);
    CHECK(diff_log10(ctx, lhs, rhs) < -20.0);
}

TEST_CASE("alternating boundary evaluation") {
    NumContext ctx(Precision(40));
    // 2F1(a,b;1+a-b;-1) with a=1/2, b=1/8 via the Kummer value
    CBall lhs = evs(ctx, "2F1(1/2,1/8;11/8;-1)");
    CBall rhs = ev(ctx, "gamma(11/8)*gamma(5/4)/(gamma(3/2)*gamma(9/8))");
    CHECK(lhs.heuristic);
    CHECK(diff_log10(ctx, lhs, rhs) < -30.0);
}

TEST_CASE("root-of-unity boundary arguments") {
    NumContext ctx(Precision(40));
    // 2F1(a,(a+1)/3; 2(a+1)/3; e^(i pi/3)) at a = 1/5
    CBall lhs = evs(ctx, "2F1(1/5,2/5;4/5;omega(6,1))");
    CBall rhs = ev(ctx, "3^(1/10-1)*exp(pi*i/30)*gamma(1/15)*gamma(4/5)/(gamma(2/3)*gamma(1/5))");
    CHECK(diff_log10(ctx, lhs, rhs) < -25.0);
}

TEST_CASE("cancellation preserves the value") {
    NumContext ctx(Precision(35));
    HypSeries raw = parse_series("4F3(1/2,1,1,3/4;1,2,5/4;1/3)");
    HypSeries red = cancel_parameters(raw);
    CHECK(red.p() == 3);
    CBall a = eval_pfq(raw, ctx);
    CBall b = eval_pfq(red, ctx);
    CHECK(diff_log10(ctx, a, b) < -33.0);
}

TEST_CASE("tail expansion coefficients solve the ratio recurrence") {
    // e_j for 2F1(1/2,1/2;2;.): alpha = 2, verified against brute-force
    // quotient of Pochhammer products at large n
    ParamList up = {Rational(1, 2), Rational(1, 2)};
    ParamList lo = {Rational(2)};
    TailExpansion ex = tail_expansion(up, lo, 6);
    CHECK(ex.alpha == Rational(2));
    CHECK(ex.coeffs[0] == Rational(1));
    NumContext ctx(Precision(50));
    // compare sum e_j n^-j with n^alpha t_n / C at n = 1000
    unsigned long n = 1000;
    Rational tn = series_coeff(HypSeries(up, lo, Expr::integer(1)), n);
    CBall C = ctx.div(ctx.gamma(ctx.from_rational(Rational(2))),
                      ctx.mul(ctx.gamma(ctx.from_rational(Rational(1, 2))),
                              ctx.gamma(ctx.from_rational(Rational(1, 2)))));
    CBall lhs = ctx.div(ctx.from_rational(tn), C);
    lhs = ctx.mul(lhs, ctx.pow_int(ctx.from_rational(Rational(static_cast<long>(n))), 2));
    CBall rhs = ctx.zero();
    for (std::size_t j = 0; j < ex.coeffs.size(); ++j)
        rhs = ctx.add(rhs, ctx.mul_rat(ctx.pow_int(ctx.from_rational(Rational(static_cast<long>(n))),
                                                   -static_cast<long>(j)),
                                       ex.coeffs[j]));
    // agreement to O(n^-7)
    CHECK(diff_log10(ctx, lhs, rhs) < -18.0);
}

TEST_CASE("exact head sums") {
    ParamList up = {Rational(1, 2), Rational(1, 2)};
    ParamList lo = {Rational(2)};
    ExactHead h = exact_head_sum(up, lo, Rational(1), 5, 1);
    // 1 + 1/8 + 3/64 + 25/1024 + 1225/81920
    CHECK(h.residue_sums[0] == Rational(99225, 81920));
    ExactHead h2 = exact_head_sum(up, lo, Rational(1), 5, 2);
    CHECK(h2.residue_sums[0] + h2.residue_sums[1] == h.residue_sums[0]);
}

TEST_CASE("boundary plans double consistently") {
    NumContext ctx(Precision(30));
    EvalOptions a, b;
    a.head_terms = 512;
    a.tail_order = 10;
    b.head_terms = 1024;
    b.tail_order = 12;
    CBall va = evs(ctx, "3F2(1/2,1/2,1/2;3/2,5/4;1)", a);
    CBall vb = evs(ctx, "3F2(1/2,1/2,1/2;3/2,5/4;1)", b);
    double d = diff_log10(ctx, va, vb);
    CHECK(d < va.err.log10() + 1.0);
}
