#include <doctest.h>

#include "test_util.hpp"

#include "hyperdist/bernoulli.hpp"

#include <random>

using namespace hyperdist;
using testutil::diff_log10;
using testutil::ev;

TEST_CASE("gamma at simple points") {
    NumContext ctx(Precision(50));
    CHECK(diff_log10(ctx, "gamma(1/2)", "sqrt(pi)") < -55.0);
    CHECK(diff_log10(ctx, "gamma(1)", "1") < -55.0);
    CHECK(diff_log10(ctx, "gamma(6)", "120") < -55.0);
    CHECK_THROWS_AS(ev(ctx, "gamma(0)"), PoleError);
    CHECK_THROWS_AS(ev(ctx, "gamma(-3)"), PoleError);
}

TEST_CASE("complex gamma via the modulus identity") {
    NumContext ctx(Precision(40));
    // |gamma(i)|^2 = pi / sinh(pi)
    CBall gi = ctx.gamma(ctx.imag_unit());
    CBall mod2 = ctx.mul(gi, ctx.conj(gi));
    CHECK(diff_log10(ctx, mod2, ev(ctx, "pi/sinh(pi)")) < -38.0);
}

TEST_CASE("gamma reflection property at random rationals") {
    NumContext ctx(Precision(50));
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 100; ++i) {
        long den = 2 + static_cast<long>(rng() % 40);
        long num = 1 + static_cast<long>(rng() % static_cast<unsigned long>(den - 1));
        Rational z(num, den);
        CBall lhs = ctx.mul(ctx.gamma(ctx.from_rational(z)),
                            ctx.gamma(ctx.from_rational(Rational(1) - z)));
        lhs = ctx.mul(lhs, ctx.sin(ctx.mul_rat(ctx.pi(), z)));
        lhs = ctx.div(lhs, ctx.pi());
        CHECK(diff_log10(ctx, lhs, ctx.one()) < -45.0);
    }
}

TEST_CASE("gamma multiplication theorem up to n = 6") {
    NumContext ctx(Precision(45));
    std::mt19937_64 rng(777);
    for (long n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            long den = 2 + static_cast<long>(rng() % 12);
            long num = 1 + static_cast<long>(rng() % (3ul * static_cast<unsigned long>(den)));
            Rational z(num, den);
            CBall prod = ctx.one();
            for (long k = 0; k < n; ++k)
                prod = ctx.mul(prod, ctx.gamma(ctx.from_rational(z + Rational(k, n))));
            // (2 pi)^((n-1)/2) n^(1/2 - n z) Gamma(n z)
            CBall rhs = ctx.pow_rat(ctx.mul_rat(ctx.pi(), Rational(2)), Rational(n - 1, 2));
            rhs = ctx.mul(rhs, ctx.pow_rat(ctx.from_rational(Rational(n)),
                                           Rational(1, 2) - Rational(n) * z));
            rhs = ctx.mul(rhs, ctx.gamma(ctx.from_rational(Rational(n) * z)));
            CHECK(diff_log10(ctx, prod, rhs) < -40.0);
        }
    }
}

TEST_CASE("zeta, catalan") {
    NumContext ctx(Precision(40));
    CHECK(diff_log10(ctx, "zeta(2)", "pi^2/6") < -42.0);
    CHECK(diff_log10(ctx, "zeta(4)", "pi^4/90") < -42.0);
    CHECK(ctx.catalan().re.to_double() == doctest::Approx(0.9159655941).epsilon(1e-9));
}

TEST_CASE("polylog at special points and the duplication property") {
    NumContext ctx(Precision(45));
    CHECK(diff_log10(ctx, "Li2(1)", "pi^2/6") < -45.0);
    CHECK(diff_log10(ctx, "Li2(-1)", "-pi^2/12") < -45.0);
    CHECK(diff_log10(ctx, "Li3(1)", "zeta(3)") < -45.0);

    // Li_s(z) + Li_s(-z) = 2^(1-s) Li_s(z^2)
    std::mt19937_64 rng(4242);
    for (int order = 2; order <= 4; ++order) {
        for (int trial = 0; trial < 12; ++trial) {
            long den = 3 + static_cast<long>(rng() % 20);
            long num = static_cast<long>(rng() % (2 * static_cast<unsigned long>(den))) - den;
            if (num == 0) num = 1;
            Rational zr(num, 2 * den); // |z| < 1
            CBall z = ctx.from_rational(zr);
            CBall lhs = ctx.add(ctx.polylog(order, z), ctx.polylog(order, ctx.neg(z)));
            CBall rhs = ctx.mul_rat(ctx.polylog(order, ctx.mul(z, z)),
                                    Rational(2).pow_int(1 - order));
            CHECK(diff_log10(ctx, lhs, rhs) < -40.0);
        }
    }
}

TEST_CASE("polylog functional-equation paths agree with the series") {
    NumContext ctx(Precision(40));
    // z = 3/4 goes through the log-expansion; tie it back to |z| <= 1/2 values
    CBall lhs = ctx.polylog(2, ctx.from_rational(Rational(3, 4)));
    CBall a = ctx.polylog(2, ctx.from_rational(Rational(-3, 4)));
    CBall rhs = ctx.sub(ctx.mul_rat(ctx.polylog(2, ctx.from_rational(Rational(9, 16))),
                                    Rational(1, 2)),
                        a);
    CHECK(diff_log10(ctx, lhs, rhs) < -36.0);
    // inversion branch: Li2(-4) + Li2(-1/4) = -pi^2/6 - log(4)^2/2
    CBall l4 = ctx.polylog(2, ctx.from_rational(Rational(-4)));
    CBall l14 = ctx.polylog(2, ctx.from_rational(Rational(-1, 4)));
    CBall rhs2 = ctx.sub(ctx.sub(ctx.neg(ctx.mul_rat(ctx.mul(ctx.pi(), ctx.pi()), Rational(1, 6))),
                                 ctx.mul_rat(ctx.pow_int(ctx.log(ctx.from_rational(Rational(4))), 2),
                                             Rational(1, 2))),
                         l14);
    CHECK(diff_log10(ctx, l4, rhs2) < -36.0);
}

TEST_CASE("elliptic integrals: classical values") {
    NumContext ctx(Precision(50));
    CHECK(diff_log10(ctx, "K(0)", "pi/2") < -50.0);
    CHECK(diff_log10(ctx, "E(0)", "pi/2") < -50.0);
    // lemniscatic value in the parameter convention
    CHECK(diff_log10(ctx, "K(1/2)", "gamma(1/4)^2/(4*sqrt(pi))") < -48.0);
    CHECK_THROWS_AS(ev(ctx, "K(1)"), PoleError);
}

TEST_CASE("elliptic singular values with gamma closed forms") {
    NumContext ctx(Precision(50));
    CHECK(diff_log10(ctx, "K(1/2 - sqrt(2)/2)",
                     "gamma(1/8)*gamma(3/8)/(2^(11/4)*sqrt(pi))") < -48.0);
    CHECK(diff_log10(ctx, "E(1/2 - sqrt(2)/2)",
                     "(gamma(5/8)*gamma(7/8) + (sqrt(2)+1)/8*gamma(1/8)*gamma(3/8))"
                     "/(2^(5/4)*sqrt(pi))") < -48.0);
}

TEST_CASE("Legendre relation at random parameters") {
    NumContext ctx(Precision(45));
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        long den = 3 + static_cast<long>(rng() % 30);
        long num = 1 + static_cast<long>(rng() % static_cast<unsigned long>(den - 1));
        Rational m(num, den);
        CBall mm = ctx.from_rational(m);
        CBall m1 = ctx.from_rational(Rational(1) - m);
        // E(m) K(1-m) + E(1-m) K(m) - K(m) K(1-m) = pi/2
        CBall lhs = ctx.mul(ctx.elliptic_e(mm), ctx.elliptic_k(m1));
        lhs = ctx.add(lhs, ctx.mul(ctx.elliptic_e(m1), ctx.elliptic_k(mm)));
        lhs = ctx.sub(lhs, ctx.mul(ctx.elliptic_k(mm), ctx.elliptic_k(m1)));
        CHECK(diff_log10(ctx, lhs, ev(ctx, "pi/2")) < -40.0);
    }
}

TEST_CASE("complex elliptic arguments keep conjugate symmetry") {
    NumContext ctx(Precision(45));
    CBall m = ctx.add(ctx.from_rational(Rational(1, 2)),
                      ctx.mul_rat(ctx.imag_unit(), Rational(1, 2)));
    CBall k1 = ctx.elliptic_k(m);
    CBall k2 = ctx.elliptic_k(ctx.conj(m));
    CHECK(diff_log10(ctx, k1, ctx.conj(k2)) < -40.0);
}

TEST_CASE("elementary functions and identities") {
    NumContext ctx(Precision(45));
    CHECK(diff_log10(ctx, "asinh(1)", "log(1+sqrt(2))") < -45.0);
    CHECK(diff_log10(ctx, "sin(pi/6)", "1/2") < -45.0);
    CHECK(diff_log10(ctx, "cos(24)^2 + sin(24)^2", "1") < -45.0);
    CHECK(diff_log10(ctx, "exp(log(7/3))", "7/3") < -45.0);
    CHECK(diff_log10(ctx, "atan(1)", "pi/4") < -45.0);
    // principal branch at a complex point
    CBall v = ev(ctx, "asin((-1)^(1/4))");
    CHECK(v.re.to_double() == doctest::Approx(0.5718588702).epsilon(1e-6));
    CHECK(v.im.to_double() == doctest::Approx(0.7642854597).epsilon(1e-6));
}

TEST_CASE("hurwitz zeta basics") {
    NumContext ctx(Precision(40));
    CBall two = ctx.from_rational(Rational(2));
    CHECK(diff_log10(ctx, ctx.hurwitz_zeta(two, Rational(1)), ev(ctx, "pi^2/6")) < -40.0);
    CHECK(diff_log10(ctx, ctx.hurwitz_zeta(two, Rational(1, 2)), ev(ctx, "pi^2/2")) < -40.0);
    CHECK_THROWS_AS(ctx.hurwitz_zeta(ctx.one(), Rational(1)), DomainError);
    CHECK_THROWS_AS(ctx.hurwitz_zeta(two, Rational(-1)), DomainError);
}

TEST_CASE("hurwitz zeta against a brute-force tail oracle") {
    // zeta(3/2, 5000) vs direct summation of 1e6 tail terms plus the integral
    // remainder of the truncation point
    NumContext ctx(Precision(20));
    CBall s = ctx.from_rational(Rational(3, 2));
    CBall hz = ctx.hurwitz_zeta(s, Rational(5000));
    Real acc(ctx.wp());
    mpfr_set_zero(acc.raw(), 1);
    Real term(ctx.wp()), base(ctx.wp()), expo(ctx.wp());
    mpfr_set_d(expo.raw(), -1.5, MPFR_RNDN);
    for (long k = 0; k < 1000000; ++k) {
        mpfr_set_si(base.raw(), 5000 + k, MPFR_RNDN);
        mpfr_pow(term.raw(), base.raw(), expo.raw(), MPFR_RNDN);
        mpfr_add(acc.raw(), acc.raw(), term.raw(), MPFR_RNDN);
    }
    // remainder of the oracle beyond 1005000: 2/sqrt(N) + N^-1.5/2 + O(N^-5/2)
    Real rest(ctx.wp()), half_term(ctx.wp());
    mpfr_set_si(rest.raw(), 1005000, MPFR_RNDN);
    mpfr_rec_sqrt(rest.raw(), rest.raw(), MPFR_RNDN);
    mpfr_mul_ui(rest.raw(), rest.raw(), 2, MPFR_RNDN);
    mpfr_add(acc.raw(), acc.raw(), rest.raw(), MPFR_RNDN);
    mpfr_set_si(half_term.raw(), 1005000, MPFR_RNDN);
    mpfr_pow(half_term.raw(), half_term.raw(), expo.raw(), MPFR_RNDN);
    mpfr_div_ui(half_term.raw(), half_term.raw(), 2, MPFR_RNDN);
    mpfr_add(acc.raw(), acc.raw(), half_term.raw(), MPFR_RNDN);
    double diff = std::abs(acc.to_double() - hz.re.to_double());
    CHECK(diff < 1e-12);
}

TEST_CASE("bernoulli numbers and zeta at nonpositive integers") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(zeta_nonpositive_int(0) == Rational(-1, 2));
    CHECK(zeta_nonpositive_int(1) == Rational(-1, 12));
    CHECK(zeta_nonpositive_int(2) == Rational(0));
    CHECK(zeta_nonpositive_int(3) == Rational(1, 120));
}

TEST_CASE("doubling precision never changes reported digits") {
    const char* exprs[] = {
        "gamma(1/8)*gamma(3/8)/(2^(11/4)*sqrt(pi))",
        "Li3(3-2*sqrt(2))",
        "K(1/2+i/2)*K(1/2-i/2)",
        "zeta(3)*catalan/pi",
    };
    for (const char* s : exprs) {
        NumContext lo(Precision(30));
        NumContext hi(Precision(60));
        CBall a = ev(lo, s);
        CBall b = ev(hi, s);
        NumContext cmp(Precision(60));
        CHECK(testutil::diff_log10(cmp, a, b) < -28.0);
    }
}
