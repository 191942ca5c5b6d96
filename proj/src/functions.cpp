#include "hyperdist/bernoulli.hpp"
#include "hyperdist/errors.hpp"
#include "hyperdist/numctx.hpp"
#include "numctx_cache.hpp"

#include <algorithm>
#include <cmath>

// gamma (Spouge), zeta, polylog (orders 2..4), elliptic K/E (AGM),
// Hurwitz zeta (Euler-Maclaurin)

namespace hyperdist {

namespace {

// distance from a complex center to the nearest nonpositive integer
double dist_to_nonpos_int(double re, double im) {
    double n = std::floor(re + 0.5);
    if (n > 0) n = 0;
    return std::hypot(re - n, im);
}

} // namespace

CBall NumContext::gamma(const CBall& z) const {
    double zre = z.re.to_double();
    double zim = z.im.to_double();
    double e_in = z.err.to_double();
    if (z.im.is_zero() && z.err.is_zero() && z.re.sign() <= 0 && mpfr_integer_p(z.re.raw()))
        throw PoleError("gamma pole at nonpositive integer");
    double d = dist_to_nonpos_int(zre, zim);
    if (d <= e_in * 2 + 1e-300) throw PoleError("gamma: ball touches a pole");

    if (z.im.is_zero()) {
        CBall r = zero();
        mpfr_gamma(r.re.raw(), z.re.raw(), MPFR_RNDN);
        // |psi(x)| bound for the input-radius propagation
        double psi = std::log(std::abs(zre) + 2.0) + 2.0 / std::max(d - e_in, 1e-300) + 2.0;
        r.err = r.re.mag() * (z.err * Mag::from_double(psi)) + ulp_err(r.re, r.im);
        r.heuristic = z.heuristic;
        return r;
    }

    CBall g = gamma_spouge(z);
    double psi = std::log(std::hypot(zre, zim) + 2.0) + 2.0 / std::max(d - e_in, 1e-300) + 2.0;
    g.err += abs_upper(g) * (z.err * Mag::from_double(psi));
    g.heuristic = g.heuristic || z.heuristic;
    return g;
}

// Spouge's approximation; relative truncation error <= a^-1/2 (2 pi)^-(a+1/2)
// for Re(z) >= 0, with reflection below the line Re(z) = 1/2.
CBall NumContext::gamma_spouge(const CBall& z) const {
    if (z.re.to_double() < 0.5) {
        // gamma(z) = pi / (sin(pi z) gamma(1 - z))
        CBall pz = mul(pi(), z);
        CBall s = sin(pz);
        CBall g1 = gamma_spouge(sub(one(), z));
        return div(pi(), mul(s, g1));
    }
    const double digits = static_cast<double>(wp_) * 0.30103;
    const long a = static_cast<long>(std::ceil(1.2533 * (digits + 8.0))) + 2;
    if (cache_->spouge_a != a) {
        // c_k = (-1)^(k-1) (a-k)^(k-1/2) e^(a-k) / (k-1)!
        cache_->spouge_a = a;
        cache_->spouge_c.clear();
        mpfr_prec_t wq = wp_ + 64;
        Real fact(wq);
        mpfr_set_ui(fact.raw(), 1, MPFR_RNDN);
        for (long k = 1; k < a; ++k) {
            Real t(wq), lg(wq);
            mpfr_set_si(t.raw(), a - k, MPFR_RNDN);
            mpfr_log(lg.raw(), t.raw(), MPFR_RNDN);
            Real ex(wq);
            mpfr_set_si(ex.raw(), 2 * k - 1, MPFR_RNDN);
            mpfr_div_ui(ex.raw(), ex.raw(), 2, MPFR_RNDN);
            mpfr_mul(lg.raw(), lg.raw(), ex.raw(), MPFR_RNDN); // (k-1/2) log(a-k)
            mpfr_add_si(lg.raw(), lg.raw(), a - k, MPFR_RNDN);
            mpfr_exp(lg.raw(), lg.raw(), MPFR_RNDN);
            mpfr_div(lg.raw(), lg.raw(), fact.raw(), MPFR_RNDN);
            if (k % 2 == 0) mpfr_neg(lg.raw(), lg.raw(), MPFR_RNDN);
            Real ck(wp_ + 32);
            mpfr_set(ck.raw(), lg.raw(), MPFR_RNDN);
            cache_->spouge_c.push_back(ck);
            mpfr_mul_ui(fact.raw(), fact.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
        }
        Real s2p(wp_ + 32);
        mpfr_const_pi(s2p.raw(), MPFR_RNDN);
        mpfr_mul_ui(s2p.raw(), s2p.raw(), 2, MPFR_RNDN);
        mpfr_sqrt(s2p.raw(), s2p.raw(), MPFR_RNDN);
        cache_->spouge_sqrt2pi = s2p;
    }

    // s = z - 1; gamma(z) = (s+a)^(s+1/2) e^-(s+a) (sqrt(2 pi) + sum c_k/(s+k))
    CBall s = sub(z, one());
    CBall acc = from_real(cache_->spouge_sqrt2pi);
    acc.err += ulp_err(acc.re, acc.im);
    for (long k = 1; k < cache_->spouge_a; ++k) {
        CBall ck = from_real(cache_->spouge_c[static_cast<std::size_t>(k - 1)]);
        ck.err += ulp_err(ck.re, ck.im);
        CBall den = add(s, from_rational(Rational(k)));
        acc = add(acc, div(ck, den));
    }
    CBall sa = add(s, from_rational(Rational(cache_->spouge_a)));
    CBall expo = add(s, from_rational(Rational(1, 2)));
    CBall lead = mul(pow(sa, expo), exp(neg(sa)));
    CBall g = mul(lead, acc);
    double arel = static_cast<double>(cache_->spouge_a);
    double trunc_rel = std::exp(-(arel + 0.5) * std::log(2 * 3.14159265358979)) / std::sqrt(arel);
    g.err += abs_upper(g) * Mag::from_double(trunc_rel * 1.01);
    return g;
}

CBall NumContext::zeta_int(long s) const {
    if (s < 2) throw DomainError("zeta_int: argument must be >= 2");
    CBall r = zero();
    mpfr_zeta_ui(r.re.raw(), static_cast<unsigned long>(s), MPFR_RNDN);
    r.err = ulp_err(r.re, r.im);
    return r;
}

// ---------------------------------------------------------------------------
// polylog, orders 2..4. Principal sheet, cut on [1, inf).
// ---------------------------------------------------------------------------

CBall NumContext::polylog_series(int order, const CBall& z) const {
    // sum z^k / k^order, |z| <= ~0.6
    double zhi = abs_upper(z).to_double();
    if (zhi >= 0.75) throw PrecisionExhausted("polylog series used outside radius");
    double target_bits = static_cast<double>(wp_) + 6;
    long K = static_cast<long>(std::ceil(target_bits / -std::log2(zhi))) + 4;
    CBall zk = z;
    CBall acc = zero();
    for (long k = 1; k <= K; ++k) {
        acc = add(acc, mul_rat(zk, Rational(1) / Rational(k).pow_int(order)));
        if (k < K) zk = mul(zk, z);
    }
    // geometric tail bound
    double tail = std::pow(zhi, static_cast<double>(K) + 1.0) / (1.0 - zhi);
    acc.err += Mag::from_double(tail * 1.01);
    acc.heuristic = z.heuristic;
    return acc;
}

// expansion of Li_n(e^mu) in powers of mu, |mu| < 2 pi
CBall NumContext::polylog_log_expansion(int order, const CBall& z) const {
    CBall mu = log(z);
    double muhi = abs_upper(mu).to_double();
    double ratio = muhi / (2 * 3.14159265358979);
    if (ratio > 0.85) throw PrecisionExhausted("polylog log-expansion outside its disk");

    const int n = order;
    // (H_{n-1} - log(-mu)) mu^(n-1) / (n-1)!
    Rational H(0);
    for (int i = 1; i < n; ++i) H += Rational(1, i);
    CBall logterm = sub(from_rational(H), log(neg(mu)));
    logterm = mul(logterm, pow_int(mu, n - 1));
    logterm = mul_rat(logterm, Rational(1) / factorial(static_cast<unsigned>(n - 1)));

    CBall acc = logterm;
    CBall muk = one(); // mu^k / k!
    long K = static_cast<long>(std::ceil((wp_ + 8) / -std::log2(std::max(ratio, 0.05)))) + n + 8;
    for (long k = 0; k <= K; ++k) {
        if (k > 0) muk = mul_rat(mul(muk, mu), Rational(1, k));
        if (k == n - 1) continue;
        CBall term;
        if (n - k >= 2) {
            term = mul(zeta_int(n - k), muk);
        } else {
            Rational zv = zeta_nonpositive_int(static_cast<unsigned>(k - n));
            if (zv.is_zero()) continue;
            term = mul_rat(muk, zv);
        }
        acc = add(acc, term);
    }
    // |zeta(n-k) mu^k / k!| <= 4 (2 pi)^(n-1) ratio^k for k past the first few
    double tail = 4.0 * std::pow(2 * 3.14159265358979, n - 1) * std::pow(ratio, static_cast<double>(K + 1)) / (1.0 - ratio);
    acc.err += Mag::from_double(tail * 1.05) + ulp_err(acc.re, acc.im).mul2exp(2);
    acc.heuristic = z.heuristic;
    return acc;
}

CBall NumContext::polylog(int order, const CBall& z) const {
    if (order < 2 || order > 4) throw DomainError("polylog: order must be 2, 3 or 4");
    // exact special points
    if (z.err.is_zero() && z.im.is_zero()) {
        if (mpfr_cmp_ui(z.re.raw(), 1) == 0) return zeta_int(order);
        if (mpfr_cmp_si(z.re.raw(), -1) == 0) {
            // -eta(s) = -(1 - 2^(1-s)) zeta(s)
            Rational f = Rational(1) - Rational(2).pow_int(1 - order);
            return neg(mul_rat(zeta_int(order), f));
        }
    }
    double zhi = abs_upper(z).to_double();
    double zlo = abs_lower_d(z);
    if (zhi <= 0.55) return polylog_series(order, z);
    if (zlo >= 1.9) {
        // inversion to 1/z plus log(-z) polynomial
        CBall w = polylog(order, inv(z));
        CBall l = log(neg(z));
        CBall pi2 = mul(pi(), pi());
        switch (order) {
        case 2: {
            // Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2/2
            CBall r = neg(w);
            r = sub(r, mul_rat(pi2, Rational(1, 6)));
            r = sub(r, mul_rat(mul(l, l), Rational(1, 2)));
            return r;
        }
        case 3: {
            // Li3(z) = Li3(1/z) - pi^2 log(-z)/6 - log(-z)^3/6
            CBall r = w;
            r = sub(r, mul_rat(mul(pi2, l), Rational(1, 6)));
            r = sub(r, mul_rat(pow_int(l, 3), Rational(1, 6)));
            return r;
        }
        default: {
            // Li4(z) = -Li4(1/z) - 7 pi^4/360 - pi^2 log(-z)^2/12 - log(-z)^4/24
            CBall r = neg(w);
            r = sub(r, mul_rat(mul(pi2, pi2), Rational(7, 360)));
            r = sub(r, mul_rat(mul(pi2, mul(l, l)), Rational(1, 12)));
            r = sub(r, mul_rat(pow_int(l, 4), Rational(1, 24)));
            return r;
        }
        }
    }
    return polylog_log_expansion(order, z);
}

// ---------------------------------------------------------------------------
// complete elliptic integrals via the (optimal-branch) AGM
// ---------------------------------------------------------------------------

void NumContext::agm(const CBall& a0, const CBall& b0, CBall& agm_out, CBall& c_sq_sum) const {
    CBall a = a0, b = b0;
    c_sq_sum = zero();
    for (int it = 0; it < 400; ++it) {
        // c_{it+1} = (a_it - b_it)/2 contributes 2^it c^2 to the E-sum
        CBall c = mul_rat(sub(a, b), Rational(1, 2));
        // termination compares centers; accumulated ball error is carried anyway
        double chi_c = abs_center(c).to_double();
        double chi = abs_upper(c).to_double();
        double alo = abs_lower_d(a);
        CBall an = mul_rat(add(a, b), Rational(1, 2));
        c_sq_sum = add(c_sq_sum, mul_rat(mul(c, c), Rational(2).pow_int(it)));
        if (alo > 0 && chi_c <= alo * std::ldexp(1.0, -static_cast<int>(wp_) + 6)) {
            agm_out = an;
            agm_out.err += Mag::from_double(chi * 2.1);
            // remaining c contributions shrink quadratically
            c_sq_sum.err += Mag::from_double(std::ldexp(chi * chi, it + 2) * 4.0);
            return;
        }
        CBall bn = sqrt(mul(a, b));
        // pick the square-root branch with |a' - b'| <= |a' + b'|
        CBall d1 = sub(an, bn), s1 = add(an, bn);
        if (abs_upper(d1).to_double() > abs_upper(s1).to_double()) bn = neg(bn);
        a = an;
        b = bn;
    }
    throw PrecisionExhausted("AGM did not converge");
}

CBall NumContext::elliptic_k(const CBall& m) const {
    if (m.im.is_zero() && m.err.is_zero() && mpfr_cmp_ui(m.re.raw(), 1) == 0)
        throw PoleError("elliptic_k pole at m = 1");
    CBall b0 = sqrt(sub(one(), m));
    CBall M, csum;
    agm(one(), b0, M, csum);
    return div(mul_rat(pi(), Rational(1, 2)), M);
}

CBall NumContext::elliptic_e(const CBall& m) const {
    if (m.im.is_zero() && m.err.is_zero() && mpfr_cmp_ui(m.re.raw(), 1) == 0)
        return one(); // E(1) = 1
    CBall b0 = sqrt(sub(one(), m));
    CBall M, csum;
    agm(one(), b0, M, csum);
    CBall K = div(mul_rat(pi(), Rational(1, 2)), M);
    // E = K (1 - sum 2^(n-1) c_n^2), with c_0^2 = m contributing m/2
    CBall s = add(mul_rat(m, Rational(1, 2)), csum);
    return mul(K, sub(one(), s));
}

// ---------------------------------------------------------------------------
// Hurwitz zeta by Euler-Maclaurin, Re(s) > 1, a > 0
// ---------------------------------------------------------------------------

CBall NumContext::hurwitz_zeta(const CBall& s, const Rational& a) const {
    if (a.sign() <= 0) throw DomainError("hurwitz_zeta: a must be positive");
    double sig = s.re.to_double() - s.err.to_double();
    if (sig <= 1.0) throw DomainError("hurwitz_zeta: Re(s) must exceed 1");
    const bool s_real = s.im.is_zero() && s.err.is_zero();

    const double digits = static_cast<double>(wp_) * 0.30103;
    long K = static_cast<long>(std::ceil(0.7 * digits)) + 6;
    double smag = std::hypot(s.re.to_double(), s.im.to_double());
    double x0_min = std::max({2.0 * static_cast<double>(K), 16.0, 1.3 * smag});
    double a_d = a.to_double();
    long L = (a_d >= x0_min) ? 0 : static_cast<long>(std::ceil(x0_min - a_d));

    auto pow_neg_s = [&](const Rational& x) -> CBall {
        // x^(-s) for exact rational x > 0
        if (s_real) {
            Real xr = r_from(x);
            Real sr(wp_);
            mpfr_neg(sr.raw(), s.re.raw(), MPFR_RNDN);
            CBall r = zero();
            mpfr_pow(r.re.raw(), xr.raw(), sr.raw(), MPFR_RNDN);
            r.err = ulp_err(r.re, r.im).mul2exp(2);
            return r;
        }
        return exp(mul(neg(s), log(from_rational(x))));
    };

    CBall acc = zero();
    Rational x = a;
    for (long k = 0; k < L; ++k) {
        acc = add(acc, pow_neg_s(x));
        x += Rational(1);
    }
    // x0 = a + L
    CBall x0s = pow_neg_s(x); // x0^(-s)
    CBall x0b = from_rational(x);
    // x0^(1-s) / (s-1)
    CBall t1 = div(mul(x0s, x0b), sub(s, one()));
    acc = add(acc, t1);
    acc = add(acc, mul_rat(x0s, Rational(1, 2)));

    // sum_v B_2v/(2v)! (s)_{2v-1} x0^{-s-2v+1}
    CBall poch = s;                       // (s)_1
    CBall xpow = div(x0s, x0b);           // x0^(-s-1)
    CBall x0inv2 = inv(mul(x0b, x0b));
    Rational fact(2);                     // (2v)!
    for (long v = 1; v <= K; ++v) {
        Rational bf = bernoulli(static_cast<unsigned>(2 * v)) / fact;
        acc = add(acc, mul_rat(mul(poch, xpow), bf));
        // advance: (s)_{2v+1}, (2v+2)!, x0^{-s-2v-1}
        CBall s2v = add(s, from_rational(Rational(2 * v - 1)));
        CBall s2v1 = add(s, from_rational(Rational(2 * v)));
        poch = mul(poch, mul(s2v, s2v1));
        fact *= Rational(2 * v + 1) * Rational(2 * v + 2);
        xpow = mul(xpow, x0inv2);
    }
    // remainder bound: |B_{2K+2}/(2K+2)! (s)_{2K+1} x0^{-s-2K-1}| * |s+2K+1|/(sig+2K+1)
    Rational bf = bernoulli(static_cast<unsigned>(2 * K + 2)) / fact;
    CBall next = mul_rat(mul(poch, xpow), bf);
    double cfac = (smag + 2.0 * K + 1.0) / (sig + 2.0 * K + 1.0);
    acc.err += abs_upper(next) * Mag::from_double(cfac * 1.05);
    // uncertainty of s itself: |d zeta/ds| <~ log(x0) * |zeta|
    if (!s.err.is_zero()) {
        double lx = std::log(std::max(x.to_double(), 2.0)) + 2.0;
        acc.err += (abs_upper(acc) + Mag::from_double(1.0)) * s.err * Mag::from_double(lx);
    }
    return acc;
}

Real NumContext::hurwitz_zeta_real(const Rational& s, const Rational& a) const {
    return hurwitz_zeta(from_rational(s), a).re;
}

} // namespace hyperdist
