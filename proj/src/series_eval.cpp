#include "hyperdist/series_eval.hpp"

#include "hyperdist/errors.hpp"
#include "hyperdist/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hyperdist {

const char* strategy_name(EvalPlan::Strategy s) {
    switch (s) {
    case EvalPlan::Strategy::direct: return "direct";
    case EvalPlan::Strategy::tail_asymptotic: return "tail_asymptotic";
    case EvalPlan::Strategy::alternating_accel: return "alternating_accel";
    }
    return "?";
}

// --- argument analysis -----------------------------------------------------------

ArgForm analyze_argument(const Expr& arg, NumContext& ctx) {
    (void)ctx;
    ArgForm out;
    Expr c = canonical(arg);
    if (auto r = c.as_rational()) {
        out.form = ArgForm::Form::rational;
        out.rat = *r;
        return out;
    }
    std::vector<Expr> factors;
    if (c.kind() == Kind::Mul)
        factors = c.node().children;
    else
        factors = {c};
    // accumulate the root-of-unity phase as j/M and the positive factors
    long M = 1, j = 0;
    std::vector<std::pair<Rational, Rational>> pos; // (base > 0, exponent)
    auto add_phase = [&](long pn, long pk) {
        long nm = std::lcm(M, pn);
        j = j * (nm / M) + pk * (nm / pn);
        M = nm;
        j %= M;
        if (j < 0) j += M;
    };
    for (const Expr& f : factors) {
        const ExprNode& n = f.node();
        if (auto r = f.as_rational()) {
            if (r->is_zero()) {
                out.form = ArgForm::Form::rational;
                out.rat = Rational(0);
                return out;
            }
            if (r->sign() < 0) add_phase(2, 1);
            pos.push_back({r->abs(), Rational(1)});
        } else if (n.kind == Kind::RootOfUnity) {
            add_phase(n.root_n, n.root_k);
        } else if (n.kind == Kind::ImaginaryUnit) {
            add_phase(4, 1);
        } else if (n.kind == Kind::Pow) {
            auto b = n.children[0].as_rational();
            auto e = n.children[1].as_rational();
            if (!b || !e) return out;
            if (b->sign() > 0) {
                pos.push_back({*b, *e});
            } else if (b->sign() < 0 && mpz_fits_slong_p(mpq_denref(e->raw()))) {
                // (-r)^(p/q) = r^(p/q) e^(i pi p / q), principal branch
                long qden = mpz_get_si(mpq_denref(e->raw()));
                Rational pnum = *e * Rational(qden);
                if (!pnum.fits_long()) return out;
                add_phase(2 * qden, pnum.to_long());
                pos.push_back({b->abs(), *e});
            } else {
                return out;
            }
        } else {
            return out;
        }
    }
    // positive part equals 1 exactly?
    long L = 1;
    for (auto& pp : pos) {
        if (!mpz_fits_slong_p(mpq_denref(pp.second.raw()))) return out;
        L = std::lcm(L, mpz_get_si(mpq_denref(pp.second.raw())));
        if (L > (1 << 16)) return out;
    }
    Rational prod(1);
    for (auto& pp : pos) {
        Rational e = pp.second * Rational(L);
        if (!e.fits_long()) return out;
        prod *= pp.first.pow_int(e.to_long());
    }
    if (prod != Rational(1)) {
        // not unit modulus; only pure rationals are reported exactly
        if (M == 1 || (M == 2 && j == 1)) {
            Rational v(1);
            bool exact = true;
            for (auto& pp : pos) {
                if (!pp.second.is_integer() || !pp.second.fits_long()) { exact = false; break; }
                v *= pp.first.pow_int(pp.second.to_long());
            }
            if (exact) {
                out.form = ArgForm::Form::rational;
                out.rat = (M == 2) ? -v : v;
                return out;
            }
        }
        return out;
    }
    long g = std::gcd(j == 0 ? M : j, M);
    out.form = ArgForm::Form::unit_root;
    out.M = M / g;
    out.j = j / g;
    return out;
}

// --- the 1/n expansion of the term ratio product -----------------------------------

namespace {

using Series = std::vector<Rational>; // truncated power series in x

Series ser_mul(const Series& u, const Series& v, std::size_t len) {
    Series w(len, Rational(0));
    for (std::size_t i = 0; i < u.size() && i < len; ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j + i < len && j < v.size(); ++j) {
            if (v[j].is_zero()) continue;
            w[i + j] += u[i] * v[j];
        }
    }
    return w;
}

Series ser_inv(const Series& d, std::size_t len) {
    Series inv(len, Rational(0));
    inv[0] = Rational(1) / d[0];
    for (std::size_t k = 1; k < len; ++k) {
        Rational s(0);
        for (std::size_t i = 1; i <= k && i < d.size(); ++i) s += d[i] * inv[k - i];
        inv[k] = -s / d[0];
    }
    return inv;
}

std::mutex g_exp_mutex;
std::map<std::string, TailExpansion> g_exp_cache;

} // namespace

TailExpansion tail_expansion(const ParamList& upper, const ParamList& lower, unsigned order) {
    std::ostringstream key;
    for (const Rational& a : upper) key << a.to_string() << ",";
    key << "|";
    for (const Rational& b : lower) key << b.to_string() << ",";
    key << "|" << order;
    {
        std::lock_guard<std::mutex> lock(g_exp_mutex);
        auto it = g_exp_cache.find(key.str());
        if (it != g_exp_cache.end()) return it->second;
    }

    const std::size_t M = order + 2;
    Rational alpha(1);
    for (const Rational& b : lower) alpha += b;
    for (const Rational& a : upper) alpha -= a;

    // R(x) = prod(1 + a x) / (prod(1 + b x)(1 + x)), x = 1/n
    Series num(M, Rational(0));
    num[0] = Rational(1);
    for (const Rational& a : upper) {
        Series f(M, Rational(0));
        f[0] = Rational(1);
        if (M > 1) f[1] = a;
        num = ser_mul(num, f, M);
    }
    Series den(M, Rational(0));
    den[0] = Rational(1);
    for (const Rational& b : lower) {
        Series f(M, Rational(0));
        f[0] = Rational(1);
        if (M > 1) f[1] = b;
        den = ser_mul(den, f, M);
    }
    {
        Series f(M, Rational(0));
        f[0] = Rational(1);
        if (M > 1) f[1] = Rational(1);
        den = ser_mul(den, f, M);
    }
    Series R = ser_mul(num, ser_inv(den, M), M);

    // G(x) = R(x) (1+x)^alpha ; the order-1 coefficient must vanish
    Series binom(M, Rational(0));
    binom[0] = Rational(1);
    Rational c(1);
    for (std::size_t k = 1; k < M; ++k) {
        c = c * (alpha - Rational(static_cast<long>(k) - 1)) / Rational(static_cast<long>(k));
        binom[k] = c;
    }
    Series G = ser_mul(R, binom, M);

    // comp[m][k]: coefficient of x^k in (x/(1+x))^m
    std::vector<Series> comp(M, Series(M, Rational(0)));
    comp[0][0] = Rational(1);
    for (std::size_t m = 1; m < M; ++m) {
        Rational cc(1);
        for (std::size_t t = 0; m + t < M; ++t) {
            comp[m][m + t] = cc;
            cc = cc * Rational(-static_cast<long>(m) - static_cast<long>(t)) /
                 Rational(static_cast<long>(t) + 1);
        }
    }

    // E(x/(1+x)) = E(x) G(x); solve triangularly, e_0 = 1
    std::vector<Rational> e(order + 1, Rational(0));
    e[0] = Rational(1);
    for (unsigned jj = 1; jj <= order; ++jj) {
        std::size_t ord = jj + 1;
        Rational lhs_low(0), rhs_low(0);
        for (unsigned m = 0; m < jj; ++m) {
            lhs_low += e[m] * comp[m][ord];
            rhs_low += e[m] * G[ord - m];
        }
        e[jj] = (rhs_low - lhs_low) / comp[jj][ord];
    }

    TailExpansion out{alpha, std::move(e)};
    std::lock_guard<std::mutex> lock(g_exp_mutex);
    g_exp_cache[key.str()] = out;
    return out;
}

// --- exact head sums ----------------------------------------------------------------

namespace {

// RAII mpz wrapper; mpz_t itself is an array type and cannot live in containers
struct Zint {
    mpz_t v;
    Zint() { mpz_init(v); }
    Zint(const Zint&) = delete;
    Zint& operator=(const Zint&) = delete;
    Zint(Zint&& o) noexcept { mpz_init(v); mpz_swap(v, o.v); }
    ~Zint() { mpz_clear(v); }
};

} // namespace

ExactHead exact_head_sum(const ParamList& upper, const ParamList& lower, const Rational& z,
                         unsigned long N, unsigned long M) {
    if (M == 0) M = 1;
    // scale all parameters to a common denominator D
    Zint D;
    mpz_set_ui(D.v, 1);
    for (const Rational& x : upper) mpz_lcm(D.v, D.v, mpq_denref(x.raw()));
    for (const Rational& x : lower) mpz_lcm(D.v, D.v, mpq_denref(x.raw()));
    std::vector<Zint> an(upper.size()), bn(lower.size());
    for (std::size_t i = 0; i < upper.size(); ++i) {
        mpz_divexact(an[i].v, D.v, mpq_denref(upper[i].raw()));
        mpz_mul(an[i].v, an[i].v, mpq_numref(upper[i].raw()));
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        mpz_divexact(bn[i].v, D.v, mpq_denref(lower[i].raw()));
        mpz_mul(bn[i].v, bn[i].v, mpq_numref(lower[i].raw()));
    }
    long dpow = static_cast<long>(upper.size()) - static_cast<long>(lower.size());

    Zint TN, TD, tmp, kD, mnum, mden, Dp, Dm;
    mpz_set_ui(TN.v, 1);
    mpz_set_ui(TD.v, 1);
    if (dpow > 0) mpz_pow_ui(Dp.v, D.v, static_cast<unsigned long>(dpow));
    if (dpow < 0) mpz_pow_ui(Dm.v, D.v, static_cast<unsigned long>(-dpow));
    std::vector<Zint> SN(M), P(M);
    for (unsigned long r = 0; r < M; ++r) mpz_set_ui(P[r].v, 1);

    // invariant entering step k: term t_k = TN/TD and each pending multiplier
    // P[r] equals TD / TD_at_last_update(r)
    for (unsigned long k = 0; k < N; ++k) {
        unsigned long r = k % M;
        mpz_mul(SN[r].v, SN[r].v, P[r].v);
        mpz_add(SN[r].v, SN[r].v, TN.v);
        mpz_set_ui(P[r].v, 1);

        // t_{k+1} = t_k * prod(an + kD) z / (prod(bn + kD)(k+1) D^dpow)
        mpz_mul_ui(kD.v, D.v, k);
        mpz_set(mnum.v, mpq_numref(z.raw()));
        mpz_set(mden.v, mpq_denref(z.raw()));
        for (std::size_t i = 0; i < an.size(); ++i) {
            mpz_add(tmp.v, an[i].v, kD.v);
            mpz_mul(mnum.v, mnum.v, tmp.v);
        }
        for (std::size_t i = 0; i < bn.size(); ++i) {
            mpz_add(tmp.v, bn[i].v, kD.v);
            mpz_mul(mden.v, mden.v, tmp.v);
        }
        mpz_mul_ui(mden.v, mden.v, k + 1);
        if (dpow > 0) mpz_mul(mden.v, mden.v, Dp.v);
        if (dpow < 0) mpz_mul(mnum.v, mnum.v, Dm.v);
        mpz_mul(TN.v, TN.v, mnum.v);
        mpz_mul(TD.v, TD.v, mden.v);
        for (unsigned long rr = 0; rr < M; ++rr) mpz_mul(P[rr].v, P[rr].v, mden.v);
    }

    ExactHead out;
    out.residue_sums.resize(M);
    mpq_t acc;
    mpq_init(acc);
    for (unsigned long r = 0; r < M; ++r) {
        mpz_mul(SN[r].v, SN[r].v, P[r].v);
        mpq_set_num(acc, SN[r].v);
        mpq_set_den(acc, TD.v);
        mpq_canonicalize(acc);
        out.residue_sums[r] = Rational(acc);
    }
    mpq_clear(acc);
    return out;
}

// --- planning -----------------------------------------------------------------------

EvalPlan plan(const HypSeries& s, NumContext& ctx, const EvalOptions& opts) {
    SeriesClass cls = convergence_class(s, ctx);
    if (cls == SeriesClass::divergent) throw DivergentSeries("series diverges: " + s.to_text());
    EvalPlan pl;
    pl.tail_order = opts.tail_order >= 4 ? opts.tail_order : 4;
    unsigned long N = opts.head_terms;
    if (N == 0) N = std::max<unsigned long>(512, 32ul * ctx.precision().digits);
    if (N < 64) N = 64;
    pl.head_terms = N;
    if (cls == SeriesClass::terminating || cls == SeriesClass::inside_disk) {
        pl.strategy = EvalPlan::Strategy::direct;
        return pl;
    }
    ArgForm af = analyze_argument(s.argument, ctx);
    bool minus_one = (af.form == ArgForm::Form::rational && af.rat == Rational(-1)) ||
                     (af.form == ArgForm::Form::unit_root && af.M == 2);
    if (cls == SeriesClass::boundary_cond) {
        if (minus_one) {
            pl.strategy = EvalPlan::Strategy::alternating_accel;
            return pl;
        }
        throw EvaluationError("conditionally convergent boundary series supported only at z = -1");
    }
    // boundary_abs
    if (minus_one) {
        pl.strategy = EvalPlan::Strategy::alternating_accel;
    } else {
        pl.strategy = EvalPlan::Strategy::tail_asymptotic;
    }
    return pl;
}

// --- direct summation ------------------------------------------------------------------

namespace {

double param_abs_max(const ParamList& v) {
    double m = 0;
    for (const Rational& x : v) m = std::max(m, std::abs(x.to_double()));
    return m;
}

// rigorous geometric tail: ratio bound after k is |z| prod(k+|a|)/(prod(k-|b|)(k+1))
double ratio_bound(const ParamList& upper, const ParamList& lower, double zabs, unsigned long k) {
    double r = zabs;
    for (const Rational& a : upper) r *= (k + std::abs(a.to_double()));
    for (const Rational& b : lower) {
        double d = k - std::abs(b.to_double());
        if (d <= 0) return 1e9;
        r /= d;
    }
    r /= (k + 1.0);
    return r;
}

CBall direct_eval_exact(const HypSeries& s, const Rational& z, NumContext& ctx) {
    // terminating: finite exact sum
    if (s.terminating()) {
        long m = s.terminating_order();
        ExactHead h = exact_head_sum(s.upper, s.lower, z, static_cast<unsigned long>(m) + 1, 1);
        return ctx.from_rational(h.residue_sums[0]);
    }
    double zabs = std::abs(z.to_double());
    if (zabs >= 1.0 && s.p() == s.q() + 1)
        throw DivergentSeries("direct evaluation needs |z| < 1");
    double rstar = (s.p() == s.q() + 1) ? (1.0 + zabs) / 2.0 : 0.5;
    unsigned long kmin = static_cast<unsigned long>(
        std::max({param_abs_max(s.upper), param_abs_max(s.lower), 4.0})) + 4;

    // two passes: find the cutoff with doubles, then one exact head sum
    double tlog2 = 0.0, tmax = 0.0;
    unsigned long N = 0;
    const double wp = static_cast<double>(ctx.wp());
    for (unsigned long k = 0;; ++k) {
        if (k >= kmin) {
            double rb = ratio_bound(s.upper, s.lower, zabs, k);
            if (rb <= rstar && tlog2 + std::log2(rb / (1 - rb) + 1e-30) < tmax - wp - 8) {
                N = k + 1;
                break;
            }
        }
        double rk = ratio_bound(s.upper, s.lower, zabs, k);
        tlog2 += std::log2(std::max(rk, 1e-30));
        tmax = std::max(tmax, tlog2);
        if (k > 100000000ul) throw PrecisionExhausted("direct summation cutoff not found");
    }
    ExactHead h = exact_head_sum(s.upper, s.lower, z, N, 1);
    CBall out = ctx.from_rational(h.residue_sums[0]);
    out.err += Mag::pow2(static_cast<long>(tmax - wp - 6));
    return out;
}

CBall direct_eval_ball(const HypSeries& s, NumContext& ctx) {
    CBall z = eval_expression(ctx, s.argument, {});
    if (s.terminating()) {
        long m = s.terminating_order();
        CBall t = ctx.one();
        CBall acc = ctx.zero();
        for (long k = 0; k <= m; ++k) {
            acc = ctx.add(acc, t);
            Rational num(1), den(static_cast<long>(k) + 1);
            for (const Rational& a : s.upper) num *= (a + Rational(k));
            for (const Rational& b : s.lower) den *= (b + Rational(k));
            t = ctx.mul_rat(ctx.mul(t, z), num / den);
        }
        return acc;
    }
    double zabs = ctx.abs_upper(z).to_double();
    if (zabs >= 1.0 && s.p() == s.q() + 1)
        throw DivergentSeries("direct evaluation needs |z| < 1");
    double rstar = (s.p() == s.q() + 1) ? (1.0 + zabs) / 2.0 : 0.5;
    unsigned long kmin = static_cast<unsigned long>(
        std::max({param_abs_max(s.upper), param_abs_max(s.lower), 4.0, zabs * 4.0})) + 4;

    CBall t = ctx.one();
    CBall acc = ctx.zero();
    double tlog2 = 0.0, tmax = 0.0;
    const double wp = static_cast<double>(ctx.wp());
    for (unsigned long k = 0;; ++k) {
        acc = ctx.add(acc, t);
        if (k >= kmin) {
            double rb = ratio_bound(s.upper, s.lower, zabs, k);
            if (rb <= rstar && tlog2 + std::log2(rb / (1 - rb) + 1e-30) < tmax - wp - 8) {
                acc.err += Mag::pow2(static_cast<long>(tlog2 + std::log2(rb / (1 - rb) + 1e-30) + 4));
                break;
            }
        }
        Rational num(1), den(static_cast<long>(k) + 1);
        for (const Rational& a : s.upper) num *= (a + Rational(static_cast<long>(k)));
        for (const Rational& b : s.lower) den *= (b + Rational(static_cast<long>(k)));
        t = ctx.mul_rat(ctx.mul(t, z), num / den);
        double rk = ratio_bound(s.upper, s.lower, zabs, k);
        tlog2 += std::log2(std::max(rk, 1e-30));
        tmax = std::max(tmax, tlog2);
        if (k > 10000000ul) throw PrecisionExhausted("ball summation cutoff not found");
    }
    return acc;
}

// --- boundary: asymptotic tail ----------------------------------------------------------

// sum over n >= N of z^n n^-sigma with z = e^(2 pi i j / M), via residue
// splitting into Hurwitz zetas
CBall unit_tail_sum(NumContext& ctx, long M, long j, const Rational& sigma, unsigned long N) {
    CBall acc = ctx.zero();
    CBall sig = ctx.from_rational(sigma);
    Rational Minv(1, M);
    CBall mpow = ctx.pow_rat(ctx.from_rational(Rational(M)), -sigma);
    for (long r = 0; r < M; ++r) {
        // n = M m + r >= N
        long mr = static_cast<long>((N + static_cast<unsigned long>(M) - 1 - r) / M);
        if (M * mr + r < static_cast<long>(N)) mr += 1;
        Rational a = Rational(mr) + Rational(r) * Minv;
        CBall hz = ctx.hurwitz_zeta(sig, a);
        CBall w = ctx.root_of_unity(M, (j * r) % M);
        acc = ctx.add(acc, ctx.mul(w, hz));
    }
    return ctx.mul(acc, mpow);
}

CBall tail_asymptotic_once(const HypSeries& s, const ArgForm& af, NumContext& ctx,
                           unsigned long N, unsigned J) {
    long M = 1, j = 0;
    if (af.form == ArgForm::Form::unit_root) {
        M = af.M;
        j = af.j;
    } else if (!(af.form == ArgForm::Form::rational && af.rat == Rational(1))) {
        throw EvaluationError("boundary tail summation needs z = 1 or a root of unity");
    }

    // exact heads per residue class
    ExactHead head = exact_head_sum(s.upper, s.lower, Rational(1), N, static_cast<unsigned long>(M));
    CBall acc = ctx.zero();
    for (long r = 0; r < M; ++r) {
        CBall w = ctx.root_of_unity(M, (j * r) % M);
        acc = ctx.add(acc, ctx.mul_rat(w, head.residue_sums[static_cast<std::size_t>(r)]));
    }

    // C = prod Gamma(b) / prod Gamma(a)
    CBall C = ctx.one();
    for (const Rational& b : s.lower) C = ctx.mul(C, ctx.gamma(ctx.from_rational(b)));
    for (const Rational& a : s.upper) C = ctx.div(C, ctx.gamma(ctx.from_rational(a)));

    TailExpansion ex = tail_expansion(s.upper, s.lower, J);
    CBall tail = ctx.zero();
    for (unsigned jj = 0; jj <= J; ++jj) {
        if (ex.coeffs[jj].is_zero()) continue;
        Rational sigma = ex.alpha + Rational(static_cast<long>(jj));
        CBall T = unit_tail_sum(ctx, M, j, sigma, N);
        tail = ctx.add(tail, ctx.mul_rat(T, ex.coeffs[jj]));
    }
    return ctx.add(acc, ctx.mul(C, tail));
}

CBall eval_tail_asymptotic(const HypSeries& s, const ArgForm& af, NumContext& ctx,
                           unsigned long N, unsigned J) {
    CBall r1 = tail_asymptotic_once(s, af, ctx, N, J);
    CBall r2 = tail_asymptotic_once(s, af, ctx, 2 * N, J);
    CBall diff = ctx.sub(r1, r2);
    Mag est = ctx.abs_upper(diff) * Mag::from_double(10.0);
    CBall out = r2;
    out.err += est;
    out.heuristic = true;
    double tol = -(static_cast<double>(ctx.precision().digits) -
                   static_cast<double>(ctx.precision().guard) / 2.0);
    if (out.err.log10() > tol)
        throw PrecisionExhausted("boundary tail error estimate too large: 1e" +
                                 std::to_string(out.err.log10()));
    return out;
}

// --- boundary: alternating acceleration (Cohen-Rodriguez Villegas-Zagier) ---------------

CBall alternating_once(const HypSeries& s, NumContext& ctx, unsigned long N0, unsigned long d) {
    // exact head below N0, then CVZ on the tail terms
    ExactHead head = exact_head_sum(s.upper, s.lower, Rational(-1), N0, 1);
    CBall acc = ctx.from_rational(head.residue_sums[0]);

    // tail terms b_m = |t_{N0+m}|; the sign alternates strictly once all
    // Pochhammer factors are positive, which N0 >= params guarantees
    Rational t = series_coeff(s, N0);
    Rational tz = t * (N0 % 2 == 0 ? Rational(1) : Rational(-1)); // summand at N0
    int sign0 = tz.sign();

    CBall dd = ctx.pow_int(ctx.add(ctx.from_rational(Rational(3)),
                                   ctx.mul_rat(ctx.sqrt(ctx.from_rational(Rational(2))),
                                               Rational(2))),
                           static_cast<long>(d));
    dd = ctx.mul_rat(ctx.add(dd, ctx.inv(dd)), Rational(1, 2));
    Rational b(-1);
    CBall c = ctx.neg(dd);
    CBall sum = ctx.zero();
    CBall term = ctx.from_rational(tz.abs()); // b_0
    Rational kq(0);
    for (unsigned long k = 0; k < d; ++k) {
        c = ctx.sub(ctx.from_rational(b), c);
        sum = ctx.add(sum, ctx.mul(c, term));
        // b <- (k+d)(k-d) b / ((k+1/2)(k+1))
        Rational kk(static_cast<long>(k));
        b = b * (kk + Rational(static_cast<long>(d))) * (kk - Rational(static_cast<long>(d))) /
            ((kk + Rational(1, 2)) * (kk + Rational(1)));
        // advance |t| to the next term: ratio for z = -1 in absolute value
        unsigned long n = N0 + k;
        Rational num(1), den(static_cast<long>(n) + 1);
        for (const Rational& a : s.upper) num *= (a + Rational(static_cast<long>(n)));
        for (const Rational& bq : s.lower) den *= (bq + Rational(static_cast<long>(n)));
        Rational ratio = (num / den).abs();
        term = ctx.mul_rat(term, ratio);
    }
    CBall tail = ctx.div(sum, dd);
    if (sign0 < 0) tail = ctx.neg(tail);
    return ctx.add(acc, tail);
}

CBall eval_alternating(const HypSeries& s, NumContext& ctx, unsigned long N_hint) {
    unsigned long N0 = std::max<unsigned long>(
        64, static_cast<unsigned long>(
                std::max(param_abs_max(s.upper), param_abs_max(s.lower))) + 8);
    (void)N_hint;
    unsigned long d = static_cast<unsigned long>(
        1.31 * (ctx.precision().digits + ctx.precision().guard) + 12);
    CBall r1 = alternating_once(s, ctx, N0, d);
    CBall r2 = alternating_once(s, ctx, 2 * N0, d + d / 2);
    CBall diff = ctx.sub(r1, r2);
    Mag est = ctx.abs_upper(diff) * Mag::from_double(10.0);
    CBall out = r2;
    out.err += est;
    out.heuristic = true;
    double tol = -(static_cast<double>(ctx.precision().digits) -
                   static_cast<double>(ctx.precision().guard) / 2.0);
    if (out.err.log10() > tol)
        throw PrecisionExhausted("alternating acceleration error estimate too large");
    return out;
}

} // namespace

CBall eval_pfq(const HypSeries& s, NumContext& ctx, const EvalOptions& opts) {
    if (!valid_lower_params(s.lower))
        throw ValidationError("series has invalid lower parameters");
    EvalPlan pl = plan(s, ctx, opts);
    switch (pl.strategy) {
    case EvalPlan::Strategy::direct: {
        ArgForm af = analyze_argument(s.argument, ctx);
        if (af.form == ArgForm::Form::rational) return direct_eval_exact(s, af.rat, ctx);
        return direct_eval_ball(s, ctx);
    }
    case EvalPlan::Strategy::tail_asymptotic: {
        ArgForm af = analyze_argument(s.argument, ctx);
        return eval_tail_asymptotic(s, af, ctx, pl.head_terms, pl.tail_order);
    }
    case EvalPlan::Strategy::alternating_accel:
        return eval_alternating(s, ctx, pl.head_terms);
    }
    throw EvaluationError("unreachable");
}

} // namespace hyperdist
