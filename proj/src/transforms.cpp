#include "hyperdist/transforms.hpp"

#include "hyperdist/errors.hpp"

#include <sstream>

namespace hyperdist {

ParamList dist_block(const Rational& c, long n, long m) {
    if (n < 1 || m < 0 || m >= n) throw InvalidSpec("dist block needs 0 <= m < n");
    ParamList out;
    out.reserve(static_cast<std::size_t>(n));
    Rational ninv(1, n);
    for (long t = 0; t < n; ++t) out.push_back((c + Rational(m + t)) * ninv);
    return out;
}

ParamList dist_block(const ParamList& cs, long n, long m) {
    ParamList out;
    out.reserve(cs.size() * static_cast<std::size_t>(n));
    for (const Rational& c : cs) {
        ParamList b = dist_block(c, n, m);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

Identity dist(const DistSpec& spec, const DistOptions& opts) {
    const long n = spec.n, m = spec.m;
    if (n < 1 || m < 0 || m >= n) throw InvalidSpec("dist needs 0 <= m < n");
    if (!spec.z.valid()) throw InvalidSpec("dist needs an argument expression");
    const long p = static_cast<long>(spec.upper.size());
    const long q = static_cast<long>(spec.lower.size());
    for (const Rational& a : spec.upper)
        if (pochhammer(a, static_cast<unsigned long>(m)).is_zero())
            throw InvalidSpec("dist prefactor vanishes: (a)_m = 0 for a = " + a.to_string());

    // left side: {1} u D_{n,m}(A) ; D_{n,m}({1} u B)
    ParamList up = {Rational(1)};
    ParamList upA = dist_block(spec.upper, n, m);
    up.insert(up.end(), upA.begin(), upA.end());
    ParamList loC = {Rational(1)};
    loC.insert(loC.end(), spec.lower.begin(), spec.lower.end());
    ParamList lo = dist_block(loC, n, m);
    if (!valid_lower_params(lo))
        throw InvalidSpec("dist produces a nonpositive integer lower parameter");
    HypSeries lhs_series(up, lo, spec.z);
    if (opts.cancel) lhs_series = cancel_parameters(lhs_series);

    // prefactor m! n^(m(p-q-1)-1) z^(-m/n) prod (b)_m / prod (a)_m
    Rational coeff = factorial(static_cast<unsigned long>(m));
    coeff *= Rational(n).pow_int(m * (p - q - 1) - 1);
    for (const Rational& b : spec.lower) coeff *= pochhammer(b, static_cast<unsigned long>(m));
    for (const Rational& a : spec.upper) coeff /= pochhammer(a, static_cast<unsigned long>(m));

    std::vector<Expr> pre;
    pre.push_back(Expr::rational(coeff));
    if (m != 0) pre.push_back(Expr::pow(spec.z, Rational(-m, n)));

    // sum_k e^(-2 pi i k m / n) pFq(A; B; n^(q-p+1) w^k z^(1/n))
    std::vector<Expr> terms;
    Expr scale = Expr::rational(Rational(n).pow_int(q - p + 1));
    Expr zroot = Expr::pow(spec.z, Rational(1, n));
    std::vector<Expr> upE, loE;
    for (const Rational& a : spec.upper) upE.push_back(Expr::rational(a));
    for (const Rational& b : spec.lower) loE.push_back(Expr::rational(b));
    for (long k = 0; k < n; ++k) {
        Expr arg = Expr::mul({scale, Expr::root_of_unity(n, k), zroot});
        Expr series = Expr::hyp(upE, loE, canonical(arg));
        if (m == 0) {
            terms.push_back(series);
        } else {
            terms.push_back(Expr::mul({Expr::root_of_unity(n, ((-k * m) % n + n) % n), series}));
        }
    }
    pre.push_back(Expr::add(std::move(terms)));
    Expr rhs = Expr::mul(std::move(pre));

    Identity id;
    std::ostringstream nm;
    nm << "dist(" << n << "," << m << ")";
    id.name = nm.str();
    id.lhs = hyp_expr(lhs_series);
    id.rhs = canonical(rhs);
    id.provenance = "dist";
    id.validate();
    return id;
}

Identity stir(const HypSeries& s, std::size_t upper_idx, std::size_t lower_idx) {
    if (upper_idx >= s.p() || lower_idx >= s.q()) throw InvalidSpec("stir: index out of range");
    const Rational a = s.upper[upper_idx];
    Rational diff = a - s.lower[lower_idx];
    if (!diff.is_integer() || diff.sign() < 0)
        throw NotIntegerDifference("stir needs upper - lower to be a natural number");
    const long m = diff.to_long();
    const Rational am = a - Rational(m); // the paired lower parameter

    ParamList rest_up, rest_lo;
    for (std::size_t i = 0; i < s.upper.size(); ++i)
        if (i != upper_idx) rest_up.push_back(s.upper[i]);
    for (std::size_t i = 0; i < s.lower.size(); ++i)
        if (i != lower_idx) rest_lo.push_back(s.lower[i]);

    std::vector<Expr> terms;
    for (long k = 0; k <= m; ++k) {
        Rational c = binomial_coeff(static_cast<unsigned long>(m), static_cast<unsigned long>(k));
        Rational denom = pochhammer(am, static_cast<unsigned long>(k));
        if (denom.is_zero())
            throw VanishingPochhammer("stir coefficient denominator (a-m)_k vanishes");
        for (const Rational& aj : rest_up) c *= pochhammer(aj, static_cast<unsigned long>(k));
        for (const Rational& bj : rest_lo) {
            Rational pb = pochhammer(bj, static_cast<unsigned long>(k));
            if (pb.is_zero()) throw VanishingPochhammer("stir coefficient (b)_k vanishes");
            c /= pb;
        }
        c /= denom;
        ParamList up_k, lo_k;
        for (const Rational& aj : rest_up) up_k.push_back(aj + Rational(k));
        for (const Rational& bj : rest_lo) lo_k.push_back(bj + Rational(k));
        if (!valid_lower_params(lo_k))
            throw InvalidSpec("stir produces an invalid shifted series");
        Expr series = hyp_expr(HypSeries(up_k, lo_k, s.argument));
        std::vector<Expr> f = {Expr::rational(c)};
        if (k > 0) f.push_back(Expr::pow(s.argument, Expr::integer(k)));
        f.push_back(series);
        terms.push_back(Expr::mul(std::move(f)));
    }

    Identity id;
    id.name = "stir(m=" + std::to_string(m) + ")";
    id.lhs = hyp_expr(s);
    id.rhs = canonical(Expr::add(std::move(terms)));
    id.provenance = "stir";
    id.validate();
    return id;
}

Identity init(const HypSeries& s, std::size_t upper_idx_of_1, std::size_t lower_idx) {
    if (upper_idx_of_1 >= s.p() || lower_idx >= s.q()) throw InvalidSpec("init: index out of range");
    if (s.upper[upper_idx_of_1] != Rational(1))
        throw InvalidSpec("init needs the selected upper parameter to be 1");
    Rational nn = s.lower[lower_idx] - Rational(1);
    if (!nn.is_integer() || nn.sign() <= 0)
        throw InvalidSpec("init needs the selected lower parameter to be n+1 with n >= 1");
    const long n = nn.to_long();
    const long p = static_cast<long>(s.p());
    const long q = static_cast<long>(s.q());

    ParamList rest_up, rest_lo;
    for (std::size_t i = 0; i < s.upper.size(); ++i)
        if (i != upper_idx_of_1) rest_up.push_back(s.upper[i]);
    for (std::size_t i = 0; i < s.lower.size(); ++i)
        if (i != lower_idx) rest_lo.push_back(s.lower[i]);

    // prefactor (-1)^((p-q)n) n! prod (1-b)_n / (z^n prod (1-a)_n)
    Rational coeff = factorial(static_cast<unsigned long>(n));
    if (((p - q) * n) % 2 != 0) coeff = -coeff;
    for (const Rational& bj : rest_lo) coeff *= pochhammer(Rational(1) - bj, static_cast<unsigned long>(n));
    for (const Rational& aj : rest_up) {
        Rational pa = pochhammer(Rational(1) - aj, static_cast<unsigned long>(n));
        if (pa.is_zero())
            throw VanishingPochhammer("init prefactor (1-a)_n vanishes for a = " + aj.to_string());
        coeff /= pa;
    }

    ParamList up_s, lo_s;
    for (const Rational& aj : rest_up) up_s.push_back(aj - Rational(n));
    for (const Rational& bj : rest_lo) lo_s.push_back(bj - Rational(n));
    if (!valid_lower_params(lo_s))
        throw InvalidSpec("init produces a nonpositive integer shifted lower parameter");
    Expr shifted = hyp_expr(HypSeries(up_s, lo_s, s.argument));

    // initial terms sum_{k<n} z^k prod (a-n)_k / (k! prod (b-n)_k)
    std::vector<Expr> head;
    for (long k = 0; k < n; ++k) {
        Rational c(1);
        for (const Rational& aj : up_s) c *= pochhammer(aj, static_cast<unsigned long>(k));
        for (const Rational& bj : lo_s) {
            Rational pb = pochhammer(bj, static_cast<unsigned long>(k));
            if (pb.is_zero()) throw VanishingPochhammer("init head term denominator vanishes");
            c /= pb;
        }
        c /= factorial(static_cast<unsigned long>(k));
        std::vector<Expr> f = {Expr::rational(c)};
        if (k > 0) f.push_back(Expr::pow(s.argument, Expr::integer(k)));
        head.push_back(f.size() == 1 ? f[0] : Expr::mul(std::move(f)));
    }

    Expr inner = Expr::sub(shifted, Expr::add(std::move(head)));
    Expr rhs = Expr::mul({Expr::rational(coeff), Expr::pow(s.argument, Expr::integer(-n)), inner});

    Identity id;
    id.name = "init(n=" + std::to_string(n) + ")";
    id.lhs = hyp_expr(s);
    id.rhs = canonical(rhs);
    id.provenance = "init";
    id.validate();
    return id;
}

Identity pfd(const HypSeries& s, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    if (pairs.empty()) throw InvalidSpec("pfd needs at least one pair");
    std::vector<bool> up_used(s.p(), false), lo_used(s.q(), false);
    ParamList heads;
    for (const auto& [ui, li] : pairs) {
        if (ui >= s.p() || li >= s.q()) throw InvalidSpec("pfd: index out of range");
        if (up_used[ui] || lo_used[li]) throw InvalidSpec("pfd: repeated index");
        if (s.lower[li] != s.upper[ui] + Rational(1))
            throw InvalidSpec("pfd needs lower = upper + 1 in each pair");
        up_used[ui] = true;
        lo_used[li] = true;
        heads.push_back(s.upper[ui]);
    }
    for (std::size_t i = 0; i < heads.size(); ++i)
        for (std::size_t j = i + 1; j < heads.size(); ++j)
            if (heads[i] == heads[j])
                throw DuplicateParameter("pfd needs pairwise distinct paired parameters");

    ParamList rest_up, rest_lo;
    for (std::size_t i = 0; i < s.upper.size(); ++i)
        if (!up_used[i]) rest_up.push_back(s.upper[i]);
    for (std::size_t i = 0; i < s.lower.size(); ++i)
        if (!lo_used[i]) rest_lo.push_back(s.lower[i]);

    std::vector<Expr> terms;
    for (std::size_t k = 0; k < heads.size(); ++k) {
        Rational c(1);
        for (std::size_t j = 0; j < heads.size(); ++j)
            if (j != k) c *= heads[j] / (heads[j] - heads[k]);
        ParamList up_k = {heads[k]};
        up_k.insert(up_k.end(), rest_up.begin(), rest_up.end());
        ParamList lo_k = {heads[k] + Rational(1)};
        lo_k.insert(lo_k.end(), rest_lo.begin(), rest_lo.end());
        Expr series = hyp_expr(HypSeries(up_k, lo_k, s.argument));
        terms.push_back(c == Rational(1) ? series : Expr::mul({Expr::rational(c), series}));
    }

    Identity id;
    id.name = "pfd(n=" + std::to_string(pairs.size()) + ")";
    id.lhs = hyp_expr(s);
    id.rhs = canonical(terms.size() == 1 ? terms[0] : Expr::add(std::move(terms)));
    id.provenance = "pfd";
    id.validate();
    return id;
}

Rational root_of_unity_sum(long n, long d) {
    if (n <= 0) throw DomainError("root_of_unity_sum: order must be positive");
    d %= n;
    if (d < 0) d += n;
    if (d == 0) return Rational(n);
    // geometric series: (w^(dn) - 1)/(w^d - 1) with w^d != 1
    return Rational(0);
}

} // namespace hyperdist
