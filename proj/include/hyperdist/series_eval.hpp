#pragma once

#include "hyperdist/numctx.hpp"
#include "hyperdist/series.hpp"

#include <optional>
#include <vector>

namespace hyperdist {

struct EvalPlan {
    enum class Strategy { direct, tail_asymptotic, alternating_accel };
    Strategy strategy = Strategy::direct;
    unsigned long head_terms = 0; // N, for the boundary strategies
    unsigned tail_order = 10;     // J
};

const char* strategy_name(EvalPlan::Strategy s);

struct EvalOptions {
    unsigned long head_terms = 0; // 0: derive from the precision (max(512, 32*digits))
    unsigned tail_order = 10;
};

// classification of an exact argument: rational, or r * e^(2 pi i j / M) with
// the positive real part r exactly 1 (unit-modulus root of unity)
struct ArgForm {
    enum class Form { rational, unit_root, numeric } form = Form::numeric;
    Rational rat;      // Form::rational
    long M = 1, j = 0; // Form::unit_root: z = e^(2 pi i j / M)
};

ArgForm analyze_argument(const Expr& arg, NumContext& ctx);

EvalPlan plan(const HypSeries& s, NumContext& ctx, const EvalOptions& opts = {});

// numeric value of the series; heuristic rigor on the boundary strategies
CBall eval_pfq(const HypSeries& s, NumContext& ctx, const EvalOptions& opts = {});

// exact coefficients of the large-n expansion of the term ratio product:
//   prod (a_i)_n / (prod (b_j)_n n!) ~ C n^-alpha (e_0 + e_1/n + ...), e_0 = 1
// with alpha = 1 + sum(B) - sum(A) and C = prod Gamma(b) / prod Gamma(a)
struct TailExpansion {
    Rational alpha;
    std::vector<Rational> coeffs;
};
TailExpansion tail_expansion(const ParamList& upper, const ParamList& lower, unsigned order);

// Exact head sum helpers (single big fraction, no per-term reduction):
// sums of t_k over k < N restricted to residue classes mod M, all over one
// common denominator. With M = 1 this is the plain partial sum.
struct ExactHead {
    std::vector<Rational> residue_sums; // index r = k mod M
};
ExactHead exact_head_sum(const ParamList& upper, const ParamList& lower, const Rational& z,
                         unsigned long N, unsigned long M);

} // namespace hyperdist
