#pragma once

#include "hyperdist/identity.hpp"
#include "hyperdist/series.hpp"

namespace hyperdist {

// Parameter block {(c+m)/n, (c+m+1)/n, ..., (c+m+n-1)/n}
ParamList dist_block(const Rational& c, long n, long m);
ParamList dist_block(const ParamList& cs, long n, long m);

struct DistSpec {
    long n = 1;
    long m = 0;
    Expr z;
    ParamList upper; // A
    ParamList lower; // B
};

struct DistOptions {
    bool cancel = true; // present the cancelled left-hand series
};

// The distribution relation: expresses one higher-order series at z as a
// root-of-unity average of n series at scaled arguments.
Identity dist(const DistSpec& spec, const DistOptions& opts = {});

// rewrites driven by an integer parameter excess / initial-term elimination /
// partial fractions over upper-lower pairs differing by one
Identity stir(const HypSeries& s, std::size_t upper_idx, std::size_t lower_idx);
Identity init(const HypSeries& s, std::size_t upper_idx_of_1, std::size_t lower_idx);
Identity pfd(const HypSeries& s, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

// exact value of sum_{k=0}^{n-1} e^{2 pi i k d / n}: n when d = 0 mod n, else 0
Rational root_of_unity_sum(long n, long d);

} // namespace hyperdist
