#include "hyperdist/bernoulli.hpp"

#include <mutex>
#include <vector>

namespace hyperdist {

namespace {
std::mutex g_mutex;
std::vector<Rational> g_bern; // B_0, B_1, ...
}

const Rational& bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(g_mutex);
    if (g_bern.empty()) {
        g_bern.push_back(Rational(1));
        g_bern.push_back(Rational(-1, 2));
    }
    // B_m = -1/(m+1) sum_{k<m} C(m+1, k) B_k
    while (g_bern.size() <= n) {
        unsigned m = static_cast<unsigned>(g_bern.size());
        if (m % 2 == 1) {
            g_bern.push_back(Rational(0));
            continue;
        }
        Rational s(0);
        for (unsigned k = 0; k < m; ++k) {
            if (g_bern[k].is_zero()) continue;
            s += binomial_coeff(m + 1, k) * g_bern[k];
        }
        g_bern.push_back(-s / Rational(static_cast<long>(m) + 1));
    }
    return g_bern[n];
}

Rational zeta_nonpositive_int(unsigned m) {
    if (m == 0) return Rational(-1, 2);
    return -bernoulli(m + 1) / Rational(static_cast<long>(m) + 1);
}

} // namespace hyperdist
