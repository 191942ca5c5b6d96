#include "hyperdist/real.hpp"

#include <cstdio>
#include <vector>

namespace hyperdist {

std::string Real::to_string(int digits) const {
    if (digits < 2) digits = 2;
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, x_);
    return std::string(buf.data());
}

} // namespace hyperdist
