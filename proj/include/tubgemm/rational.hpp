#pragma once

#include <cstdint>

namespace tubgemm {

// Exact ratio of 64-bit integers. Enough arithmetic for cycle bookkeeping;
// not a general rational class.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double as_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// ceil(r / divisor) for r >= 0, divisor >= 1, without leaving integer arithmetic.
inline std::int64_t ceil_div(const Rational& r, std::int64_t divisor) {
    const std::int64_t d = r.den * divisor;
    return (r.num + d - 1) / d;
}

} // namespace tubgemm
