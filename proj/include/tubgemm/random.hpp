#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tubgemm/encoding.hpp"
#include "tubgemm/gemm.hpp"
#include "tubgemm/sparsity.hpp"

namespace tubgemm {

// mt19937_64 plus hand-rolled bounded sampling: std distributions are
// implementation-defined, and gen outputs must be byte-identical everywhere.
using Rng = std::mt19937_64;

// splitmix64 finalizer; derives stable per-instance seeds from a manifest seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform draw in [0, bound) via 128-bit multiply-shift.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Entries uniform over the declared range; zero_fraction >= 0 fixes P(zero)
// exactly, with the remaining mass uniform over the nonzero values.
inline MatrixI random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, int bitwidth,
                             Polarity polarity, double zero_fraction = -1.0) {
    const std::int64_t lo = min_value(bitwidth, polarity);
    const std::int64_t hi = max_value(bitwidth, polarity);
    MatrixI m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (zero_fraction >= 0.0) {
                if (uniform_unit(rng) < zero_fraction) {
                    m(i, j) = 0;
                } else {
                    std::int64_t v = uniform_int(rng, lo, hi - 1);
                    m(i, j) = v >= 0 ? v + 1 : v; // skip zero
                }
            } else {
                m(i, j) = uniform_int(rng, lo, hi);
            }
        }
    return m;
}

inline std::vector<TraceRecord> random_trace(Rng& rng, std::int64_t count, int bitwidth,
                                             Polarity polarity, double zero_fraction = -1.0) {
    const std::int64_t max_mag = max_magnitude(bitwidth, polarity);
    std::vector<TraceRecord> trace;
    trace.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        std::int64_t v;
        if (zero_fraction >= 0.0) {
            v = uniform_unit(rng) < zero_fraction ? 0 : uniform_int(rng, 1, max_mag);
        } else {
            v = uniform_int(rng, 0, max_mag);
        }
        trace.push_back(TraceRecord{"op" + std::to_string(i), v});
    }
    return trace;
}

} // namespace tubgemm
