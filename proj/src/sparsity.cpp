#include "tubgemm/sparsity.hpp"

#include <algorithm>
#include <cassert>

namespace tubgemm {

MaxValueHistogram make_histogram(int bitwidth, Polarity polarity) {
    check_bitwidth(bitwidth);
    MaxValueHistogram hist;
    hist.bitwidth = bitwidth;
    hist.polarity = polarity;
    hist.counts.assign(static_cast<std::size_t>(max_magnitude(bitwidth, polarity)) + 1, 0);
    return hist;
}

void add_observation(MaxValueHistogram& hist, std::int64_t max_abs) {
    if (max_abs < 0 || max_abs >= static_cast<std::int64_t>(hist.counts.size()))
        throw DomainError("max magnitude " + std::to_string(max_abs) + " out of range for " +
                          std::to_string(hist.bitwidth) + "-bit " + to_string(hist.polarity));
    ++hist.counts[static_cast<std::size_t>(max_abs)];
    ++hist.total_ops;
}

MaxValueHistogram histogram_from_matrices(std::span<const MatrixI> matrices, int bitwidth,
                                          Polarity polarity) {
    MaxValueHistogram hist = make_histogram(bitwidth, polarity);
    for (const MatrixI& m : matrices) {
        std::int64_t max_abs = 0;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                check_in_range(m(i, j), bitwidth, polarity);
                const std::int64_t mag = m(i, j) < 0 ? -m(i, j) : m(i, j);
                max_abs = std::max(max_abs, mag);
            }
        add_observation(hist, max_abs);
    }
    return hist;
}

MaxValueHistogram histogram_from_trace(std::span<const TraceRecord> trace, int bitwidth,
                                       Polarity polarity) {
    MaxValueHistogram hist = make_histogram(bitwidth, polarity);
    for (const TraceRecord& rec : trace) add_observation(hist, rec.max_abs);
    return hist;
}

std::vector<std::pair<std::int64_t, double>> cumulative(const MaxValueHistogram& hist) {
    if (hist.total_ops <= 0) throw DomainError("empty histogram");
    std::vector<std::pair<std::int64_t, double>> cdf;
    cdf.reserve(hist.counts.size());
    std::int64_t running = 0;
    for (std::size_t v = 0; v < hist.counts.size(); ++v) {
        running += hist.counts[v];
        cdf.emplace_back(static_cast<std::int64_t>(v),
                         100.0 * static_cast<double>(running) /
                             static_cast<double>(hist.total_ops));
    }
    return cdf;
}

Rational expected_max(const MaxValueHistogram& hist) {
    if (hist.total_ops <= 0) throw DomainError("empty histogram");
    std::int64_t weighted = 0;
    for (std::size_t v = 0; v < hist.counts.size(); ++v)
        weighted += static_cast<std::int64_t>(v) * hist.counts[v];
    return Rational{weighted, hist.total_ops};
}

MaxValueHistogram synthetic_mobilenetv2_maxima() {
    constexpr std::int64_t kTotal = 100000;
    constexpr std::int64_t kZeroOps = 25000;  // 25% of operations involve only zeros
    constexpr std::int64_t kHumpOps = 65500;  // broad hump over [42, 150]
    constexpr std::int64_t kTailOps = 9500;   // thin uniform tail over [151, 255]
    constexpr std::int64_t kPeak = 96;
    constexpr std::int64_t kTargetMean = 82;

    MaxValueHistogram hist = make_histogram(8, Polarity::unipolar);
    hist.counts[0] = kZeroOps;

    // Symmetric triangular hump: weight 1 at 42 and 150, peak weight 55 at 96.
    std::int64_t weight_sum = 0;
    for (std::int64_t v = 42; v <= 150; ++v) weight_sum += 55 - std::abs(v - kPeak);
    std::int64_t placed = 0;
    for (std::int64_t v = 42; v <= 150; ++v) {
        const std::int64_t w = 55 - std::abs(v - kPeak);
        const std::int64_t cnt = kHumpOps * w / weight_sum;
        hist.counts[static_cast<std::size_t>(v)] = cnt;
        placed += cnt;
    }
    hist.counts[static_cast<std::size_t>(kPeak)] += kHumpOps - placed;

    // Uniform tail with the integer remainder spread over its lowest bins.
    const std::int64_t tail_bins = 255 - 151 + 1;
    for (std::int64_t v = 151; v <= 255; ++v)
        hist.counts[static_cast<std::size_t>(v)] = kTailOps / tail_bins;
    for (std::int64_t v = 151; v < 151 + kTailOps % tail_bins; ++v)
        ++hist.counts[static_cast<std::size_t>(v)];

    hist.total_ops = kTotal;

    // Pin the mean to exactly 82 by shifting single operations out of the peak
    // bin, staying inside [1, 150] so the zero share and the 90th percentile
    // are untouched.
    std::int64_t weighted = 0;
    for (std::size_t v = 0; v < hist.counts.size(); ++v)
        weighted += static_cast<std::int64_t>(v) * hist.counts[v];
    std::int64_t diff = weighted - kTargetMean * kTotal;
    while (diff != 0) {
        assert(hist.counts[kPeak] > 0);
        const std::int64_t hop = diff > 0 ? std::min<std::int64_t>(diff, kPeak - 1)
                                          : std::min<std::int64_t>(-diff, 150 - kPeak);
        --hist.counts[kPeak];
        ++hist.counts[static_cast<std::size_t>(diff > 0 ? kPeak - hop : kPeak + hop)];
        diff += diff > 0 ? -hop : hop;
    }
    return hist;
}

} // namespace tubgemm
