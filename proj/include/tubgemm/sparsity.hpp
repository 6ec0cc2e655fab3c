#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tubgemm/encoding.hpp"
#include "tubgemm/errors.hpp"
#include "tubgemm/gemm.hpp"
#include "tubgemm/rational.hpp"

namespace tubgemm {

// Counts of per-operation maximum magnitudes over a workload: counts[v] is how
// many matrix-multiply operations had v as their largest absolute input value.
struct MaxValueHistogram {
    int bitwidth = 8;
    Polarity polarity = Polarity::unipolar;
    std::vector<std::int64_t> counts; // index 0 .. max_magnitude(bitwidth, polarity)
    std::int64_t total_ops = 0;
};

MaxValueHistogram make_histogram(int bitwidth, Polarity polarity);

void add_observation(MaxValueHistogram& hist, std::int64_t max_abs);

// One record of a workload trace: an operation and its maximum input magnitude.
struct TraceRecord {
    std::string op_id;
    std::int64_t max_abs = 0;
};

// One histogram increment per matrix, at that matrix's maximum absolute entry.
MaxValueHistogram histogram_from_matrices(std::span<const MatrixI> matrices, int bitwidth,
                                          Polarity polarity);

MaxValueHistogram histogram_from_trace(std::span<const TraceRecord> trace, int bitwidth,
                                       Polarity polarity);

// (value, cumulative percent of operations with maximum <= value); ends at 100.
std::vector<std::pair<std::int64_t, double>> cumulative(const MaxValueHistogram& hist);

// Mean of the per-operation maxima: sum(v * counts[v]) / total_ops, exact.
Rational expected_max(const MaxValueHistogram& hist);

// Synthetic stand-in for the per-feature-map maxima of INT8-quantized
// MobileNetv2 inference, matching its published summary statistics: 25% of
// operations all-zero, mean maximum exactly 82, 90% of maxima at or below 150,
// no nonzero bin above 2%. The shape (a broad hump plus a thin high tail) is
// invented; only those aggregates are meaningful.
MaxValueHistogram synthetic_mobilenetv2_maxima();

} // namespace tubgemm
