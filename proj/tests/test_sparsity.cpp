#include <doctest.h>

#include <cmath>
#include <vector>

#include "tubgemm/random.hpp"
#include "tubgemm/sparsity.hpp"

using namespace tubgemm;

TEST_CASE("histogram_from_matrices") {
    std::vector<MatrixI> ops;
    ops.push_back(MatrixI::Zero(2, 2));
    MatrixI m(2, 2);
    m << 3, -7, 1, 2;
    ops.push_back(m);

    const MaxValueHistogram hist = histogram_from_matrices(ops, 8, Polarity::bipolar);
    CHECK(hist.counts[0] == 1);
    CHECK(hist.counts[7] == 1);
    CHECK(hist.total_ops == 2);

    MatrixI bad(1, 1);
    bad << 200;
    std::vector<MatrixI> out_of_range{bad};
    CHECK_THROWS_AS(histogram_from_matrices(out_of_range, 8, Polarity::bipolar), DomainError);
}

TEST_CASE("histogram counting invariant over random matrices") {
    Rng rng(41);
    std::vector<MatrixI> ops;
    for (int i = 0; i < 100; ++i)
        ops.push_back(random_matrix(rng, 4, 4, 8, Polarity::unipolar));
    const MaxValueHistogram hist = histogram_from_matrices(ops, 8, Polarity::unipolar);
    std::int64_t sum = 0;
    for (std::int64_t c : hist.counts) sum += c;
    CHECK(sum == 100);
    CHECK(hist.total_ops == 100);
}

TEST_CASE("histogram equals binning the per-op maxima stream") {
    Rng rng(42);
    std::vector<MatrixI> ops;
    std::vector<TraceRecord> trace;
    for (int i = 0; i < 200; ++i) {
        ops.push_back(random_matrix(rng, 3, 5, 8, Polarity::bipolar, 0.3));
        const std::int64_t mx = ops.back().cwiseAbs().maxCoeff();
        trace.push_back(TraceRecord{"op" + std::to_string(i), mx});
    }
    const MaxValueHistogram a = histogram_from_matrices(ops, 8, Polarity::bipolar);
    const MaxValueHistogram b = histogram_from_trace(trace, 8, Polarity::bipolar);
    CHECK(a.counts == b.counts);
    CHECK(a.total_ops == b.total_ops);
}

TEST_CASE("cumulative distribution") {
    MaxValueHistogram single = make_histogram(8, Polarity::unipolar);
    single.counts[42] = 1;
    single.total_ops = 1;
    const auto cdf = cumulative(single);
    CHECK(cdf[41].second == doctest::Approx(0.0));
    CHECK(cdf[42].second == doctest::Approx(100.0));
    CHECK(cdf.back().second == doctest::Approx(100.0));
    for (std::size_t i = 1; i < cdf.size(); ++i) CHECK(cdf[i].second >= cdf[i - 1].second);

    MaxValueHistogram empty = make_histogram(8, Polarity::unipolar);
    CHECK_THROWS_AS(cumulative(empty), DomainError);
}

TEST_CASE("expected_max") {
    MaxValueHistogram zeros = make_histogram(8, Polarity::unipolar);
    zeros.counts[0] = 5;
    zeros.total_ops = 5;
    CHECK(expected_max(zeros).as_double() == 0.0);

    MaxValueHistogram uniform = make_histogram(8, Polarity::unipolar);
    uniform.counts[10] = 3;
    uniform.counts[20] = 3;
    uniform.total_ops = 6;
    CHECK(expected_max(uniform).as_double() == doctest::Approx(15.0).epsilon(1e-12));

    CHECK(ceil_div(Rational{82, 1}, 2) == 41);
    CHECK(ceil_div(Rational{83, 1}, 2) == 42);
    CHECK(ceil_div(Rational{165, 2}, 2) == 42); // 82.5 / 2 -> ceil(41.25)
}

TEST_CASE("synthetic workload fixture invariants") {
    const MaxValueHistogram hist = synthetic_mobilenetv2_maxima();
    CHECK(hist.bitwidth == 8);
    CHECK(hist.polarity == Polarity::unipolar);
    CHECK(hist.total_ops == 100000);

    std::int64_t sum = 0;
    for (std::int64_t c : hist.counts) {
        CHECK(c >= 0);
        sum += c;
    }
    CHECK(sum == hist.total_ops);

    // word-level sparsity: a quarter of the operations involve only zeros
    CHECK(hist.counts[0] * 4 == hist.total_ops);
    // mean maximum pinned exactly
    const Rational mean = expected_max(hist);
    CHECK(mean.num == 82 * hist.total_ops);
    // 90% of operations stay at or below 150
    CHECK(cumulative(hist)[150].second >= 90.0);
    // no nonzero value dominates
    for (std::size_t v = 1; v < hist.counts.size(); ++v)
        CHECK(hist.counts[v] * 50 <= hist.total_ops); // each < 2%
    // expectation bound
    std::int64_t top = 0;
    for (std::size_t v = 0; v < hist.counts.size(); ++v)
        if (hist.counts[v] > 0) top = static_cast<std::int64_t>(v);
    CHECK(mean.as_double() >= 0.0);
    CHECK(mean.as_double() <= static_cast<double>(top));
}

TEST_CASE("average simulated cycles track the expected-max model") {
    // Batch where each op's A-columns all contain the op's maximum: the
    // simulator then spends exactly ceil(max/n) cycles per step.
    Rng rng(43);
    GemmConfig cfg;
    cfg.m = cfg.n = cfg.p = 4;
    cfg.bitwidth = 8;
    cfg.polarity = Polarity::unipolar;
    cfg.unary_base = 2;

    std::vector<MatrixI> ops;
    double total_cycles = 0.0;
    for (int i = 0; i < 40; ++i) {
        const std::int64_t mx = uniform_int(rng, 0, 255);
        MatrixI a = MatrixI::Zero(4, 4);
        for (Eigen::Index r = 0; r < 4; ++r)
            for (Eigen::Index c = 0; c < 4; ++c) a(r, c) = uniform_int(rng, 0, mx);
        for (Eigen::Index c = 0; c < 4; ++c) a(uniform_int(rng, 0, 3), c) = mx;
        ops.push_back(a);

        const MatrixI b = random_matrix(rng, 4, 4, 8, Polarity::unipolar);
        const GemmResult res = simulate_gemm(cfg, a, b, MatrixI::Zero(4, 4));
        total_cycles += static_cast<double>(res.report.compute_cycles());
    }
    const double avg_cycles = total_cycles / 40.0;

    const MaxValueHistogram hist = histogram_from_matrices(ops, 8, Polarity::unipolar);
    const double modeled =
        static_cast<double>(cfg.n) *
        static_cast<double>(ceil_div(expected_max(hist), cfg.unary_base));
    // per-step ceil slack stays under one cycle
    CHECK(std::abs(avg_cycles - modeled) < static_cast<double>(cfg.n));
}
