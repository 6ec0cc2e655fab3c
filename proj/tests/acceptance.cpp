// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
//
//   1  exactness of the cycle-accurate simulator against the reference matmul
//   2  worst-case latency grid vs published values
//   3  worst-case energy grid vs published values
//   4  simulated 16x16 worst-case totals vs published 45nm latencies
//   5  8-bit -> 4-bit precision scaling ratios
//   6  synthetic workload fixture: average-case latency / energy / EDP
//   7  workload power x latency arithmetic
//   8  randomized property suite (>= 10^4 cases per property)

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tubgemm/encoding.hpp"
#include "tubgemm/gemm.hpp"
#include "tubgemm/io.hpp"
#include "tubgemm/pe.hpp"
#include "tubgemm/perf.hpp"
#include "tubgemm/random.hpp"
#include "tubgemm/sparsity.hpp"

using namespace tubgemm;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++g_failures;
}

bool close_rel(double got, double want, double rel) {
    return std::abs(got - want) <= rel * std::abs(want) + 1e-12;
}

// --------------------------------------------------------------------------
// 1. Exactness
// --------------------------------------------------------------------------

void criterion1_exactness() {
    const int bit_choices[] = {2, 4, 8};
    const std::int64_t base_choices[] = {1, 2, 4, 8};
    const Polarity pols[] = {Polarity::unipolar, Polarity::bipolar};

    long instances = 0, mismatches = 0;
    std::uint64_t combo = 0;
    for (int bits : bit_choices)
        for (Polarity pol : pols)
            for (std::int64_t nb : base_choices) {
                Rng rng(derive_seed(0xACCE97ULL, combo++));
                for (int rep = 0; rep < 42; ++rep) {
                    GemmConfig cfg;
                    cfg.bitwidth = bits;
                    cfg.polarity = pol;
                    cfg.unary_base = nb;
                    cfg.m = uniform_int(rng, 2, 64);
                    cfg.n = uniform_int(rng, 2, 64);
                    cfg.p = uniform_int(rng, 2, 64);
                    const MatrixI a = random_matrix(rng, cfg.m, cfg.n, bits, pol);
                    const MatrixI b = random_matrix(rng, cfg.n, cfg.p, bits, pol);
                    const MatrixI c = random_matrix(rng, cfg.m, cfg.p, bits, pol);
                    if (simulate_gemm(cfg, a, b, c).y != reference_gemm(a, b, c)) ++mismatches;
                    ++instances;
                }
            }

    // exhaustive PE sweeps at b=2 and b=4, every unary base and polarity
    long pe_pairs = 0, pe_bad = 0;
    for (int bits : {2, 4})
        for (Polarity pol : pols)
            for (std::int64_t nb : base_choices)
                for (std::int64_t a = min_value(bits, pol); a <= max_value(bits, pol); ++a)
                    for (std::int64_t b = min_value(bits, pol); b <= max_value(bits, pol); ++b) {
                        if (pe_multiply(PEState{0, 24}, a, b, bits, nb, pol).accumulator != a * b)
                            ++pe_bad;
                        ++pe_pairs;
                    }

    // randomized sweep at b=8
    Rng rng(0xBEEFULL);
    long rand_pairs = 0;
    for (int iter = 0; iter < 100000; ++iter) {
        const Polarity pol = pols[uniform_below(rng, 2)];
        const std::int64_t nb = base_choices[uniform_below(rng, 4)];
        const std::int64_t a = uniform_int(rng, min_value(8, pol), max_value(8, pol));
        const std::int64_t b = uniform_int(rng, min_value(8, pol), max_value(8, pol));
        if (pe_multiply(PEState{0, 32}, a, b, 8, nb, pol).accumulator != a * b) ++pe_bad;
        ++rand_pairs;
    }

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "exactness: %ld/%ld random instances bit-exact, %ld exhaustive + %ld random "
                  "PE pairs, %ld bad",
                  instances - mismatches, instances, pe_pairs, rand_pairs, pe_bad);
    report(1, mismatches == 0 && pe_bad == 0 && instances >= 1000, buf);
}

// --------------------------------------------------------------------------
// 2/3. Worst-case latency and energy grids
// --------------------------------------------------------------------------

void criterion2_3_wc_grid() {
    const PowerProfile profile = default_power_profile();
    const LatencyModel model;
    int lat_ok = 0, en_ok = 0, total = 0;
    for (const WcReferencePoint& ref : published_n5_worst_case()) {
        GemmConfig cfg;
        cfg.m = cfg.n = cfg.p = ref.array_size;
        cfg.bitwidth = ref.bitwidth;
        cfg.polarity = Polarity::bipolar;
        const double latency_us = analytical_wc_latency(cfg, model, profile) * 1e6;
        if (std::abs(latency_us - ref.latency_us) <= 0.01) ++lat_ok;

        const double power_w =
            profile.find(ref.array_size, ref.bitwidth, Polarity::bipolar, "tsmc-n5").power_w;
        const double energy_nj = energy(power_w, latency_us * 1e-6) * 1e9;
        // +-0.5%, widened to half a unit of the published print where that is larger
        const double tol = std::max(0.005 * ref.energy_nj, 0.005);
        if (std::abs(energy_nj - ref.energy_nj) <= tol + 1e-12) ++en_ok;
        ++total;
    }
    report(2, lat_ok == total,
           "wc-latency grid: " + std::to_string(lat_ok) + "/" + std::to_string(total) +
               " entries within 0.01 us");
    report(3, en_ok == total,
           "wc-energy grid: " + std::to_string(en_ok) + "/" + std::to_string(total) +
               " entries within 0.5% / print rounding");
}

// --------------------------------------------------------------------------
// 4. Simulated worst-case totals at default integer overheads
// --------------------------------------------------------------------------

void criterion4_sim_bounds() {
    const PowerProfile profile = default_power_profile();
    bool all_ok = true;
    std::string detail = "simulated 16-step worst case:";
    for (const Reference45nmPoint& ref : published_45nm_worst_case()) {
        GemmConfig cfg;
        cfg.m = cfg.n = cfg.p = 16;
        cfg.bitwidth = 8;
        cfg.polarity = ref.polarity;
        const std::int64_t max_mag = max_magnitude(8, ref.polarity);
        const MatrixI a =
            MatrixI::Constant(16, 16, ref.polarity == Polarity::bipolar ? -max_mag : max_mag);
        const MatrixI b = MatrixI::Constant(16, 16, max_value(8, ref.polarity));
        const GemmResult res = simulate_gemm(cfg, a, b, MatrixI::Zero(16, 16));
        const double us =
            static_cast<double>(res.report.total_cycles) / profile.frequency_hz * 1e6;
        const bool ok = close_rel(us, ref.latency_us, 0.05);
        all_ok = all_ok && ok;
        char buf[96];
        std::snprintf(buf, sizeof buf, " %s %.4f us vs %.2f us", to_string(ref.polarity), us,
                      ref.latency_us);
        detail += buf;
    }
    report(4, all_ok, detail);
}

// --------------------------------------------------------------------------
// 5. Precision scaling
// --------------------------------------------------------------------------

void criterion5_scaling() {
    const PowerProfile profile = default_power_profile();
    const LatencyModel model;

    GemmConfig c8, c4;
    c8.m = c8.n = c8.p = c4.m = c4.n = c4.p = 16;
    c8.bitwidth = 8;
    c4.bitwidth = 4;
    const double lat_ratio =
        analytical_wc_latency(c8, model, profile) / analytical_wc_latency(c4, model, profile);

    double ratio_sum = 0.0;
    for (int size : {16, 32, 64, 128}) {
        GemmConfig s8 = c8, s4 = c4;
        s8.m = s8.n = s8.p = s4.m = s4.n = s4.p = size;
        const double e8 = energy(profile.find(size, 8, Polarity::bipolar, "tsmc-n5").power_w,
                                 analytical_wc_latency(s8, model, profile));
        const double e4 = energy(profile.find(size, 4, Polarity::bipolar, "tsmc-n5").power_w,
                                 analytical_wc_latency(s4, model, profile));
        ratio_sum += e8 / e4;
    }
    const double energy_ratio = ratio_sum / 4.0;

    char buf[128];
    std::snprintf(buf, sizeof buf, "8b->4b latency ratio %.3f (want 10.6 +-1%%), energy ratio "
                  "%.3f (want 23.9 +-5%%)",
                  lat_ratio, energy_ratio);
    report(5, close_rel(lat_ratio, 10.6, 0.01) && close_rel(energy_ratio, 23.9, 0.05), buf);
}

// --------------------------------------------------------------------------
// 6. Synthetic workload fixture
// --------------------------------------------------------------------------

void criterion6_sparsity_fixture() {
    const PowerProfile profile = default_power_profile();
    const LatencyModel model;
    GemmConfig cfg;
    cfg.m = cfg.n = cfg.p = 16;
    cfg.bitwidth = 8;
    cfg.polarity = Polarity::unipolar;

    const MaxValueHistogram hist = synthetic_mobilenetv2_maxima();
    const auto cdf = cumulative(hist);
    const SparsityReport rep = profile_simulation(cfg, hist, model, profile, "nangate45");
    const AvgCaseReference ref = published_45nm_avg_case();

    const bool shape_ok = hist.counts[0] * 4 == hist.total_ops && cdf[150].second >= 90.0;
    const bool emax_ok = std::abs(rep.expected_max_value - 82.0) <= 1.0;
    const bool lat_ok = close_rel(rep.avg_latency_s * 1e6, ref.avg_latency_us, 0.05);
    const bool en_ok = close_rel(rep.avg_energy_j * 1e6, ref.avg_energy_uj, 0.05);
    const bool edp_ok = close_rel(rep.avg_edp_js * 1e12, ref.avg_edp_uj_us, 0.10);
    const bool ratio_ok = close_rel(rep.wc_ratio, 3.0, 0.05);
    const bool improv_ok =
        close_rel(rep.edp_improvement, ref.wc_edp_uj_us / ref.avg_edp_uj_us, 0.10);

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "fixture: E_max %.2f, avg %.3f us / %.4f uJ / %.4f uJ-us, wc/avg %.2fx, "
                  "EDP gain %.2fx",
                  rep.expected_max_value, rep.avg_latency_s * 1e6, rep.avg_energy_j * 1e6,
                  rep.avg_edp_js * 1e12, rep.wc_ratio, rep.edp_improvement);
    report(6, shape_ok && emax_ok && lat_ok && en_ok && edp_ok && ratio_ok && improv_ok, buf);
}

// --------------------------------------------------------------------------
// 7. Workload power x latency arithmetic
// --------------------------------------------------------------------------

void criterion7_workload_arithmetic() {
    bool all_ok = true;
    std::string detail = "workload energy:";
    for (const WorkloadReferencePoint& ref : published_n5_workloads()) {
        if (ref.workload[0] == '\0') continue;
        const double uj = energy(ref.power_mw * 1e-3, ref.latency_us * 1e-6) * 1e6;
        const bool ok = close_rel(uj, ref.energy_uj, 0.02);
        all_ok = all_ok && ok;
        char buf[96];
        std::snprintf(buf, sizeof buf, " %s %.4f uJ vs %.2f uJ", ref.workload, uj,
                      ref.energy_uj);
        detail += buf;
    }
    report(7, all_ok, detail);
}

// --------------------------------------------------------------------------
// 8. Property suite, >= 10^4 cases per property
// --------------------------------------------------------------------------

void criterion8_properties() {
    const int bit_choices[] = {2, 4, 8};
    const std::int64_t base_choices[] = {1, 2, 4, 8};
    const Polarity pols[] = {Polarity::unipolar, Polarity::bipolar};
    long bad = 0;

    // encode/decode round trip + mass conservation + halving law + monotonicity
    Rng rng(0x8888ULL);
    for (int iter = 0; iter < 10000; ++iter) {
        const int bits = bit_choices[uniform_below(rng, 3)];
        const std::int64_t nb = base_choices[uniform_below(rng, 4)];
        const Polarity pol = pols[uniform_below(rng, 2)];
        const std::int64_t v = uniform_int(rng, min_value(bits, pol), max_value(bits, pol));
        const std::int64_t mag = v < 0 ? -v : v;

        const auto stream = encode(v, bits, nb, pol);
        if (decode(stream, nb, v < 0 ? -1 : 1) != v) ++bad;

        std::int64_t mass = 0;
        for (const auto& ev : stream) mass += ev.residue != 0 ? ev.residue : nb;
        if (mass != mag) ++bad;

        if (nb <= 4 && pulse_cycles(v, 2 * nb) != (pulse_cycles(v, nb) + 1) / 2) ++bad;

        const std::int64_t w = uniform_int(rng, min_value(bits, pol), max_value(bits, pol));
        const std::int64_t wmag = w < 0 ? -w : w;
        if (mag <= wmag && pulse_cycles(v, nb) > pulse_cycles(w, nb)) ++bad;
    }

    // zero-column elision + overhead accounting identity on simulated instances
    for (int iter = 0; iter < 10000; ++iter) {
        GemmConfig cfg;
        cfg.bitwidth = bit_choices[uniform_below(rng, 3)];
        cfg.polarity = pols[uniform_below(rng, 2)];
        cfg.unary_base = base_choices[uniform_below(rng, 4)];
        cfg.m = uniform_int(rng, 1, 5);
        cfg.n = uniform_int(rng, 1, 5);
        cfg.p = uniform_int(rng, 1, 5);
        cfg.step_overhead_cycles = uniform_int(rng, 0, 3);
        cfg.epilogue_cycles = uniform_int(rng, 0, 6);

        MatrixI a = random_matrix(rng, cfg.m, cfg.n, cfg.bitwidth, cfg.polarity);
        const Eigen::Index zeroed = uniform_int(rng, 0, cfg.n - 1);
        a.col(zeroed).setZero();
        const MatrixI b = random_matrix(rng, cfg.n, cfg.p, cfg.bitwidth, cfg.polarity);
        const MatrixI c = random_matrix(rng, cfg.m, cfg.p, cfg.bitwidth, cfg.polarity);

        const GemmResult res = simulate_gemm(cfg, a, b, c);
        if (res.report.per_step_cycles[static_cast<std::size_t>(zeroed)] != 0) ++bad;
        if (res.report.zero_steps < 1) ++bad;
        if (res.report.total_cycles != res.report.compute_cycles() +
                                           cfg.n * cfg.step_overhead_cycles +
                                           cfg.epilogue_cycles)
            ++bad;
        if (res.report.output_valid_cycle != res.report.total_cycles) ++bad;
    }

    report(8, bad == 0,
           "properties: round-trip, mass, halving, monotonicity, zero-column elision, "
           "overhead identity over 2x10^4 cases, " +
               std::to_string(bad) + " violations");
}

} // namespace

int main() {
    criterion1_exactness();
    criterion2_3_wc_grid();
    criterion4_sim_bounds();
    criterion5_scaling();
    criterion6_sparsity_fixture();
    criterion7_workload_arithmetic();
    criterion8_properties();

    if (g_failures == 0) {
        std::printf("ACCEPTANCE: all criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d criteria FAILED\n", g_failures);
    return 1;
}
