#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tubgemm/encoding.hpp"
#include "tubgemm/errors.hpp"
#include "tubgemm/gemm.hpp"
#include "tubgemm/rational.hpp"
#include "tubgemm/sparsity.hpp"

namespace tubgemm {

// Analytical latency model. The per-step overhead is an exact rational,
// back-solved from the published worst-case latency grid; the cycle-accurate
// simulator carries integer overheads instead.
struct LatencyModel {
    Rational step_overhead{9, 4};
    enum class Mode { worst_case, expected };
    Mode mode = Mode::worst_case;
};

// Power and area are cited constants, never computed. One entry per
// synthesized design point; workload-conditioned power rows (from switching
// activity on real traces) carry a workload tag.
struct PowerEntry {
    int array_size = 0; // square m = n = p design point
    int bitwidth = 0;
    Polarity polarity = Polarity::bipolar;
    std::string technology;
    std::string workload; // empty = uniform random vectors (worst-case characterization)
    double power_w = 0.0;
    double area = 0.0;
    std::string area_unit;
    std::string source; // provenance tag, required
};

struct PowerProfile {
    double frequency_hz = 400.0e6;
    std::vector<PowerEntry> entries;

    const PowerEntry* try_find(int array_size, int bitwidth, Polarity polarity,
                               std::string_view technology, std::string_view workload = "") const;
    const PowerEntry& find(int array_size, int bitwidth, Polarity polarity,
                           std::string_view technology, std::string_view workload = "") const;
};

// Built-in dataset: every published tubGEMM design point (45nm and 5nm
// post-synthesis rows plus the workload-conditioned 64x64 rows), source-tagged.
PowerProfile default_power_profile();

// Same schema as the embedded dataset, user-overridable.
PowerProfile load_power_profile(const std::filesystem::path& path);
std::string power_profile_to_json(const PowerProfile& profile);

// Worst-case latency: n steps of the maximum multiply length plus overhead.
double analytical_wc_latency(const GemmConfig& config, const LatencyModel& model,
                             const PowerProfile& profile);

// Average-case latency from a workload's expected maximum magnitude:
// n * (ceil(E_max / unary_base) + overhead) / frequency.
double expected_latency(const GemmConfig& config, const MaxValueHistogram& hist,
                        const LatencyModel& model, const PowerProfile& profile);

// Full-expectation variant: sum_v p(v) * n * (ceil(v / unary_base) + overhead) / f.
double expected_latency_full(const GemmConfig& config, const MaxValueHistogram& hist,
                             const LatencyModel& model, const PowerProfile& profile);

inline double energy(double power_w, double latency_s) { return power_w * latency_s; }

inline double edp(double energy_j, double latency_s) { return energy_j * latency_s; }

// Average-vs-worst-case summary for one design point under one workload.
struct SparsityReport {
    double expected_max_value = 0.0;
    std::int64_t total_ops = 0;
    double avg_latency_s = 0.0;
    double avg_energy_j = 0.0;
    double avg_edp_js = 0.0;
    double wc_latency_s = 0.0;
    double wc_energy_j = 0.0;
    double wc_edp_js = 0.0;
    double wc_ratio = 0.0;        // wc latency / avg latency
    double edp_improvement = 0.0; // wc EDP / avg EDP
};

// Combines expected latency with the design point's power constant.
// `technology` (and optionally `workload`) select the power entry; pass
// power_override_w >= 0 to bypass the profile lookup.
SparsityReport profile_simulation(const GemmConfig& config, const MaxValueHistogram& hist,
                                  const LatencyModel& model, const PowerProfile& profile,
                                  std::string_view technology, std::string_view workload = "",
                                  double power_override_w = -1.0);

SparsityReport profile_simulation(const GemmConfig& config, std::span<const TraceRecord> trace,
                                  const LatencyModel& model, const PowerProfile& profile,
                                  std::string_view technology, std::string_view workload = "",
                                  double power_override_w = -1.0);

// Published post-synthesis reference rows, used by the reproduction suite.
struct WcReferencePoint {
    int array_size;
    int bitwidth;
    double power_mw;
    double area_um2;
    double latency_us;
    double energy_nj;
};
std::span<const WcReferencePoint> published_n5_worst_case();

struct Reference45nmPoint {
    Polarity polarity;
    double power_w;
    double area_mm2;
    double latency_us;
    double energy_uj;
};
std::span<const Reference45nmPoint> published_45nm_worst_case();

struct WorkloadReferencePoint {
    const char* workload; // empty = uniform random vectors
    double power_mw;
    double latency_us;
    double energy_uj;
    double edp_uj_us;
};
std::span<const WorkloadReferencePoint> published_n5_workloads();

// Published 45nm unipolar 16x16 average-case row (INT8 MobileNetv2 maxima).
struct AvgCaseReference {
    double wc_latency_us;
    double wc_energy_uj;
    double wc_edp_uj_us;
    double avg_latency_us;
    double avg_energy_uj;
    double avg_edp_uj_us;
};
AvgCaseReference published_45nm_avg_case();

} // namespace tubgemm
