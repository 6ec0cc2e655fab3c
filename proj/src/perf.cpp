#include "tubgemm/perf.hpp"

#include <array>
#include <fstream>

#include <nlohmann/json.hpp>

namespace tubgemm {

namespace {

void check_model(const LatencyModel& model) {
    if (model.step_overhead.den <= 0 || model.step_overhead.num < 0)
        throw DomainError("analytical step overhead must be a non-negative rational");
}

void check_frequency(const PowerProfile& profile) {
    if (!(profile.frequency_hz > 0.0)) throw DomainError("profile frequency must be positive");
}

double latency_seconds(std::int64_t steps, std::int64_t cycles_per_step,
                       const LatencyModel& model, const PowerProfile& profile) {
    // steps * (cycles_per_step + num/den) / f, kept integer until the division
    const double scaled = static_cast<double>(steps) *
                          static_cast<double>(cycles_per_step * model.step_overhead.den +
                                              model.step_overhead.num);
    return scaled / (static_cast<double>(model.step_overhead.den) * profile.frequency_hz);
}

} // namespace

const PowerEntry* PowerProfile::try_find(int array_size, int bitwidth, Polarity polarity,
                                         std::string_view technology,
                                         std::string_view workload) const {
    for (const PowerEntry& e : entries) {
        if (e.array_size == array_size && e.bitwidth == bitwidth && e.polarity == polarity &&
            e.technology == technology && e.workload == workload)
            return &e;
    }
    return nullptr;
}

const PowerEntry& PowerProfile::find(int array_size, int bitwidth, Polarity polarity,
                                     std::string_view technology,
                                     std::string_view workload) const {
    const PowerEntry* e = try_find(array_size, bitwidth, polarity, technology, workload);
    if (!e)
        throw DomainError("no power entry for " + std::to_string(array_size) + "x" +
                          std::to_string(array_size) + " " + std::to_string(bitwidth) + "-bit " +
                          to_string(polarity) + " in '" + std::string(technology) + "'" +
                          (workload.empty() ? "" : " workload '" + std::string(workload) + "'"));
    return *e;
}

double analytical_wc_latency(const GemmConfig& config, const LatencyModel& model,
                             const PowerProfile& profile) {
    validate(config);
    check_model(model);
    check_frequency(profile);
    const std::int64_t wc = worst_case_mult_cycles(config.bitwidth, config.polarity,
                                                   config.unary_base);
    return latency_seconds(config.n, wc, model, profile);
}

double expected_latency(const GemmConfig& config, const MaxValueHistogram& hist,
                        const LatencyModel& model, const PowerProfile& profile) {
    validate(config);
    check_model(model);
    check_frequency(profile);
    if (hist.bitwidth != config.bitwidth || hist.polarity != config.polarity)
        throw DomainError("histogram bitwidth/polarity does not match the config");
    const Rational e_max = expected_max(hist); // throws on empty histogram
    return latency_seconds(config.n, ceil_div(e_max, config.unary_base), model, profile);
}

double expected_latency_full(const GemmConfig& config, const MaxValueHistogram& hist,
                             const LatencyModel& model, const PowerProfile& profile) {
    validate(config);
    check_model(model);
    check_frequency(profile);
    if (hist.bitwidth != config.bitwidth || hist.polarity != config.polarity)
        throw DomainError("histogram bitwidth/polarity does not match the config");
    if (hist.total_ops <= 0) throw DomainError("empty histogram");
    double acc = 0.0;
    for (std::size_t v = 0; v < hist.counts.size(); ++v) {
        if (hist.counts[v] == 0) continue;
        const double p = static_cast<double>(hist.counts[v]) /
                         static_cast<double>(hist.total_ops);
        acc += p * latency_seconds(config.n,
                                   pulse_cycles(static_cast<std::int64_t>(v), config.unary_base),
                                   model, profile);
    }
    return acc;
}

SparsityReport profile_simulation(const GemmConfig& config, const MaxValueHistogram& hist,
                                  const LatencyModel& model, const PowerProfile& profile,
                                  std::string_view technology, std::string_view workload,
                                  double power_override_w) {
    double power_w = power_override_w;
    if (power_w < 0.0) {
        if (config.m != config.p)
            throw DomainError("profile lookup needs a square PE array; pass a power override");
        power_w = profile.find(static_cast<int>(config.m), config.bitwidth, config.polarity,
                               technology, workload)
                      .power_w;
    }

    SparsityReport report;
    report.expected_max_value = expected_max(hist).as_double();
    report.total_ops = hist.total_ops;
    report.avg_latency_s = expected_latency(config, hist, model, profile);
    report.avg_energy_j = energy(power_w, report.avg_latency_s);
    report.avg_edp_js = edp(report.avg_energy_j, report.avg_latency_s);
    report.wc_latency_s = analytical_wc_latency(config, model, profile);
    report.wc_energy_j = energy(power_w, report.wc_latency_s);
    report.wc_edp_js = edp(report.wc_energy_j, report.wc_latency_s);
    report.wc_ratio = report.avg_latency_s > 0.0 ? report.wc_latency_s / report.avg_latency_s : 0.0;
    report.edp_improvement = report.avg_edp_js > 0.0 ? report.wc_edp_js / report.avg_edp_js : 0.0;
    return report;
}

SparsityReport profile_simulation(const GemmConfig& config, std::span<const TraceRecord> trace,
                                  const LatencyModel& model, const PowerProfile& profile,
                                  std::string_view technology, std::string_view workload,
                                  double power_override_w) {
    if (trace.empty()) throw DomainError("empty workload trace");
    const MaxValueHistogram hist = histogram_from_trace(trace, config.bitwidth, config.polarity);
    return profile_simulation(config, hist, model, profile, technology, workload,
                              power_override_w);
}

namespace {

constexpr const char* kSrcN5 = "tsmc-n5-post-synthesis";
constexpr const char* kSrc45 = "nangate45-post-synthesis";

PowerEntry n5_entry(int size, int bits, double power_mw, double area_um2) {
    return PowerEntry{size, bits, Polarity::bipolar, "tsmc-n5", "", power_mw * 1e-3,
                      area_um2, "um2", kSrcN5};
}

} // namespace

PowerProfile default_power_profile() {
    PowerProfile profile;
    profile.frequency_hz = 400.0e6;
    profile.entries = {
        // NanGate45, 16x16 8-bit, characterized with uniform random vectors.
        PowerEntry{16, 8, Polarity::bipolar, "nangate45", "", 0.025, 0.086, "mm2", kSrc45},
        PowerEntry{16, 8, Polarity::unipolar, "nangate45", "", 0.012, 0.057, "mm2", kSrc45},
        // TSMC N5 grid over array size and bit-width.
        n5_entry(16, 8, 3.75, 2777.71),
        n5_entry(16, 4, 1.66, 1275.12),
        n5_entry(16, 2, 0.91, 692.50),
        n5_entry(32, 8, 21.80, 12560.52),
        n5_entry(32, 4, 8.41, 5270.51),
        n5_entry(32, 2, 3.19, 2804.12),
        n5_entry(64, 8, 85.13, 50384.67),
        n5_entry(64, 4, 39.07, 22507.20),
        n5_entry(64, 2, 16.10, 12108.43),
        n5_entry(128, 8, 417.72, 221689.65),
        n5_entry(128, 4, 209.91, 99030.84),
        n5_entry(128, 2, 96.45, 53765.53),
        // TSMC N5 64x64 8-bit under real-workload switching activity.
        PowerEntry{64, 8, Polarity::bipolar, "tsmc-n5", "mobilenetv2", 49.43e-3, 50384.67, "um2",
                   "tsmc-n5-saif-mobilenetv2"},
        PowerEntry{64, 8, Polarity::bipolar, "tsmc-n5", "resnet50", 56.35e-3, 50384.67, "um2",
                   "tsmc-n5-saif-resnet50"},
    };
    return profile;
}

namespace {

void check_entry(const PowerEntry& e) {
    if (e.source.empty()) throw DomainError("power entry without a source tag");
    if (e.array_size < 1) throw DomainError("power entry with non-positive array size");
    check_bitwidth(e.bitwidth);
    if (!(e.power_w >= 0.0)) throw DomainError("power entry with negative power");
}

} // namespace

PowerProfile load_power_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open profile '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("profile '" + path.string() + "': " + e.what());
    }
    try {
        PowerProfile profile;
        profile.frequency_hz = j.at("frequency_hz").get<double>();
        for (const auto& je : j.at("entries")) {
            PowerEntry e;
            e.array_size = je.at("array_size").get<int>();
            e.bitwidth = je.at("bitwidth").get<int>();
            e.polarity = polarity_from_string(je.at("polarity").get<std::string>());
            e.technology = je.at("technology").get<std::string>();
            e.workload = je.value("workload", std::string{});
            e.power_w = je.at("power_w").get<double>();
            e.area = je.value("area", 0.0);
            e.area_unit = je.value("area_unit", std::string{});
            e.source = je.at("source").get<std::string>();
            check_entry(e);
            profile.entries.push_back(std::move(e));
        }
        check_frequency(profile);
        return profile;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("profile '" + path.string() + "': " + e.what());
    }
}

std::string power_profile_to_json(const PowerProfile& profile) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["frequency_hz"] = profile.frequency_hz;
    j["entries"] = nlohmann::json::array();
    for (const PowerEntry& e : profile.entries) {
        j["entries"].push_back({{"array_size", e.array_size},
                                {"bitwidth", e.bitwidth},
                                {"polarity", to_string(e.polarity)},
                                {"technology", e.technology},
                                {"workload", e.workload},
                                {"power_w", e.power_w},
                                {"area", e.area},
                                {"area_unit", e.area_unit},
                                {"source", e.source}});
    }
    return j.dump(2) + "\n";
}

namespace {

constexpr std::array<WcReferencePoint, 12> kN5WorstCase{{
    {16, 8, 3.75, 2777.71, 2.65, 9.93},
    {16, 4, 1.66, 1275.12, 0.25, 0.42},
    {16, 2, 0.91, 692.50, 0.13, 0.12},
    {32, 8, 21.80, 12560.52, 5.30, 115.55},
    {32, 4, 8.41, 5270.51, 0.50, 4.21},
    {32, 2, 3.19, 2804.12, 0.26, 0.83},
    {64, 8, 85.13, 50384.67, 10.60, 902.33},
    {64, 4, 39.07, 22507.20, 1.00, 39.07},
    {64, 2, 16.10, 12108.43, 0.52, 8.37},
    {128, 8, 417.72, 221689.65, 21.20, 8855.72},
    {128, 4, 209.91, 99030.84, 2.00, 419.82},
    {128, 2, 96.45, 53765.53, 1.04, 100.31},
}};

constexpr std::array<Reference45nmPoint, 2> k45nmWorstCase{{
    {Polarity::bipolar, 0.025, 0.086, 2.65, 0.066},
    {Polarity::unipolar, 0.012, 0.057, 5.29, 0.063},
}};

constexpr std::array<WorkloadReferencePoint, 3> kN5Workloads{{
    {"", 85.13, 10.60, 0.90, 9.54},
    {"mobilenetv2", 49.43, 5.54, 0.27, 1.52},
    {"resnet50", 56.35, 4.66, 0.26, 1.22},
}};

} // namespace

std::span<const WcReferencePoint> published_n5_worst_case() { return kN5WorstCase; }

std::span<const Reference45nmPoint> published_45nm_worst_case() { return k45nmWorstCase; }

std::span<const WorkloadReferencePoint> published_n5_workloads() { return kN5Workloads; }

AvgCaseReference published_45nm_avg_case() {
    return AvgCaseReference{5.29, 0.063, 0.333, 1.72, 0.021, 0.036};
}

} // namespace tubgemm
