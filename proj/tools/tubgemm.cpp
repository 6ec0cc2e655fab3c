// tubgemm: command-line frontend for the tub GEMM unit model.
//
// Subcommands:
//   gemm      cycle-accurate simulation of Y = A x B + C from CSV matrices
//   compare   bit-exact check of the simulator against the reference matmul
//   estimate  analytical worst-case latency / energy / EDP for a design point
//   profile   workload sparsity analysis from a trace or histogram file
//   gen       seeded random matrices, traces, and the synthetic workload fixture
//   repro     reproduction suite against the published reference tables
//
// Exit codes: 0 success, 2 usage, 3 parse, 4 domain/range, 5 overflow, 6 mismatch.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tubgemm/gemm.hpp"
#include "tubgemm/io.hpp"
#include "tubgemm/perf.hpp"
#include "tubgemm/random.hpp"
#include "tubgemm/sparsity.hpp"

using json = nlohmann::json;
using namespace tubgemm;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitDomain = 4;
constexpr int kExitOverflow = 5;
constexpr int kExitMismatch = 6;
constexpr int kSchemaVersion = 1;

struct CommonOpts {
    int bits = 8;
    std::string polarity = "bipolar";
    std::int64_t unary_base = 2;
    std::string format = "json";
    std::string out;
    std::string profile_path;
    std::string analytical_overhead = "9/4";
    std::uint64_t seed = 1;
};

void add_value_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--bits", opts.bits, "Element bit-width (2|4|8)");
    cmd->add_option("--polarity", opts.polarity, "unipolar|bipolar");
    cmd->add_option("--unary-base", opts.unary_base, "Magnitude per unary cycle (1|2|4|8)");
}

void add_output_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opts.out, "Report path (stdout when omitted)");
}

void add_profile_flag(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--profile", opts.profile_path,
                    "Power profile JSON (default: TUBGEMM_PROFILE env var, else built-in)");
    cmd->add_option("--analytical-overhead", opts.analytical_overhead,
                    "Analytical per-step overhead cycles as a rational, e.g. 9/4");
}

PowerProfile resolve_profile(const CommonOpts& opts) {
    if (!opts.profile_path.empty()) return load_power_profile(opts.profile_path);
    if (const char* env = std::getenv("TUBGEMM_PROFILE"); env && *env)
        return load_power_profile(env);
    return default_power_profile();
}

Rational parse_rational(const std::string& text) {
    std::int64_t num = 0, den = 1;
    const std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            num = std::stoll(text);
        } else {
            num = std::stoll(text.substr(0, slash));
            den = std::stoll(text.substr(slash + 1));
        }
    } catch (const std::exception&) {
        throw DomainError("bad rational '" + text + "'");
    }
    if (den <= 0 || num < 0) throw DomainError("overhead must be a non-negative rational");
    return Rational{num, den};
}

LatencyModel resolve_model(const CommonOpts& opts) {
    LatencyModel model;
    model.step_overhead = parse_rational(opts.analytical_overhead);
    return model;
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opts.out);
    if (!file) throw ParseError("cannot write '" + opts.out + "'");
    file << text;
}

std::string render_scalar_report(const CommonOpts& opts, const json& j) {
    if (opts.format == "json") return j.dump(2) + "\n";
    std::ostringstream csv;
    csv << "metric,value\n";
    for (const auto& [key, value] : j.items()) {
        if (value.is_structured()) continue;
        csv << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump())
            << '\n';
    }
    return csv.str();
}

json config_json(const GemmConfig& cfg) {
    return json{{"m", cfg.m},
                {"n", cfg.n},
                {"p", cfg.p},
                {"bitwidth", cfg.bitwidth},
                {"polarity", to_string(cfg.polarity)},
                {"unary_base", cfg.unary_base},
                {"step_overhead_cycles", cfg.step_overhead_cycles},
                {"epilogue_cycles", cfg.epilogue_cycles},
                {"acc_width", cfg.resolved_acc_width()}};
}

json report_json(const CycleReport& report) {
    return json{{"per_step_cycles", report.per_step_cycles},
                {"compute_cycles", report.compute_cycles()},
                {"total_cycles", report.total_cycles},
                {"output_valid_cycle", report.output_valid_cycle},
                {"zero_steps", report.zero_steps}};
}

// ---------------------------------------------------------------------------
// gemm
// ---------------------------------------------------------------------------

struct GemmOpts {
    CommonOpts common;
    std::string a_path, b_path, c_path;
    std::string out_y;
    std::int64_t step_overhead = 2;
    std::int64_t epilogue = 4;
    int acc_width = 0;
};

MatrixOperands load_operands(const GemmOpts& opts) {
    MatrixOperands ops;
    ops.a = read_matrix_csv(opts.a_path);
    ops.b = read_matrix_csv(opts.b_path);
    ops.c = opts.c_path.empty() ? MatrixI::Zero(ops.a.rows(), ops.b.cols()).eval()
                                : read_matrix_csv(opts.c_path);
    return ops;
}

GemmConfig config_from(const GemmOpts& opts, const MatrixOperands& ops) {
    GemmConfig cfg;
    cfg.m = ops.a.rows();
    cfg.n = ops.a.cols();
    cfg.p = ops.b.cols();
    cfg.bitwidth = opts.common.bits;
    cfg.polarity = polarity_from_string(opts.common.polarity);
    cfg.unary_base = opts.common.unary_base;
    cfg.step_overhead_cycles = opts.step_overhead;
    cfg.epilogue_cycles = opts.epilogue;
    cfg.acc_width = opts.acc_width;
    return cfg;
}

int run_gemm(const GemmOpts& opts) {
    const MatrixOperands ops = load_operands(opts);
    const GemmConfig cfg = config_from(opts, ops);
    const GemmResult result = simulate_gemm(cfg, ops);

    if (opts.out_y.empty()) {
        write_matrix_csv(std::cout, result.y);
    } else {
        write_matrix_csv(opts.out_y, result.y);
    }

    json j;
    j["schema_version"] = kSchemaVersion;
    j["manifest"] = {{"subcommand", "gemm"},
                     {"inputs", {opts.a_path, opts.b_path, opts.c_path}},
                     {"output", opts.out_y}};
    j["config"] = config_json(cfg);
    j["report"] = report_json(result.report);
    emit(opts.common, render_scalar_report(opts.common, j));
    return 0;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareOpts {
    GemmOpts gemm;
    std::int64_t sweep = 0;
    std::int64_t max_dim = 64;
    bool inject_fault = false; // negative-control hook for tests
};

int compare_once(const GemmConfig& cfg, const MatrixOperands& ops, bool inject_fault,
                 json* detail) {
    GemmResult sim = simulate_gemm(cfg, ops);
    const MatrixI ref = reference_gemm(ops);
    if (inject_fault && sim.y.size() > 0) sim.y(0, 0) += 1;
    for (Eigen::Index i = 0; i < ref.rows(); ++i)
        for (Eigen::Index j = 0; j < ref.cols(); ++j)
            if (sim.y(i, j) != ref(i, j)) {
                if (detail)
                    (*detail) = json{{"row", i},
                                     {"col", j},
                                     {"simulated", sim.y(i, j)},
                                     {"reference", ref(i, j)}};
                return kExitMismatch;
            }
    return 0;
}

int run_compare(const CompareOpts& opts) {
    if (opts.sweep <= 0) {
        if (opts.gemm.a_path.empty() || opts.gemm.b_path.empty())
            throw DomainError("pass --a and --b, or --sweep N");
        const MatrixOperands ops = load_operands(opts.gemm);
        const GemmConfig cfg = config_from(opts.gemm, ops);
        json detail;
        const int rc = compare_once(cfg, ops, opts.inject_fault, &detail);
        json j;
        j["schema_version"] = kSchemaVersion;
        j["manifest"] = {{"subcommand", "compare"},
                         {"inputs", {opts.gemm.a_path, opts.gemm.b_path, opts.gemm.c_path}}};
        j["match"] = rc == 0;
        if (rc != 0) j["first_mismatch"] = detail;
        emit(opts.gemm.common, render_scalar_report(opts.gemm.common, j));
        if (rc != 0)
            std::cerr << "mismatch at (" << detail["row"] << "," << detail["col"] << "): "
                      << detail["simulated"] << " != " << detail["reference"] << "\n";
        return rc;
    }

    // randomized sweep: independent instances with seeds derived per index
    const int bit_choices[] = {2, 4, 8};
    const std::int64_t base_choices[] = {1, 2, 4, 8};
    std::int64_t failures = 0;
    for (std::int64_t i = 0; i < opts.sweep; ++i) {
        Rng rng(derive_seed(opts.gemm.common.seed, static_cast<std::uint64_t>(i)));
        GemmConfig cfg;
        cfg.bitwidth = bit_choices[uniform_below(rng, 3)];
        cfg.polarity = uniform_below(rng, 2) ? Polarity::bipolar : Polarity::unipolar;
        cfg.unary_base = base_choices[uniform_below(rng, 4)];
        cfg.m = uniform_int(rng, 2, opts.max_dim);
        cfg.n = uniform_int(rng, 2, opts.max_dim);
        cfg.p = uniform_int(rng, 2, opts.max_dim);
        MatrixOperands ops;
        ops.a = random_matrix(rng, cfg.m, cfg.n, cfg.bitwidth, cfg.polarity);
        ops.b = random_matrix(rng, cfg.n, cfg.p, cfg.bitwidth, cfg.polarity);
        ops.c = random_matrix(rng, cfg.m, cfg.p, cfg.bitwidth, cfg.polarity);
        if (compare_once(cfg, ops, opts.inject_fault, nullptr) != 0) ++failures;
    }

    json j;
    j["schema_version"] = kSchemaVersion;
    j["manifest"] = {{"subcommand", "compare"},
                     {"seed", opts.gemm.common.seed},
                     {"sweep", opts.sweep},
                     {"max_dim", opts.max_dim}};
    j["instances"] = opts.sweep;
    j["failures"] = failures;
    j["match"] = failures == 0;
    emit(opts.gemm.common, render_scalar_report(opts.gemm.common, j));
    return failures == 0 ? 0 : kExitMismatch;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

struct EstimateOpts {
    CommonOpts common;
    std::int64_t m = 16, n = 16, p = 16;
    std::string technology = "tsmc-n5";
    std::string workload;
    double power_override = -1.0;
    bool table = false;
    bool dump_profile = false;
};

GemmConfig estimate_config(const EstimateOpts& opts) {
    GemmConfig cfg;
    cfg.m = opts.m;
    cfg.n = opts.n;
    cfg.p = opts.p;
    cfg.bitwidth = opts.common.bits;
    cfg.polarity = polarity_from_string(opts.common.polarity);
    cfg.unary_base = opts.common.unary_base;
    return cfg;
}

int run_estimate(const EstimateOpts& opts) {
    const PowerProfile profile = resolve_profile(opts.common);
    const LatencyModel model = resolve_model(opts.common);

    if (opts.dump_profile) {
        emit(opts.common, power_profile_to_json(profile));
        return 0;
    }

    if (opts.table) {
        json rows = json::array();
        bool all_ok = true;
        for (const WcReferencePoint& ref : published_n5_worst_case()) {
            GemmConfig cfg;
            cfg.m = cfg.n = cfg.p = ref.array_size;
            cfg.bitwidth = ref.bitwidth;
            cfg.polarity = Polarity::bipolar;
            cfg.unary_base = opts.common.unary_base;
            const double latency_us = analytical_wc_latency(cfg, model, profile) * 1e6;
            const PowerEntry& entry =
                profile.find(ref.array_size, ref.bitwidth, Polarity::bipolar, "tsmc-n5");
            const double energy_nj = energy(entry.power_w, latency_us * 1e-6) * 1e9;
            const bool lat_ok = std::abs(latency_us - ref.latency_us) <= 0.01;
            const bool en_ok = std::abs(energy_nj - ref.energy_nj) <=
                               std::max(0.005 * ref.energy_nj, 0.005) + 1e-12;
            all_ok = all_ok && lat_ok && en_ok;
            rows.push_back({{"array_size", ref.array_size},
                            {"bitwidth", ref.bitwidth},
                            {"latency_us", latency_us},
                            {"published_latency_us", ref.latency_us},
                            {"latency_ok", lat_ok},
                            {"energy_nj", energy_nj},
                            {"published_energy_nj", ref.energy_nj},
                            {"energy_ok", en_ok}});
        }
        json j;
        j["schema_version"] = kSchemaVersion;
        j["manifest"] = {{"subcommand", "estimate"}, {"table", true}};
        j["rows"] = rows;
        j["all_ok"] = all_ok;
        if (opts.common.format == "csv") {
            std::ostringstream csv;
            csv << "array_size,bitwidth,latency_us,published_latency_us,latency_ok,"
                   "energy_nj,published_energy_nj,energy_ok\n";
            for (const auto& r : rows)
                csv << r["array_size"] << ',' << r["bitwidth"] << ',' << r["latency_us"] << ','
                    << r["published_latency_us"] << ',' << (r["latency_ok"].get<bool>() ? 1 : 0)
                    << ',' << r["energy_nj"] << ',' << r["published_energy_nj"] << ','
                    << (r["energy_ok"].get<bool>() ? 1 : 0) << '\n';
            emit(opts.common, csv.str());
        } else {
            emit(opts.common, j.dump(2) + "\n");
        }
        return all_ok ? 0 : kExitMismatch;
    }

    const GemmConfig cfg = estimate_config(opts);
    double power_w = opts.power_override;
    double area = 0.0;
    std::string area_unit, source = "user-override";
    if (power_w < 0.0) {
        if (cfg.m != cfg.p)
            throw DomainError("profile lookup needs a square PE array; pass --power");
        const PowerEntry& entry = profile.find(static_cast<int>(cfg.m), cfg.bitwidth,
                                               cfg.polarity, opts.technology, opts.workload);
        power_w = entry.power_w;
        area = entry.area;
        area_unit = entry.area_unit;
        source = entry.source;
    }

    const double latency_s = analytical_wc_latency(cfg, model, profile);
    const double energy_j = energy(power_w, latency_s);

    json j;
    j["schema_version"] = kSchemaVersion;
    j["manifest"] = {{"subcommand", "estimate"},
                     {"technology", opts.technology},
                     {"workload", opts.workload}};
    j["config"] = config_json(cfg);
    j["wc_latency_s"] = latency_s;
    j["wc_latency_us"] = latency_s * 1e6;
    j["wc_energy_j"] = energy_j;
    j["wc_energy_nj"] = energy_j * 1e9;
    j["wc_edp_js"] = edp(energy_j, latency_s);
    j["power_w"] = power_w;
    j["area"] = area;
    j["area_unit"] = area_unit;
    j["source"] = source;
    emit(opts.common, render_scalar_report(opts.common, j));
    return 0;
}

// ---------------------------------------------------------------------------
// profile
// ---------------------------------------------------------------------------

struct ProfileOpts {
    CommonOpts common;
    std::string trace_path;
    std::string hist_path;
    std::int64_t m = 16, n = 16, p = 16;
    std::string technology = "nangate45";
    std::string workload;
    double power_override = -1.0;
};

int run_profile(const ProfileOpts& opts) {
    if (opts.trace_path.empty() == opts.hist_path.empty())
        throw DomainError("pass exactly one of --trace or --hist");

    GemmConfig cfg;
    cfg.m = opts.m;
    cfg.n = opts.n;
    cfg.p = opts.p;
    cfg.bitwidth = opts.common.bits;
    cfg.polarity = polarity_from_string(opts.common.polarity);
    cfg.unary_base = opts.common.unary_base;

    MaxValueHistogram hist =
        opts.hist_path.empty()
            ? histogram_from_trace(read_trace_csv(opts.trace_path), cfg.bitwidth, cfg.polarity)
            : read_histogram_csv(opts.hist_path, cfg.bitwidth, cfg.polarity);
    if (hist.total_ops <= 0) throw DomainError("empty workload trace");

    const PowerProfile profile = resolve_profile(opts.common);
    const LatencyModel model = resolve_model(opts.common);
    const SparsityReport report = profile_simulation(cfg, hist, model, profile, opts.technology,
                                                     opts.workload, opts.power_override);
    const auto cdf = cumulative(hist);

    json j;
    j["schema_version"] = kSchemaVersion;
    j["manifest"] = {{"subcommand", "profile"},
                     {"trace", opts.trace_path},
                     {"hist", opts.hist_path},
                     {"technology", opts.technology},
                     {"workload", opts.workload}};
    j["config"] = config_json(cfg);
    j["total_ops"] = report.total_ops;
    j["expected_max"] = report.expected_max_value;
    j["avg_latency_s"] = report.avg_latency_s;
    j["avg_latency_us"] = report.avg_latency_s * 1e6;
    j["avg_energy_j"] = report.avg_energy_j;
    j["avg_edp_js"] = report.avg_edp_js;
    j["wc_latency_s"] = report.wc_latency_s;
    j["wc_energy_j"] = report.wc_energy_j;
    j["wc_edp_js"] = report.wc_edp_js;
    j["wc_to_avg_latency_ratio"] = report.wc_ratio;
    j["edp_improvement"] = report.edp_improvement;

    if (opts.common.format == "csv") {
        std::ostringstream csv;
        csv << render_scalar_report(opts.common, j);
        csv << "\nvalue,count,cumulative_percent\n";
        for (const auto& [value, pct] : cdf)
            csv << value << ',' << hist.counts[static_cast<std::size_t>(value)] << ',' << pct
                << '\n';
        emit(opts.common, csv.str());
    } else {
        j["histogram"] = {{"bitwidth", hist.bitwidth},
                          {"polarity", to_string(hist.polarity)},
                          {"counts", hist.counts}};
        json jc = json::array();
        for (const auto& [value, pct] : cdf) jc.push_back({value, pct});
        j["cumulative"] = jc;
        emit(opts.common, j.dump(2) + "\n");
    }
    return 0;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOpts {
    CommonOpts common;
    std::string kind = "matrix";
    std::int64_t rows = 4, cols = 4;
    std::int64_t count = 1000;
    double zero_fraction = -1.0;
};

int run_gen(const GenOpts& opts) {
    const Polarity pol = polarity_from_string(opts.common.polarity);
    check_bitwidth(opts.common.bits);
    const bool as_json = opts.common.format == "json";
    json j;
    j["schema_version"] = kSchemaVersion;
    j["manifest"] = {{"subcommand", "gen"},
                     {"kind", opts.kind},
                     {"seed", opts.common.seed},
                     {"bits", opts.common.bits},
                     {"polarity", opts.common.polarity},
                     {"zero_fraction", opts.zero_fraction}};

    std::ostringstream out;
    if (opts.kind == "matrix") {
        if (opts.rows < 1 || opts.cols < 1) throw DomainError("rows/cols must be positive");
        Rng rng(derive_seed(opts.common.seed, 0));
        const MatrixI m =
            random_matrix(rng, opts.rows, opts.cols, opts.common.bits, pol, opts.zero_fraction);
        if (as_json) {
            json rows = json::array();
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                json row = json::array();
                for (Eigen::Index jj = 0; jj < m.cols(); ++jj) row.push_back(m(i, jj));
                rows.push_back(row);
            }
            j["matrix"] = rows;
        } else {
            write_matrix_csv(out, m);
        }
    } else if (opts.kind == "trace") {
        if (opts.count < 1) throw DomainError("count must be positive");
        Rng rng(derive_seed(opts.common.seed, 1));
        const auto trace =
            random_trace(rng, opts.count, opts.common.bits, pol, opts.zero_fraction);
        if (as_json) {
            json records = json::array();
            for (const TraceRecord& rec : trace) records.push_back({rec.op_id, rec.max_abs});
            j["trace"] = records;
        } else {
            write_trace_csv(out, trace);
        }
    } else if (opts.kind == "fixture") {
        const MaxValueHistogram hist = synthetic_mobilenetv2_maxima();
        if (as_json) {
            j["histogram"] = {{"bitwidth", hist.bitwidth},
                              {"polarity", to_string(hist.polarity)},
                              {"total_ops", hist.total_ops},
                              {"counts", hist.counts}};
        } else {
            out << "# synthetic per-op maxima histogram: 25% zeros, mean 82, 90% <= 150\n";
            write_histogram_csv(out, hist);
        }
    } else {
        throw DomainError("unknown kind '" + opts.kind + "' (matrix|trace|fixture)");
    }
    emit(opts.common, as_json ? j.dump(2) + "\n" : out.str());
    return 0;
}

// ---------------------------------------------------------------------------
// repro
// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    double got;
    double want;
    double tolerance; // relative unless absolute set
    bool absolute = false;
    bool ok() const {
        const double tol = absolute ? tolerance : tolerance * std::abs(want);
        return std::abs(got - want) <= tol + 1e-12;
    }
};

int run_repro(const CommonOpts& common) {
    const PowerProfile profile = resolve_profile(common);
    const LatencyModel model = resolve_model(common);
    std::vector<Check> checks;

    // Worst-case latency and energy grid (TSMC N5, bipolar).
    for (const WcReferencePoint& ref : published_n5_worst_case()) {
        GemmConfig cfg;
        cfg.m = cfg.n = cfg.p = ref.array_size;
        cfg.bitwidth = ref.bitwidth;
        cfg.polarity = Polarity::bipolar;
        const double latency_us = analytical_wc_latency(cfg, model, profile) * 1e6;
        const std::string tag = std::to_string(ref.array_size) + "x" +
                                std::to_string(ref.array_size) + "-" +
                                std::to_string(ref.bitwidth) + "b";
        checks.push_back({"wc-latency-" + tag, latency_us, ref.latency_us, 0.01, true});
        const double power_w =
            profile.find(ref.array_size, ref.bitwidth, Polarity::bipolar, "tsmc-n5").power_w;
        const double energy_nj = energy(power_w, latency_us * 1e-6) * 1e9;
        // published energies are printed to two decimals; accept half an ulp
        const double tol = std::max(0.005 * ref.energy_nj, 0.005);
        checks.push_back({"wc-energy-" + tag, energy_nj, ref.energy_nj, tol, true});
    }

    // 45nm worst-case bounds from the cycle-accurate simulator.
    for (const Reference45nmPoint& ref : published_45nm_worst_case()) {
        GemmConfig cfg;
        cfg.m = cfg.n = cfg.p = 16;
        cfg.bitwidth = 8;
        cfg.polarity = ref.polarity;
        const std::int64_t max_mag = max_magnitude(8, ref.polarity);
        const MatrixI a = MatrixI::Constant(
            16, 16, ref.polarity == Polarity::bipolar ? -max_mag : max_mag);
        const MatrixI b = MatrixI::Constant(16, 16, max_value(8, ref.polarity));
        const GemmResult res = simulate_gemm(cfg, a, b, MatrixI::Zero(16, 16));
        const double us =
            static_cast<double>(res.report.total_cycles) / profile.frequency_hz * 1e6;
        checks.push_back({std::string("sim-wc-latency-45nm-") + to_string(ref.polarity), us,
                          ref.latency_us, 0.05});
    }

    // Precision scaling at fixed array size: 8-bit vs 4-bit.
    {
        GemmConfig c8, c4;
        c8.m = c8.n = c8.p = c4.m = c4.n = c4.p = 16;
        c8.bitwidth = 8;
        c4.bitwidth = 4;
        const double lat_ratio = analytical_wc_latency(c8, model, profile) /
                                 analytical_wc_latency(c4, model, profile);
        checks.push_back({"latency-ratio-8b-over-4b", lat_ratio, 10.6, 0.01});

        double ratio_sum = 0.0;
        int ratio_count = 0;
        for (int size : {16, 32, 64, 128}) {
            GemmConfig s8 = c8, s4 = c4;
            s8.m = s8.n = s8.p = s4.m = s4.n = s4.p = size;
            const double e8 = energy(profile.find(size, 8, Polarity::bipolar, "tsmc-n5").power_w,
                                     analytical_wc_latency(s8, model, profile));
            const double e4 = energy(profile.find(size, 4, Polarity::bipolar, "tsmc-n5").power_w,
                                     analytical_wc_latency(s4, model, profile));
            ratio_sum += e8 / e4;
            ++ratio_count;
        }
        checks.push_back({"energy-ratio-8b-over-4b", ratio_sum / ratio_count, 23.9, 0.05});
    }

    // Sparsity: synthetic workload fixture on the 45nm unipolar 16x16 point.
    {
        GemmConfig cfg;
        cfg.m = cfg.n = cfg.p = 16;
        cfg.bitwidth = 8;
        cfg.polarity = Polarity::unipolar;
        const MaxValueHistogram hist = synthetic_mobilenetv2_maxima();
        const SparsityReport rep = profile_simulation(cfg, hist, model, profile, "nangate45");
        const AvgCaseReference ref = published_45nm_avg_case();
        checks.push_back({"workload-expected-max", rep.expected_max_value, 82.0, 1.0, true});
        checks.push_back({"workload-avg-latency-us", rep.avg_latency_s * 1e6,
                          ref.avg_latency_us, 0.05});
        checks.push_back({"workload-avg-energy-uj", rep.avg_energy_j * 1e6, ref.avg_energy_uj,
                          0.05});
        checks.push_back({"workload-avg-edp-uj-us", rep.avg_edp_js * 1e12, ref.avg_edp_uj_us,
                          0.10});
        checks.push_back({"workload-wc-to-avg-ratio", rep.wc_ratio, 3.0, 0.05});
        checks.push_back({"workload-edp-improvement", rep.edp_improvement,
                          ref.wc_edp_uj_us / ref.avg_edp_uj_us, 0.10});
    }

    // Workload power x latency arithmetic on the 64x64 8-bit point.
    for (const WorkloadReferencePoint& ref : published_n5_workloads()) {
        if (ref.workload[0] == '\0') continue;
        const double uj = energy(ref.power_mw * 1e-3, ref.latency_us * 1e-6) * 1e6;
        checks.push_back({std::string("workload-energy-") + ref.workload, uj, ref.energy_uj,
                          0.02});
        const double edp_val = edp(uj * 1e-6, ref.latency_us * 1e-6) * 1e12;
        checks.push_back({std::string("workload-edp-") + ref.workload, edp_val, ref.edp_uj_us,
                          0.02});
    }

    bool all_ok = true;
    json rows = json::array();
    std::ostringstream text;
    for (const Check& c : checks) {
        const bool ok = c.ok();
        all_ok = all_ok && ok;
        rows.push_back({{"check", c.name},
                        {"computed", c.got},
                        {"published", c.want},
                        {"tolerance", c.tolerance},
                        {"absolute", c.absolute},
                        {"ok", ok}});
        text << (ok ? "[PASS] " : "[FAIL] ") << c.name << ": computed " << c.got
             << " vs published " << c.want << "\n";
    }
    text << (all_ok ? "REPRO: all " : "REPRO: FAILED, ") << checks.size() << " checks"
         << (all_ok ? " passed" : "") << "\n";
    std::cerr << text.str();

    json j;
    j["schema_version"] = kSchemaVersion;
    j["manifest"] = {{"subcommand", "repro"}};
    j["checks"] = rows;
    j["all_ok"] = all_ok;
    if (common.format == "csv") {
        std::ostringstream csv;
        csv << "check,computed,published,ok\n";
        for (const auto& r : rows)
            csv << r["check"].get<std::string>() << ',' << r["computed"] << ','
                << r["published"] << ',' << (r["ok"].get<bool>() ? 1 : 0) << '\n';
        emit(common, csv.str());
    } else {
        emit(common, j.dump(2) + "\n");
    }
    return all_ok ? 0 : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tub GEMM unit model: cycle-accurate simulator, analytical "
                 "latency/energy model, and workload sparsity profiler"};
    app.require_subcommand(1);

    GemmOpts gemm_opts;
    CLI::App* gemm_cmd = app.add_subcommand("gemm", "Simulate Y = A x B + C from CSV matrices");
    gemm_cmd->add_option("--a", gemm_opts.a_path, "A matrix CSV (m x n)")->required();
    gemm_cmd->add_option("--b", gemm_opts.b_path, "B matrix CSV (n x p)")->required();
    gemm_cmd->add_option("--c", gemm_opts.c_path, "C matrix CSV (m x p), zero when omitted");
    gemm_cmd->add_option("--out-y", gemm_opts.out_y, "Result matrix path (stdout when omitted)");
    gemm_cmd->add_option("--overhead", gemm_opts.step_overhead, "Handshake cycles per step");
    gemm_cmd->add_option("--epilogue", gemm_opts.epilogue, "Cycles to assert output_valid");
    gemm_cmd->add_option("--acc-width", gemm_opts.acc_width, "Accumulator bits (0 = derive)");
    add_value_flags(gemm_cmd, gemm_opts.common);
    add_output_flags(gemm_cmd, gemm_opts.common);

    CompareOpts cmp_opts;
    CLI::App* cmp_cmd =
        app.add_subcommand("compare", "Check the simulator against the reference matmul");
    cmp_cmd->add_option("--a", cmp_opts.gemm.a_path, "A matrix CSV");
    cmp_cmd->add_option("--b", cmp_opts.gemm.b_path, "B matrix CSV");
    cmp_cmd->add_option("--c", cmp_opts.gemm.c_path, "C matrix CSV");
    cmp_cmd->add_option("--sweep", cmp_opts.sweep, "Run N seeded random instances instead");
    cmp_cmd->add_option("--max-dim", cmp_opts.max_dim, "Largest dimension in sweep mode");
    cmp_cmd->add_option("--seed", cmp_opts.gemm.common.seed, "Sweep seed");
    cmp_cmd->add_flag("--inject-fault", cmp_opts.inject_fault,
                      "Perturb one simulated cell (negative control)");
    add_value_flags(cmp_cmd, cmp_opts.gemm.common);
    add_output_flags(cmp_cmd, cmp_opts.gemm.common);

    EstimateOpts est_opts;
    CLI::App* est_cmd =
        app.add_subcommand("estimate", "Analytical worst-case latency / energy / EDP");
    est_cmd->add_option("--m", est_opts.m, "PE array rows");
    est_cmd->add_option("--n", est_opts.n, "Inner dimension (steps)");
    est_cmd->add_option("--p", est_opts.p, "PE array columns");
    est_cmd->add_option("--size", est_opts.m, "Square shorthand for --m/--n/--p")
        ->each([&est_opts](const std::string& v) {
            est_opts.n = est_opts.p = std::stoll(v);
        });
    est_cmd->add_option("--tech", est_opts.technology, "Power profile technology key");
    est_cmd->add_option("--workload", est_opts.workload, "Power profile workload key");
    est_cmd->add_option("--power", est_opts.power_override, "Power override in watts");
    est_cmd->add_flag("--table", est_opts.table, "Reproduce the full published WC grid");
    est_cmd->add_flag("--dump-profile", est_opts.dump_profile,
                      "Print the active power profile as JSON");
    add_value_flags(est_cmd, est_opts.common);
    add_output_flags(est_cmd, est_opts.common);
    add_profile_flag(est_cmd, est_opts.common);

    ProfileOpts prof_opts;
    CLI::App* prof_cmd =
        app.add_subcommand("profile", "Sparsity analysis from a trace or histogram");
    prof_cmd->add_option("--trace", prof_opts.trace_path, "Trace CSV: op_id,max_abs");
    prof_cmd->add_option("--hist", prof_opts.hist_path, "Histogram CSV: value,count");
    prof_cmd->add_option("--m", prof_opts.m, "PE array rows");
    prof_cmd->add_option("--n", prof_opts.n, "Inner dimension (steps)");
    prof_cmd->add_option("--p", prof_opts.p, "PE array columns");
    prof_cmd->add_option("--size", prof_opts.m, "Square shorthand for --m/--n/--p")
        ->each([&prof_opts](const std::string& v) {
            prof_opts.n = prof_opts.p = std::stoll(v);
        });
    prof_cmd->add_option("--tech", prof_opts.technology, "Power profile technology key");
    prof_cmd->add_option("--workload", prof_opts.workload, "Power profile workload key");
    prof_cmd->add_option("--power", prof_opts.power_override, "Power override in watts");
    add_value_flags(prof_cmd, prof_opts.common);
    add_output_flags(prof_cmd, prof_opts.common);
    add_profile_flag(prof_cmd, prof_opts.common);

    GenOpts gen_opts;
    gen_opts.common.format = "csv"; // gen emits data files, not reports
    CLI::App* gen_cmd = app.add_subcommand("gen", "Seeded random inputs and fixtures");
    gen_cmd->add_option("--kind", gen_opts.kind, "matrix|trace|fixture");
    gen_cmd->add_option("--rows", gen_opts.rows, "Matrix rows");
    gen_cmd->add_option("--cols", gen_opts.cols, "Matrix columns");
    gen_cmd->add_option("--count", gen_opts.count, "Trace length");
    gen_cmd->add_option("--zero-fraction", gen_opts.zero_fraction, "P(zero), off when negative");
    gen_cmd->add_option("--seed", gen_opts.common.seed, "RNG seed");
    add_value_flags(gen_cmd, gen_opts.common);
    add_output_flags(gen_cmd, gen_opts.common);

    CommonOpts repro_opts;
    CLI::App* repro_cmd =
        app.add_subcommand("repro", "Reproduce the published reference tables");
    add_output_flags(repro_cmd, repro_opts);
    add_profile_flag(repro_cmd, repro_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (gemm_cmd->parsed()) return run_gemm(gemm_opts);
        if (cmp_cmd->parsed()) return run_compare(cmp_opts);
        if (est_cmd->parsed()) return run_estimate(est_opts);
        if (prof_cmd->parsed()) return run_profile(prof_opts);
        if (gen_cmd->parsed()) return run_gen(gen_opts);
        if (repro_cmd->parsed()) return run_repro(repro_opts);
    } catch (const OverflowError& e) {
        std::cerr << "overflow error: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
