#include "tubgemm/gemm.hpp"

#include <string>

namespace tubgemm {

void validate(const GemmConfig& config) {
    if (config.m < 1 || config.n < 1 || config.p < 1)
        throw DomainError("matrix dimensions must be positive");
    check_bitwidth(config.bitwidth);
    check_unary_base(config.unary_base);
    if (config.step_overhead_cycles < 0 || config.epilogue_cycles < 0)
        throw DomainError("overhead cycles must be non-negative");
    const int aw = config.resolved_acc_width();
    acc_limit(aw); // width sanity
    if (aw < default_acc_width(config.bitwidth, config.n))
        throw DomainError("acc_width " + std::to_string(aw) + " below required " +
                          std::to_string(default_acc_width(config.bitwidth, config.n)));
}

VectorI vector_generator(const Eigen::Ref<const MatrixI>& matrix, Eigen::Index k, Axis axis) {
    if (axis == Axis::column) {
        if (k < 0 || k >= matrix.cols())
            throw DomainError("column index " + std::to_string(k) + " out of range");
        return matrix.col(k);
    }
    if (k < 0 || k >= matrix.rows())
        throw DomainError("row index " + std::to_string(k) + " out of range");
    return matrix.row(k).transpose();
}

std::int64_t step_cycles(const Eigen::Ref<const VectorI>& column, std::int64_t n) {
    std::int64_t worst = 0;
    for (Eigen::Index i = 0; i < column.size(); ++i)
        worst = std::max(worst, pulse_cycles(column[i], n));
    return worst;
}

namespace {

void check_shapes(const GemmConfig& config, const Eigen::Ref<const MatrixI>& a,
                  const Eigen::Ref<const MatrixI>& b, const Eigen::Ref<const MatrixI>& c) {
    if (a.rows() != config.m || a.cols() != config.n)
        throw DomainError("A must be " + std::to_string(config.m) + "x" + std::to_string(config.n));
    if (b.rows() != config.n || b.cols() != config.p)
        throw DomainError("B must be " + std::to_string(config.n) + "x" + std::to_string(config.p));
    if (c.rows() != config.m || c.cols() != config.p)
        throw DomainError("C must be " + std::to_string(config.m) + "x" + std::to_string(config.p));
}

} // namespace

GemmResult simulate_gemm(const GemmConfig& config, const Eigen::Ref<const MatrixI>& a,
                         const Eigen::Ref<const MatrixI>& b, const Eigen::Ref<const MatrixI>& c) {
    validate(config);
    check_shapes(config, a, b, c);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            check_in_range(a(i, k), config.bitwidth, config.polarity);
    for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            check_in_range(b(k, j), config.bitwidth, config.polarity);

    const int aw = config.resolved_acc_width();
    const std::int64_t limit = acc_limit(aw);
    const std::int64_t nb = config.unary_base;

    // PEs initialized with the C matrix.
    std::vector<PEState> pes(static_cast<std::size_t>(config.m * config.p));
    for (Eigen::Index i = 0; i < config.m; ++i)
        for (Eigen::Index j = 0; j < config.p; ++j) {
            const std::int64_t cv = c(i, j);
            if (cv >= limit || cv <= -limit)
                throw DomainError("C entry " + std::to_string(cv) + " exceeds accumulator width");
            pes[static_cast<std::size_t>(i * config.p + j)] = PEState{cv, aw};
        }

    CycleReport report;
    report.per_step_cycles.resize(static_cast<std::size_t>(config.n));

    std::vector<std::int64_t> pulses(static_cast<std::size_t>(config.m));
    std::vector<std::int64_t> residues(static_cast<std::size_t>(config.m));
    std::vector<bool> a_negative(static_cast<std::size_t>(config.m));
    std::vector<bool> b_negative(static_cast<std::size_t>(config.p));

    // Index counter: one column-row outer product per step.
    for (Eigen::Index k = 0; k < config.n; ++k) {
        const VectorI column = vector_generator(a, k, Axis::column);
        const VectorI row = vector_generator(b, k, Axis::row);

        // Shared temporal-unary encoder for the whole column: one twos-counter,
        // m comparators. Closed form of the counter/comparator sweep.
        for (Eigen::Index i = 0; i < config.m; ++i) {
            const std::int64_t v = column[i];
            const std::int64_t mag = v < 0 ? -v : v;
            pulses[static_cast<std::size_t>(i)] = pulse_cycles(v, nb);
            residues[static_cast<std::size_t>(i)] = mag % nb;
            a_negative[static_cast<std::size_t>(i)] = v < 0;
        }
        for (Eigen::Index j = 0; j < config.p; ++j)
            b_negative[static_cast<std::size_t>(j)] = row[j] < 0;

        const std::int64_t len = step_cycles(column, nb);
        for (std::int64_t t = 0; t < len; ++t) {
            for (Eigen::Index i = 0; i < config.m; ++i) {
                const std::int64_t pi = pulses[static_cast<std::size_t>(i)];
                if (t >= pi) continue;
                const bool last = t == pi - 1;
                const std::int64_t res = last ? residues[static_cast<std::size_t>(i)] : 0;
                PEState* pe_row = pes.data() + i * config.p;
                for (Eigen::Index j = 0; j < config.p; ++j) {
                    const PECycleInput in{true, res,
                                          a_negative[static_cast<std::size_t>(i)] !=
                                              b_negative[static_cast<std::size_t>(j)],
                                          row[j], nb};
                    pe_row[j] = pe_cycle(pe_row[j], in);
                }
            }
        }

        report.per_step_cycles[static_cast<std::size_t>(k)] = len;
        if (len == 0) ++report.zero_steps;
    }

    report.total_cycles = report.compute_cycles() +
                          config.n * config.step_overhead_cycles + config.epilogue_cycles;
    report.output_valid_cycle = report.total_cycles;

    GemmResult result;
    result.report = std::move(report);
    result.y.resize(config.m, config.p);
    for (Eigen::Index i = 0; i < config.m; ++i)
        for (Eigen::Index j = 0; j < config.p; ++j)
            result.y(i, j) = pes[static_cast<std::size_t>(i * config.p + j)].accumulator;
    return result;
}

MatrixI reference_gemm(const Eigen::Ref<const MatrixI>& a, const Eigen::Ref<const MatrixI>& b,
                       const Eigen::Ref<const MatrixI>& c) {
    if (a.cols() != b.rows() || a.rows() != c.rows() || b.cols() != c.cols())
        throw DomainError("shape mismatch in reference gemm");
    MatrixI y = c;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            const std::int64_t aik = a(i, k);
            if (aik == 0) continue;
            for (Eigen::Index j = 0; j < b.cols(); ++j) y(i, j) += aik * b(k, j);
        }
    return y;
}

} // namespace tubgemm
