#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tubgemm/encoding.hpp"
#include "tubgemm/errors.hpp"
#include "tubgemm/pe.hpp"

namespace tubgemm {

// Matrices are dense row-major; sparsity is exploited temporally, never
// structurally.
using MatrixI = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VectorI = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Y = A x B + C on an m x p PE array, computed in n column-row outer-product
// steps. Overheads model the per-step done handshake and the final
// output_valid assertion.
struct GemmConfig {
    Eigen::Index m = 16;
    Eigen::Index n = 16;
    Eigen::Index p = 16;
    int bitwidth = 8;
    Polarity polarity = Polarity::bipolar;
    std::int64_t unary_base = 2;
    std::int64_t step_overhead_cycles = 2;
    std::int64_t epilogue_cycles = 4;
    int acc_width = 0; // 0 = derive default_acc_width(bitwidth, n)

    int resolved_acc_width() const {
        return acc_width != 0 ? acc_width : default_acc_width(bitwidth, n);
    }
};

void validate(const GemmConfig& config);

struct MatrixOperands {
    MatrixI a;
    MatrixI b;
    MatrixI c;
};

struct CycleReport {
    std::vector<std::int64_t> per_step_cycles;
    std::int64_t total_cycles = 0;
    std::int64_t output_valid_cycle = 0;
    std::int64_t zero_steps = 0;

    std::int64_t compute_cycles() const {
        std::int64_t sum = 0;
        for (std::int64_t c : per_step_cycles) sum += c;
        return sum;
    }
};

enum class Axis { column, row };

// k-th column of A (length m) or k-th row of B (length p), as the index
// counter hands it to the encoder / PE array.
VectorI vector_generator(const Eigen::Ref<const MatrixI>& matrix, Eigen::Index k, Axis axis);

// Cycles one step takes: the largest pulse count in the A-column feeding it.
std::int64_t step_cycles(const Eigen::Ref<const VectorI>& column, std::int64_t n);

struct GemmResult {
    MatrixI y;
    CycleReport report;
};

// Cycle-level simulation of the PE array: one shared encoder per step, B held
// binary, PEs seeded with C. Exact by contract; also reports per-step cycles.
GemmResult simulate_gemm(const GemmConfig& config, const Eigen::Ref<const MatrixI>& a,
                         const Eigen::Ref<const MatrixI>& b, const Eigen::Ref<const MatrixI>& c);

inline GemmResult simulate_gemm(const GemmConfig& config, const MatrixOperands& ops) {
    return simulate_gemm(config, ops.a, ops.b, ops.c);
}

// Textbook triple-loop integer matmul plus C; the exactness oracle.
MatrixI reference_gemm(const Eigen::Ref<const MatrixI>& a, const Eigen::Ref<const MatrixI>& b,
                       const Eigen::Ref<const MatrixI>& c);

inline MatrixI reference_gemm(const MatrixOperands& ops) {
    return reference_gemm(ops.a, ops.b, ops.c);
}

} // namespace tubgemm
