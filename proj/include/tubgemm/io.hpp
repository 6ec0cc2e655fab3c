#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tubgemm/gemm.hpp"
#include "tubgemm/sparsity.hpp"

namespace tubgemm {

// Integer CSV, one matrix row per line, dimensions inferred. Blank lines and
// '#' comment lines are skipped.
MatrixI read_matrix_csv(std::istream& in, const std::string& name = "<stream>");
MatrixI read_matrix_csv(const std::filesystem::path& path);

void write_matrix_csv(std::ostream& out, const Eigen::Ref<const MatrixI>& m);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::Ref<const MatrixI>& m);

// Per-operation trace: `op_id,max_abs` rows, optional header.
std::vector<TraceRecord> read_trace_csv(std::istream& in, const std::string& name = "<stream>");
std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path);

// Pre-binned histogram: `value,count` rows, optional header.
MaxValueHistogram read_histogram_csv(std::istream& in, int bitwidth, Polarity polarity,
                                     const std::string& name = "<stream>");
MaxValueHistogram read_histogram_csv(const std::filesystem::path& path, int bitwidth,
                                     Polarity polarity);

void write_histogram_csv(std::ostream& out, const MaxValueHistogram& hist);
void write_histogram_csv(const std::filesystem::path& path, const MaxValueHistogram& hist);

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace);

} // namespace tubgemm
