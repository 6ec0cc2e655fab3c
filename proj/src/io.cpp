#include "tubgemm/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tubgemm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool skippable(std::string_view line) {
    const std::string_view t = trim(line);
    return t.empty() || t.front() == '#';
}

std::int64_t parse_int(std::string_view field, const std::string& name, std::size_t line_no) {
    const std::string_view t = trim(field);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw ParseError(name + ":" + std::to_string(line_no) + ": expected integer, got '" +
                         std::string(t) + "'");
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return in;
}

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    fn(out);
}

} // namespace

MatrixI read_matrix_csv(std::istream& in, const std::string& name) {
    std::vector<std::vector<std::int64_t>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        std::vector<std::int64_t> row;
        for (std::string_view field : split_fields(trim(line)))
            row.push_back(parse_int(field, name, line_no));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(name + ":" + std::to_string(line_no) + ": ragged row (expected " +
                             std::to_string(rows.front().size()) + " fields, got " +
                             std::to_string(row.size()) + ")");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(name + ": no matrix rows");
    MatrixI m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

MatrixI read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    return read_matrix_csv(in, path.string());
}

void write_matrix_csv(std::ostream& out, const Eigen::Ref<const MatrixI>& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::Ref<const MatrixI>& m) {
    write_file(path, [&](std::ostream& out) { write_matrix_csv(out, m); });
}

std::vector<TraceRecord> read_trace_csv(std::istream& in, const std::string& name) {
    std::vector<TraceRecord> trace;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const auto fields = split_fields(trim(line));
        if (fields.size() != 2)
            throw ParseError(name + ":" + std::to_string(line_no) +
                             ": expected 'op_id,max_abs'");
        if (trace.empty() && trim(fields[0]) == "op_id") continue; // header
        trace.push_back(TraceRecord{std::string(trim(fields[0])),
                                    parse_int(fields[1], name, line_no)});
    }
    return trace;
}

std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    return read_trace_csv(in, path.string());
}

MaxValueHistogram read_histogram_csv(std::istream& in, int bitwidth, Polarity polarity,
                                     const std::string& name) {
    MaxValueHistogram hist = make_histogram(bitwidth, polarity);
    std::string line;
    std::size_t line_no = 0;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const auto fields = split_fields(trim(line));
        if (fields.size() != 2)
            throw ParseError(name + ":" + std::to_string(line_no) + ": expected 'value,count'");
        if (first_row && trim(fields[0]) == "value") continue; // header
        first_row = false;
        const std::int64_t value = parse_int(fields[0], name, line_no);
        const std::int64_t count = parse_int(fields[1], name, line_no);
        if (count < 0)
            throw ParseError(name + ":" + std::to_string(line_no) + ": negative count");
        if (value < 0 || value >= static_cast<std::int64_t>(hist.counts.size()))
            throw ParseError(name + ":" + std::to_string(line_no) + ": value " +
                             std::to_string(value) + " out of range for " +
                             std::to_string(bitwidth) + "-bit " + to_string(polarity));
        hist.counts[static_cast<std::size_t>(value)] += count;
        hist.total_ops += count;
    }
    return hist;
}

MaxValueHistogram read_histogram_csv(const std::filesystem::path& path, int bitwidth,
                                     Polarity polarity) {
    std::ifstream in = open_or_throw(path);
    return read_histogram_csv(in, bitwidth, polarity, path.string());
}

void write_histogram_csv(std::ostream& out, const MaxValueHistogram& hist) {
    out << "value,count\n";
    for (std::size_t v = 0; v < hist.counts.size(); ++v)
        if (hist.counts[v] != 0) out << v << ',' << hist.counts[v] << '\n';
}

void write_histogram_csv(const std::filesystem::path& path, const MaxValueHistogram& hist) {
    write_file(path, [&](std::ostream& out) { write_histogram_csv(out, hist); });
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
    out << "op_id,max_abs\n";
    for (const TraceRecord& rec : trace) out << rec.op_id << ',' << rec.max_abs << '\n';
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
    write_file(path, [&](std::ostream& out) { write_trace_csv(out, trace); });
}

} // namespace tubgemm
