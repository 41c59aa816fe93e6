#include "monoq2/io.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace monoq2 {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
  throw std::runtime_error("read_matrix_market: " + path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void write_matrix_market(const SparseOperator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_market: cannot open '" + path + "' for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << op.size() << ' ' << op.size() << ' ' << op.nnz() << '\n';
  for (int i = 0; i < op.size(); ++i)
    for (const auto& e : op.row(i))
      out << (i + 1) << ' ' << (e.col + 1) << ' ' << format_value(e.value) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write_matrix_market: write failed for '" + path + "'");
}

SparseOperator read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_matrix_market: cannot open '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  ++lineno;
  if (line.rfind("%%MatrixMarket", 0) != 0) parse_fail(path, lineno, "missing MatrixMarket header");
  {
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (object != "matrix" || format != "coordinate" || field != "real" || symmetry != "general")
      parse_fail(path, lineno, "unsupported header '" + line + "' (need matrix coordinate real general)");
  }
  long rows = 0, cols = 0, nnz = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ds(line);
    if (!(ds >> rows >> cols >> nnz)) parse_fail(path, lineno, "malformed dimensions line");
    break;
  }
  if (rows <= 0 || rows != cols) parse_fail(path, lineno, "matrix must be square and nonempty");
  std::vector<std::vector<Entry>> data(static_cast<std::size_t>(rows));
  long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ts(line);
    long i = 0, j = 0;
    double v = 0.0;
    if (!(ts >> i >> j >> v)) parse_fail(path, lineno, "malformed coordinate triple");
    if (i < 1 || i > rows || j < 1 || j > cols) parse_fail(path, lineno, "index out of range");
    data[static_cast<std::size_t>(i - 1)].push_back({static_cast<int>(j - 1), v});
    ++seen;
  }
  if (seen != nnz) parse_fail(path, lineno, "entry count mismatch: header says " + std::to_string(nnz) +
                                                 ", file has " + std::to_string(seen));
  return SparseOperator::from_rows(static_cast<int>(rows), std::move(data));
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "' for writing");
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out << ',';
      out << csv_quote(row[k]);
    }
    out << '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  if (!out) throw std::runtime_error("write_csv: write failed for '" + path + "'");
}

nlohmann::json to_json(const WcddReport& rep) {
  return nlohmann::json{{"check", "m-matrix-wcdd"},
                        {"z_pattern", rep.z_pattern},
                        {"positive_diagonal", rep.positive_diagonal},
                        {"row_sums_nonnegative", rep.row_sums_nonnegative},
                        {"has_positive_row_sum", rep.has_positive_row_sum},
                        {"chained", rep.chained},
                        {"min_row_sum_normalized", rep.min_row_sum_normalized},
                        {"failing_rows", rep.failing_rows},
                        {"pass", rep.pass}};
}

nlohmann::json to_json(const LorenzReport& rep) {
  nlohmann::json j{{"check", "lorenz"},
                   {"cond1_pass", rep.cond1_pass},
                   {"cond2_pass", rep.cond2_pass},
                   {"cond2_vacuous", rep.cond2_vacuous},
                   {"cond2_worst_margin", rep.cond2_worst_margin},
                   {"cond3_pass", rep.cond3_pass},
                   {"cond3_mode", rep.cond3_mode},
                   {"epsilon_searched", rep.epsilon_searched},
                   {"pass", rep.overall}};
  if (rep.epsilon_used) j["epsilon"] = *rep.epsilon_used;
  nlohmann::json failing = nlohmann::json::array();
  for (const auto& [r, c] : rep.cond2_failing) failing.push_back({r, c});
  j["cond2_failing"] = failing;
  return j;
}

nlohmann::json to_json(const InverseReport& rep) {
  nlohmann::json j{{"check", "inverse-min-entries"},
                   {"n", rep.n},
                   {"min", rep.min_value},
                   {"min_row", rep.min_row},
                   {"min_col", rep.min_col},
                   {"max_abs", rep.max_abs},
                   {"threshold", rep.threshold},
                   {"nonnegative", rep.nonnegative}};
  if (rep.has_interior) {
    j["interior_min"] = rep.interior_min;
    j["interior_min_row"] = rep.interior_row;
    j["interior_min_col"] = rep.interior_col;
  }
  return j;
}

nlohmann::json to_json(const DmpReport& rep) {
  return nlohmann::json{{"check", "dmp"},
                        {"inverse", to_json(rep.inverse)},
                        {"row_sums_nonnegative", rep.row_sums_nonnegative},
                        {"min_row_sum_normalized", rep.min_row_sum_normalized},
                        {"pass", rep.pass}};
}

nlohmann::json to_json(const ConstraintReport& rep) {
  nlohmann::json j{{"check", "constraint"},
                   {"id", rep.id},
                   {"points_checked", rep.points_checked},
                   {"pass", rep.pass}};
  if (rep.worst_margin) j["worst_margin"] = *rep.worst_margin;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : rep.failures)
    failures.push_back({{"i", f.i}, {"j", f.j}, {"which", f.which}, {"margin", f.margin}});
  j["failures"] = failures;
  return j;
}

void append_json_line(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("append_json_line: cannot open '" + path + "'");
  out << doc.dump() << '\n';
}

}  // namespace monoq2
