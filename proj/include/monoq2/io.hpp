#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "monoq2/matrix_analysis.hpp"
#include "monoq2/mesh_constraints.hpp"
#include "monoq2/sparse.hpp"

namespace monoq2 {

/// Writes coordinate real general format, 1-based indices, entries sorted
/// by (row, col). Values round-trip exactly for doubles.
void write_matrix_market(const SparseOperator& op, const std::string& path);

/// Reads a coordinate real general file. The result carries no grid
/// metadata; checks that need point classes refuse it.
SparseOperator read_matrix_market(const std::string& path);

/// RFC-4180 style CSV writer (quotes fields containing separators).
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

nlohmann::json to_json(const WcddReport& rep);
nlohmann::json to_json(const LorenzReport& rep);
nlohmann::json to_json(const InverseReport& rep);
nlohmann::json to_json(const DmpReport& rep);
nlohmann::json to_json(const ConstraintReport& rep);

/// Appends one JSON document per line.
void append_json_line(const std::string& path, const nlohmann::json& doc);

}  // namespace monoq2
