#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hehucc/pauli.hpp"
#include "hehucc/scan.hpp"
#include "hehucc/vqe.hpp"

namespace hehucc {

/// Shortest round-trip-free text for a double: 12 significant digits, "."
/// decimal separator regardless of locale, "nan"/"inf" for non-finite values.
std::string format_number(double v);

using Cell = std::variant<double, long long, bool, std::string>;

/// Record stream shared by the CSV and JSON writers. Columns flagged
/// json_only are left out of CSV output.
struct Table {
  struct Column {
    std::string name;
    bool json_only = false;
  };
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Header row plus one line per record, LF line endings.
std::string to_csv(const Table& table);

/// {"config": config, "records": [...]}; numbers go through format_number so
/// the JSON carries the same digits as the CSV.
nlohmann::json table_json(const Table& table, const nlohmann::json& config);

Table surface_table(const std::vector<SurfacePoint>& points, EnergyConvention convention);
Table field_table(const std::vector<FieldPoint>& points);
Table folded_table(const std::vector<FoldedPoint>& points);
Table trace_table(const VqeResult& result);

/// h1/h2 tensors with index-order metadata, the Pauli terms and the 4×4 qudit
/// matrix (row-major [re, im] pairs).
nlohmann::json integrals_dump(const MolecularProblem& problem, const PauliSum& pauli);

nlohmann::json pauli_to_json(const PauliSum& pauli);
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);

}  // namespace hehucc
