#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace struve {

enum class TableKind { table1, table2, dconstants };

std::string_view to_string(TableKind kind);
/// Throws DomainError for an unknown name.
TableKind parse_table_kind(std::string_view name);

struct TableArtifact {
  TableKind kind = TableKind::table1;
  /// Entries rounded to 4 decimal places, as emitted.
  std::vector<std::vector<double>> rows;
  std::vector<double> row_labels;
  std::vector<std::string> col_labels;
  std::map<std::string, double> tolerances;
  /// Unrounded entries (not serialized).
  std::vector<std::vector<double>> raw_rows;
};

inline const std::vector<double> kTableNu = {1.0, 2.5, 5.0, 7.5, 10.0};
inline const std::vector<double> kTableX = {0.5, 5.0, 10.0, 25.0, 50.0, 100.0, 250.0};
inline const std::vector<double> kDConstantNu = {0.0, 1.0, 3.0, 5.0, 10.0};

/// table1: (F - lower)/F, table2: (upper - F)/F for the corollary bounds on
/// the table grid; dconstants: D_{nu,0}, its argmax and 2(nu+1) for nu in
/// kDConstantNu.
TableArtifact make_table(TableKind kind);

double round_to_decimals(double v, int decimals);

std::string to_csv(const TableArtifact& t);
std::string to_json(const TableArtifact& t);

/// Inverse of `to_csv` for the serialized fields.
TableArtifact parse_table_csv(std::string_view csv, TableKind kind);

/// Field quoting for comma-separated output: wraps in double quotes when the
/// field holds a comma, quote or line break, doubling embedded quotes.
std::string csv_field(std::string_view s);

/// Fixed-precision decimal rendering ("%.*f").
std::string format_fixed(double v, int decimals);
/// "%.6g"-style rendering.
std::string format_sig(double v, int digits = 6);

}  // namespace struve
