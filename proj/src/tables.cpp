#include "struve/tables.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "struve/bounds.hpp"
#include "struve/errors.hpp"

namespace struve {

std::string_view to_string(TableKind kind) {
  switch (kind) {
    case TableKind::table1: return "table1";
    case TableKind::table2: return "table2";
    case TableKind::dconstants: return "dconstants";
  }
  return "?";
}

TableKind parse_table_kind(std::string_view name) {
  if (name == "table1") return TableKind::table1;
  if (name == "table2") return TableKind::table2;
  if (name == "dconstants") return TableKind::dconstants;
  throw DomainError("unknown table kind '" + std::string(name) + "' (expected table1, table2 or dconstants)");
}

double round_to_decimals(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

TableArtifact make_table(TableKind kind) {
  TableArtifact t;
  t.kind = kind;
  t.tolerances = {{"decimals", 4.0}, {"series_term_ratio", 1e-16}};

  if (kind == TableKind::dconstants) {
    t.row_labels = kDConstantNu;
    t.col_labels = {"D", "argmax_x", "upper_bound"};
    t.tolerances["golden_x_tol"] = 1e-6;
    for (double nu : kDConstantNu) {
      const DConstant d = d_constant(nu, 0.0);
      t.raw_rows.push_back({d.value, d.argmax_x, 2.0 * (nu + 1.0)});
    }
  } else {
    t.row_labels = kTableNu;
    for (double x : kTableX) t.col_labels.push_back(format_sig(x));
    for (double nu : kTableNu) {
      std::vector<double> row;
      for (double x : kTableX) {
        const double f = corollary_middle(nu, x);
        const CorollaryBounds b = corollary_bounds(nu, x);
        const double bound = kind == TableKind::table1 ? b.lower : b.upper;
        row.push_back(std::abs(f - bound) / f);
      }
      t.raw_rows.push_back(std::move(row));
    }
  }
  for (const auto& raw : t.raw_rows) {
    std::vector<double> row;
    for (double v : raw) row.push_back(round_to_decimals(v, 4));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string to_csv(const TableArtifact& t) {
  std::ostringstream os;
  os << "nu";
  for (const auto& c : t.col_labels) os << ',' << csv_field(c);
  os << '\n';
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    os << format_sig(t.row_labels[i]);
    for (double v : t.rows[i]) os << ',' << format_fixed(v, 4);
    os << '\n';
  }
  return os.str();
}

std::string to_json(const TableArtifact& t) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(t.kind));
  j["rows"] = t.rows;
  j["row_labels"] = t.row_labels;
  j["col_labels"] = t.col_labels;
  nlohmann::ordered_json tol = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.tolerances) tol[k] = v;
  j["meta"]["tolerances"] = tol;
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

TableArtifact parse_table_csv(std::string_view csv, TableKind kind) {
  TableArtifact t;
  t.kind = kind;
  std::istringstream is{std::string(csv)};
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (header) {
      t.col_labels.assign(fields.begin() + 1, fields.end());
      header = false;
      continue;
    }
    if (fields.size() != t.col_labels.size() + 1)
      throw DomainError("parse_table_csv: row has " + std::to_string(fields.size()) + " fields");
    t.row_labels.push_back(std::stod(fields[0]));
    std::vector<double> row;
    for (std::size_t i = 1; i < fields.size(); ++i) row.push_back(std::stod(fields[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace struve
