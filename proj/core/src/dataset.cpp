#include "mid/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "mid/errors.hpp"

namespace mid {

std::size_t Dataset::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw DomainError("dataset has no column '" + std::string(name) + "'");
}

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "svg") return Format::Svg;
  throw DomainError("unknown format '" + std::string(s) + "' (csv, json, svg)");
}

std::string_view to_string(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Svg: return "svg";
  }
  return "csv";
}

std::string_view extension(Format f) { return to_string(f); }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Dataset& d) {
  std::string out;
  for (std::size_t i = 0; i < d.columns.size(); ++i) {
    if (i) out += ',';
    out += d.columns[i];
  }
  out += '\n';
  for (const auto& row : d.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Dataset& d) {
  // rows are written by hand, nlohmann's per-value nodes are too heavy for 2-D grids
  std::string out = "{\"kind\":" + nlohmann::ordered_json(d.kind).dump();
  out += ",\"metadata\":" + d.metadata.dump();
  out += ",\"columns\":" + nlohmann::ordered_json(d.columns).dump();
  out += ",\"rows\":[";
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    if (r) out += ',';
    out += '[';
    const auto& row = d.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += std::isfinite(row[i]) ? format_number(row[i]) : std::string("null");
    }
    out += ']';
  }
  out += "]}\n";
  return out;
}

Dataset dataset_from_json(std::string_view text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("dataset json: ") + e.what());
  }
  Dataset d;
  try {
    d.kind = j.at("kind").get<std::string>();
    d.metadata = j.at("metadata");
    d.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
      std::vector<double> row;
      row.reserve(r.size());
      for (const auto& v : r) {
        row.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
      }
      d.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("dataset json: ") + e.what());
  }
  return d;
}

bool same_data(const Dataset& a, const Dataset& b) {
  if (a.kind != b.kind || a.columns != b.columns || a.metadata != b.metadata) return false;
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (x.size() != y.size()) return false;
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (std::isnan(x[c]) && std::isnan(y[c])) continue;
      if (x[c] != y[c]) return false;
    }
  }
  return true;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace mid
