#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace mid {

// A flat numeric table. Flags are stored as 0/1, missing values as NaN.
struct Dataset {
  std::string kind;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;  // throws DomainError if absent
};

enum class Format { Csv, Json, Svg };

Format parse_format(std::string_view s);  // throws DomainError
std::string_view to_string(Format f);
std::string_view extension(Format f);

// 17 significant digits in the shorter of fixed and scientific notation.
std::string format_number(double v);

std::string to_csv(const Dataset& d);
std::string to_json(const Dataset& d);
Dataset dataset_from_json(std::string_view text);

// Exact equality with NaN == NaN.
bool same_data(const Dataset& a, const Dataset& b);

// Throws IoError when the file cannot be written.
void write_text(const std::string& path, const std::string& text);

}  // namespace mid
