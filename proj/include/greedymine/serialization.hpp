#pragma once

#include <array>
#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "greedymine/errors.hpp"
#include "greedymine/experiments.hpp"

// Flat-file export of sweep, threshold and heatmap records.
//
// CSV: one header row, '.' decimal separator, numbers with 10 significant
// digits, '\n' line endings. Absent optional values are empty cells except an
// undefined RER, which is written as `undefined`.
// JSON: an array of flat objects keyed by the same column names; absent values
// are null and numbers keep full double precision.
namespace greedymine {

struct HeatmapCell {
  double alpha = 0.0;
  double gamma = 0.0;
  std::optional<double> rer_closed;

  bool operator==(const HeatmapCell&) const = default;
};

inline std::vector<HeatmapCell> heatmap_cells(const RerHeatmap& map) {
  std::vector<HeatmapCell> out;
  out.reserve(map.cells.size());
  for (std::size_t i = 0; i < map.alphas.size(); ++i) {
    for (std::size_t j = 0; j < map.gammas.size(); ++j) out.push_back({map.alphas[i], map.gammas[j], map.at(i, j)});
  }
  return out;
}

struct Column {
  std::string_view name;
  bool required;
  std::string_view absent_marker;
};

template <typename Record>
struct RecordSchema;

template <>
struct RecordSchema<SweepRecord> {
  static constexpr std::array<Column, 9> columns{{
      {"alpha", true, ""},
      {"gamma", true, ""},
      {"revenue_honest", true, ""},
      {"revenue_greedy_closed", true, ""},
      {"revenue_greedy_oracle_lower", false, ""},
      {"revenue_greedy_oracle_upper", false, ""},
      {"revenue_greedy_mc", false, ""},
      {"rer_closed", false, "undefined"},
      {"mc_ci", false, ""},
  }};
  using Values = std::array<std::optional<double>, columns.size()>;

  static Values values(const SweepRecord& r) {
    return {r.alpha,
            r.gamma,
            r.revenue_honest,
            r.revenue_greedy_closed,
            r.revenue_greedy_oracle_lower,
            r.revenue_greedy_oracle_upper,
            r.revenue_greedy_mc,
            r.rer_closed,
            r.mc_ci};
  }

  static SweepRecord from_values(const Values& v) {
    return {*v[0], *v[1], *v[2], *v[3], v[4], v[5], v[6], v[7], v[8]};
  }
};

template <>
struct RecordSchema<ThresholdRecord> {
  static constexpr std::array<Column, 3> columns{{
      {"gamma", true, ""},
      {"alpha_star", true, ""},
      {"tol", true, ""},
  }};
  using Values = std::array<std::optional<double>, columns.size()>;

  static Values values(const ThresholdRecord& r) { return {r.gamma, r.alpha_star, r.tol}; }
  static ThresholdRecord from_values(const Values& v) { return {*v[0], *v[1], *v[2]}; }
};

template <>
struct RecordSchema<HeatmapCell> {
  static constexpr std::array<Column, 3> columns{{
      {"alpha", true, ""},
      {"gamma", true, ""},
      {"rer_closed", false, "undefined"},
  }};
  using Values = std::array<std::optional<double>, columns.size()>;

  static Values values(const HeatmapCell& r) { return {r.alpha, r.gamma, r.rer_closed}; }
  static HeatmapCell from_values(const Values& v) { return {*v[0], *v[1], v[2]}; }
};

inline std::string format_number(double value) { return fmt::format("{:.10g}", value); }

namespace detail {

template <typename Values>
void check_required(const Values& values, std::span<const Column> columns, std::size_t row) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].required && !values[i]) {
      throw Error(fmt::format("row {}: missing required field {}", row, columns[i].name));
    }
  }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline std::optional<double> parse_cell(const std::string& text, const Column& column, std::size_t row) {
  if (text.empty() || text == column.absent_marker) return std::nullopt;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    throw Error(fmt::format("row {}: field {} is not a number: '{}'", row, column.name, text));
  }
  return value;
}

template <typename Writer>
std::size_t write_file(const std::filesystem::path& destination, Writer&& write) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(destination.string(), "cannot open for writing");
  const std::size_t bytes = write(out);
  out.flush();
  if (!out) throw IoError(destination.string(), "write failed");
  return bytes;
}

}  // namespace detail

template <typename Record>
std::string to_csv(std::span<const Record> records) {
  using Schema = RecordSchema<Record>;
  std::string text;
  for (std::size_t i = 0; i < Schema::columns.size(); ++i) {
    if (i) text += ',';
    text += Schema::columns[i].name;
  }
  text += '\n';
  for (const auto& record : records) {
    const auto values = Schema::values(record);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) text += ',';
      text += values[i] ? format_number(*values[i]) : std::string(Schema::columns[i].absent_marker);
    }
    text += '\n';
  }
  return text;
}

// Returns the number of bytes written.
template <typename Record>
std::size_t write_csv(std::span<const Record> records, std::ostream& out) {
  const auto text = to_csv(records);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  return text.size();
}

template <typename Record>
std::size_t write_csv(std::span<const Record> records, const std::filesystem::path& destination) {
  return detail::write_file(destination, [&](std::ostream& out) { return write_csv(records, out); });
}

template <typename Record>
std::vector<Record> read_csv(std::istream& in) {
  using Schema = RecordSchema<Record>;
  std::string line;
  if (!std::getline(in, line)) throw Error("csv: missing header row");
  const auto header = detail::split_csv_line(line);
  if (header.size() != Schema::columns.size()) throw Error("csv: unexpected column count in header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != Schema::columns[i].name) throw Error("csv: unexpected column " + header[i]);
  }

  std::vector<Record> records;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != Schema::columns.size()) throw Error(fmt::format("csv row {}: wrong field count", row));
    typename Schema::Values values{};
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = detail::parse_cell(fields[i], Schema::columns[i], row);
    detail::check_required(values, Schema::columns, row);
    records.push_back(Schema::from_values(values));
  }
  return records;
}

template <typename Record>
nlohmann::ordered_json to_json(std::span<const Record> records) {
  using Schema = RecordSchema<Record>;
  auto array = nlohmann::ordered_json::array();
  for (const auto& record : records) {
    const auto values = Schema::values(record);
    nlohmann::ordered_json object = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string key(Schema::columns[i].name);
      object[key] = values[i] ? nlohmann::ordered_json(*values[i]) : nlohmann::ordered_json(nullptr);
    }
    array.push_back(std::move(object));
  }
  return array;
}

template <typename Record>
std::size_t write_json(std::span<const Record> records, std::ostream& out) {
  const auto text = to_json(records).dump(2) + "\n";
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  return text.size();
}

template <typename Record>
std::size_t write_json(std::span<const Record> records, const std::filesystem::path& destination) {
  return detail::write_file(destination, [&](std::ostream& out) { return write_json(records, out); });
}

template <typename Record>
std::vector<Record> from_json(const nlohmann::ordered_json& array) {
  using Schema = RecordSchema<Record>;
  if (!array.is_array()) throw Error("json: expected an array of records");
  std::vector<Record> records;
  std::size_t row = 0;
  for (const auto& object : array) {
    ++row;
    if (!object.is_object()) throw Error(fmt::format("json row {}: expected an object", row));
    typename Schema::Values values{};
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string key(Schema::columns[i].name);
      const auto it = object.find(key);
      if (it == object.end() || it->is_null()) continue;
      if (!it->is_number()) throw Error(fmt::format("json row {}: field {} is not a number", row, key));
      values[i] = it->template get<double>();
    }
    detail::check_required(values, Schema::columns, row);
    records.push_back(Schema::from_values(values));
  }
  return records;
}

template <typename Record>
std::vector<Record> read_json(std::istream& in) {
  nlohmann::ordered_json array;
  try {
    in >> array;
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw Error(std::string("json: ") + e.what());
  }
  return from_json<Record>(array);
}

}  // namespace greedymine
