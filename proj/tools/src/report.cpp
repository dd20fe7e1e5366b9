#include "sks_cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "sks/version.hpp"

namespace sks::cli {
namespace {

void flatten(const Json& value, const std::string& prefix,
             std::vector<std::pair<std::string, Json>>& out) {
  if (value.is_object()) {
    for (const auto& [key, v] : value.items()) {
      flatten(v, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else {
    out.emplace_back(prefix, value);
  }
}

std::string csv_cell(const Json& value) {
  std::string s = value.is_array() ? value.dump() : format_scalar(value);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void write_table(const Json& rows, std::ostream& out, const char* sep, bool csv) {
  std::vector<std::string> header;
  for (const Json& row : rows) {
    std::vector<std::pair<std::string, Json>> cells;
    flatten(row, "", cells);
    for (const auto& [key, v] : cells) {
      if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
    }
  }
  std::vector<std::vector<std::string>> table{header};
  for (const Json& row : rows) {
    std::vector<std::pair<std::string, Json>> cells;
    flatten(row, "", cells);
    std::vector<std::string>& line = table.emplace_back();
    for (const std::string& name : header) {
      Json cell;
      for (const auto& [key, v] : cells) {
        if (key == name) cell = v;
      }
      line.push_back(csv ? csv_cell(cell) : format_scalar(cell));
    }
  }
  // csv stays unpadded; human output pads every column but the last
  std::vector<std::size_t> width(header.size(), 0);
  if (!csv) {
    for (const auto& line : table) {
      for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
  }
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out << sep;
      out << line[i];
      if (!csv && i + 1 < line.size()) out << std::string(width[i] - line[i].size(), ' ');
    }
    out << '\n';
  }
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "human") return Format::human;
  throw std::invalid_argument("unknown format '" + name + "' (expected json, csv or human)");
}

std::string format_scalar(const Json& value) {
  if (value.is_number_float()) {
    const double x = value.get<double>();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "null";
  return value.dump();
}

Json to_json(const Report& report) {
  Json j;
  j["tool"] = "skellam-stein";
  j["version"] = std::string(kVersion);
  j["command"] = report.command;
  j["parameters"] = report.parameters;
  j["seed"] = report.seed;
  j["tolerances"] = report.tolerances;
  j["result"] = report.result;
  if (!report.rows.empty()) j["rows"] = report.rows;
  return j;
}

void render(const Report& report, Format format, std::ostream& out) {
  switch (format) {
    case Format::json:
      out << to_json(report).dump(2) << '\n';
      return;
    case Format::csv:
      if (!report.rows.empty()) {
        write_table(report.rows, out, ",", true);
      } else {
        write_table(Json::array({report.result}), out, ",", true);
      }
      return;
    case Format::human: {
      std::vector<std::pair<std::string, Json>> lines;
      flatten(Json{{"command", report.command}}, "", lines);
      flatten(report.parameters, "", lines);
      lines.emplace_back("seed", report.seed);
      flatten(report.tolerances, "", lines);
      flatten(report.result, "", lines);
      std::size_t width = 0;
      for (const auto& l : lines) width = std::max(width, l.first.size());
      for (const auto& [key, v] : lines) {
        out << key << std::string(width - key.size() + 2, ' ')
            << (v.is_array() ? v.dump() : format_scalar(v)) << '\n';
      }
      if (!report.rows.empty()) {
        out << '\n';
        write_table(report.rows, out, "  ", false);
      }
      return;
    }
  }
}

}  // namespace sks::cli
