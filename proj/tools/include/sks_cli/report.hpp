#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"

namespace sks::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, human };

Format parse_format(const std::string& name);

/// One command's output. `result` holds scalar summaries, `rows` a table.
struct Report {
  std::string command;
  Json parameters = Json::object();
  Json tolerances = Json::object();
  std::uint64_t seed = 0;
  Json result = Json::object();
  Json rows = Json::array();
};

Json to_json(const Report& report);

/// json: one document. csv: the rows table, or the flattened result when
/// there are no rows. human: aligned key/value lines followed by the table.
void render(const Report& report, Format format, std::ostream& out);

/// %.17g for floating values, plain text otherwise.
std::string format_scalar(const Json& value);

}  // namespace sks::cli
