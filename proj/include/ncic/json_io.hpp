#pragma once

#include <string>

#include <json.hpp>

#include "ncic/code.hpp"
#include "ncic/instance.hpp"
#include "ncic/reduction.hpp"

namespace ncic {

using Json = nlohmann::json;

/// Rationals appear in files as JSON numbers (exact when integral or dyadic)
/// or as "p/q" strings. Integral values are emitted as numbers, everything
/// else as "p/q".
Rational rational_from_json(const Json& value);
Json rational_to_json(const Rational& value);

Json to_json(const NetworkInstance& inst);
NetworkInstance network_instance_from_json(const Json& doc);

Json to_json(const IndexInstance& inst);
IndexInstance index_instance_from_json(const Json& doc);

/// Code files carry bare entry arrays, row-major over the mixed-radix input
/// index; the spaces come from binding to the instance, so parsing needs it.
Json to_json(const NetworkCode& code);
NetworkCode network_code_from_json(const Json& doc, const NetworkInstance& inst);

Json to_json(const IndexCode& code);
IndexCode index_code_from_json(const Json& doc, const IndexInstance& inst);

Json to_json(const ReductionMap& map);
ReductionMap reduction_map_from_json(const Json& doc);

/// Reads and parses a JSON document; throws ParseError with the path on any
/// failure.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ncic
