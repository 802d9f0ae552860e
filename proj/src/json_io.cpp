#include "ncic/json_io.hpp"

#include <fstream>
#include <limits>
#include <set>

namespace ncic {

namespace {

const Json& require(const Json& doc, const char* key, const char* what) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError(std::string(what) + " is missing field '" + key + "'");
  }
  return *it;
}

std::string require_string(const Json& doc, const char* key, const char* what) {
  const Json& value = require(doc, key, what);
  if (!value.is_string()) {
    throw ParseError(std::string(what) + " field '" + key + "' must be a string");
  }
  return value.get<std::string>();
}

std::vector<std::string> string_array(const Json& value, const char* what) {
  if (!value.is_array()) {
    throw ParseError(std::string(what) + " must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw ParseError(std::string(what) + " must be an array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

TruthTable table_from_entries(const Json& value, std::vector<MessageSpace> inputs,
                              MessageSpace output, const std::string& what) {
  if (!value.is_array()) {
    throw ParseError("table for " + what + " must be an array of integers");
  }
  std::vector<std::uint64_t> entries;
  entries.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_number_unsigned() && !item.is_number_integer()) {
      throw ParseError("table for " + what + " must contain only integers");
    }
    if (item.is_number_integer() && item.get<std::int64_t>() < 0) {
      throw ParseError("table for " + what + " contains a negative entry");
    }
    entries.push_back(item.get<std::uint64_t>());
  }
  try {
    return TruthTable(std::move(inputs), output, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError("table for " + what + ": " + e.what());
  }
}

std::uint32_t block_length_field(const Json& doc) {
  const Json& value = require(doc, "block_length", "code");
  if (!value.is_number_integer() && !value.is_number_unsigned()) {
    throw ParseError("'block_length' must be a positive integer");
  }
  std::int64_t n = value.get<std::int64_t>();
  if (n <= 0) {
    throw ParseError("'block_length' must be a positive integer");
  }
  return static_cast<std::uint32_t>(n);
}

}  // namespace

Rational rational_from_json(const Json& value) {
  try {
    if (value.is_string()) {
      return Rational::parse(value.get<std::string>());
    }
    if (value.is_number_integer()) {
      return Rational(value.get<std::int64_t>());
    }
    if (value.is_number_unsigned()) {
      auto raw = value.get<std::uint64_t>();
      if (raw > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw ParseError("number too large for exact rational");
      }
      return Rational(static_cast<std::int64_t>(raw));
    }
    if (value.is_number_float()) {
      return Rational::from_double(value.get<double>());
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  } catch (const std::overflow_error& e) {
    throw ParseError(e.what());
  }
  throw ParseError("expected a rational (number or \"p/q\" string)");
}

Json rational_to_json(const Rational& value) {
  if (value.is_integer()) {
    return Json(value.num());
  }
  return Json(value.str());
}

Json to_json(const NetworkInstance& inst) {
  Json doc;
  doc["nodes"] = inst.nodes;
  doc["edges"] = Json::array();
  for (const auto& e : inst.edges) {
    doc["edges"].push_back({{"id", e.id},
                            {"from", e.from},
                            {"to", e.to},
                            {"capacity", rational_to_json(e.capacity)}});
  }
  doc["sources"] = Json::array();
  for (const auto& s : inst.sources) {
    doc["sources"].push_back(
        {{"id", s.id}, {"node", s.node}, {"rate", rational_to_json(s.rate)}});
  }
  doc["terminals"] = Json::array();
  for (const auto& t : inst.terminals) {
    doc["terminals"].push_back({{"id", t.id}, {"node", t.node}, {"wants", t.wants}});
  }
  return doc;
}

NetworkInstance network_instance_from_json(const Json& doc) {
  if (!doc.is_object()) {
    throw ParseError("network instance must be a JSON object");
  }
  NetworkInstance inst;
  inst.nodes = string_array(require(doc, "nodes", "network instance"), "'nodes'");
  for (const auto& item : require(doc, "edges", "network instance")) {
    inst.edges.push_back({require_string(item, "id", "edge"),
                          require_string(item, "from", "edge"),
                          require_string(item, "to", "edge"),
                          rational_from_json(require(item, "capacity", "edge"))});
  }
  for (const auto& item : require(doc, "sources", "network instance")) {
    inst.sources.push_back({require_string(item, "id", "source"),
                            require_string(item, "node", "source"),
                            rational_from_json(require(item, "rate", "source"))});
  }
  for (const auto& item : require(doc, "terminals", "network instance")) {
    inst.terminals.push_back({require_string(item, "id", "terminal"),
                              require_string(item, "node", "terminal"),
                              string_array(require(item, "wants", "terminal"), "'wants'")});
  }
  return inst;
}

Json to_json(const IndexInstance& inst) {
  Json doc;
  doc["sources"] = Json::array();
  for (const auto& s : inst.sources) {
    doc["sources"].push_back({{"id", s.id}, {"rate", rational_to_json(s.rate)}});
  }
  doc["terminals"] = Json::array();
  for (const auto& t : inst.terminals) {
    doc["terminals"].push_back({{"id", t.id}, {"wants", t.wants}, {"has", t.has}});
  }
  doc["broadcast_rate"] = rational_to_json(inst.broadcast_rate);
  return doc;
}

IndexInstance index_instance_from_json(const Json& doc) {
  if (!doc.is_object()) {
    throw ParseError("index instance must be a JSON object");
  }
  IndexInstance inst;
  for (const auto& item : require(doc, "sources", "index instance")) {
    inst.sources.push_back({require_string(item, "id", "source"),
                            rational_from_json(require(item, "rate", "source"))});
  }
  for (const auto& item : require(doc, "terminals", "index instance")) {
    inst.terminals.push_back({require_string(item, "id", "terminal"),
                              string_array(require(item, "wants", "terminal"), "'wants'"),
                              string_array(require(item, "has", "terminal"), "'has'")});
  }
  inst.broadcast_rate = rational_from_json(require(doc, "broadcast_rate", "index instance"));
  return inst;
}

Json to_json(const NetworkCode& code) {
  Json doc;
  doc["block_length"] = code.block_length;
  doc["encoders"] = Json::object();
  for (const auto& [id, table] : code.encoders) {
    doc["encoders"][id] = table.entries();
  }
  doc["decoders"] = Json::object();
  for (const auto& [id, table] : code.decoders) {
    doc["decoders"][id] = table.entries();
  }
  return doc;
}

NetworkCode network_code_from_json(const Json& doc, const NetworkInstance& inst) {
  if (!doc.is_object()) {
    throw ParseError("network code must be a JSON object");
  }
  NetworkCode code;
  code.block_length = block_length_field(doc);

  auto source_rate = [&](const std::string& id) {
    for (const auto& s : inst.sources) {
      if (s.id == id) return s.rate;
    }
    throw ParseError("instance has no source '" + id + "'");
  };
  auto edge_capacity = [&](const std::string& id) {
    for (const auto& e : inst.edges) {
      if (e.id == id) return e.capacity;
    }
    throw ParseError("instance has no edge '" + id + "'");
  };

  const Json& encoders = require(doc, "encoders", "network code");
  for (const auto& e : inst.edges) {
    auto it = encoders.find(e.id);
    if (it == encoders.end()) {
      throw ParseError("network code is missing the encoder for edge '" + e.id + "'");
    }
    std::vector<MessageSpace> inputs;
    for (const auto& ref : edge_inputs(inst, e.id)) {
      inputs.push_back(space_for_rate(
          ref.is_source ? source_rate(ref.id) : edge_capacity(ref.id), code.block_length));
    }
    code.encoders.emplace(e.id, table_from_entries(*it, std::move(inputs),
                                                   space_for_rate(e.capacity, code.block_length),
                                                   "edge '" + e.id + "'"));
  }

  const Json& decoders = require(doc, "decoders", "network code");
  for (const auto& t : inst.terminals) {
    auto it = decoders.find(t.id);
    if (it == decoders.end()) {
      throw ParseError("network code is missing the decoder for terminal '" + t.id + "'");
    }
    std::vector<MessageSpace> inputs;
    for (const auto& id : terminal_inputs(inst, t.id)) {
      inputs.push_back(space_for_rate(edge_capacity(id), code.block_length));
    }
    std::uint32_t wanted_width = 0;
    std::set<std::string> wants(t.wants.begin(), t.wants.end());
    for (const auto& s : inst.sources) {
      if (wants.count(s.id)) {
        wanted_width += space_for_rate(s.rate, code.block_length).width_bits;
      }
    }
    code.decoders.emplace(t.id, table_from_entries(*it, std::move(inputs),
                                                   MessageSpace{wanted_width},
                                                   "terminal '" + t.id + "'"));
  }
  return code;
}

Json to_json(const IndexCode& code) {
  Json doc;
  doc["block_length"] = code.block_length;
  doc["encoder"] = code.encoder.entries();
  doc["decoders"] = Json::object();
  for (const auto& [id, table] : code.decoders) {
    doc["decoders"][id] = table.entries();
  }
  return doc;
}

IndexCode index_code_from_json(const Json& doc, const IndexInstance& inst) {
  if (!doc.is_object()) {
    throw ParseError("index code must be a JSON object");
  }
  std::uint32_t n = block_length_field(doc);

  std::vector<MessageSpace> source_spaces;
  for (const auto& s : inst.sources) source_spaces.push_back(space_for_rate(s.rate, n));
  MessageSpace broadcast = space_for_rate(inst.broadcast_rate, n);

  TruthTable encoder = table_from_entries(require(doc, "encoder", "index code"), source_spaces,
                                          broadcast, "the broadcast encoder");

  IndexCode code{n, std::move(encoder), {}};
  const Json& decoders = require(doc, "decoders", "index code");
  for (const auto& t : inst.terminals) {
    auto it = decoders.find(t.id);
    if (it == decoders.end()) {
      throw ParseError("index code is missing the decoder for terminal '" + t.id + "'");
    }
    std::vector<MessageSpace> inputs{broadcast};
    std::uint32_t wanted_width = 0;
    std::set<std::string> has(t.has.begin(), t.has.end());
    std::set<std::string> wants(t.wants.begin(), t.wants.end());
    for (std::size_t i = 0; i < inst.sources.size(); ++i) {
      if (has.count(inst.sources[i].id)) inputs.push_back(source_spaces[i]);
      if (wants.count(inst.sources[i].id)) wanted_width += source_spaces[i].width_bits;
    }
    code.decoders.emplace(t.id, table_from_entries(*it, std::move(inputs),
                                                   MessageSpace{wanted_width},
                                                   "terminal '" + t.id + "'"));
  }
  return code;
}

Json to_json(const ReductionMap& map) {
  auto origin_to_json = [](const Origin& origin) {
    switch (origin.kind) {
      case OriginKind::Source:
        return Json{{"kind", "source"}, {"id", origin.id}};
      case OriginKind::Edge:
        return Json{{"kind", "edge"}, {"id", origin.id}};
      case OriginKind::Terminal:
        return Json{{"kind", "terminal"}, {"id", origin.id}};
      case OriginKind::All:
        return Json{{"kind", "all"}};
    }
    return Json();
  };
  Json doc;
  doc["sources"] = Json::object();
  for (const auto& [id, origin] : map.source_of) {
    doc["sources"][id] = origin_to_json(origin);
  }
  doc["terminals"] = Json::object();
  for (const auto& [id, origin] : map.terminal_of) {
    doc["terminals"][id] = origin_to_json(origin);
  }
  doc["c_hat_b"] = rational_to_json(map.c_hat_b);
  return doc;
}

ReductionMap reduction_map_from_json(const Json& doc) {
  auto origin_from_json = [](const Json& value) {
    std::string kind = require_string(value, "kind", "origin");
    if (kind == "all") return Origin{OriginKind::All, ""};
    std::string id = require_string(value, "id", "origin");
    if (kind == "source") return Origin{OriginKind::Source, id};
    if (kind == "edge") return Origin{OriginKind::Edge, id};
    if (kind == "terminal") return Origin{OriginKind::Terminal, id};
    throw ParseError("unknown origin kind '" + kind + "'");
  };
  ReductionMap map;
  for (const auto& [id, value] : require(doc, "sources", "reduction map").items()) {
    map.source_of[id] = origin_from_json(value);
  }
  for (const auto& [id, value] : require(doc, "terminals", "reduction map").items()) {
    map.terminal_of[id] = origin_from_json(value);
  }
  map.c_hat_b = rational_from_json(require(doc, "c_hat_b", "reduction map"));
  return map;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("cannot parse '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot open '" + path + "' for writing");
  }
  out << text;
  if (!out) {
    throw ParseError("write to '" + path + "' failed");
  }
}

}  // namespace ncic
