#pragma once

#include <string>
#include <vector>

#include "ncic/rational.hpp"

namespace ncic {

struct EdgeDecl {
  std::string id;
  std::string from;
  std::string to;
  Rational capacity;
};

struct SourceDecl {
  std::string id;
  std::string node;
  Rational rate;
};

struct NetworkTerminalDecl {
  std::string id;
  std::string node;
  std::vector<std::string> wants;  // source ids
};

/// A network coding problem instance: a DAG with edge capacities, sources
/// with rates, and terminals with demand sets. Immutable after construction;
/// all semantic orderings (table inputs, concatenated outputs) follow the
/// declaration order recorded here.
struct NetworkInstance {
  std::vector<std::string> nodes;
  std::vector<EdgeDecl> edges;
  std::vector<SourceDecl> sources;
  std::vector<NetworkTerminalDecl> terminals;
};

struct IndexSourceDecl {
  std::string id;
  Rational rate;
};

struct IndexTerminalDecl {
  std::string id;
  std::vector<std::string> wants;  // source ids
  std::vector<std::string> has;    // source ids
};

/// An index coding problem instance: server sources, terminals with wants
/// and has sets, and the broadcast rate of the single server message.
struct IndexInstance {
  std::vector<IndexSourceDecl> sources;
  std::vector<IndexTerminalDecl> terminals;
  Rational broadcast_rate;
};

struct Violation {
  std::string rule;
  std::string message;
  std::string element;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  std::vector<Violation> warnings;  // advisory only; do not affect ok
};

/// Checks every structural invariant of a network instance. Violations are
/// reported, never thrown.
ValidationReport validate_network(const NetworkInstance& inst);

/// Checks every structural invariant of an index instance. A terminal that
/// wants a source it also has is reported as a warning, not a violation.
ValidationReport validate_index(const IndexInstance& inst);

/// Deterministic topological order of edge ids: every edge in In(e) appears
/// strictly earlier, ties broken by declaration order. Throws
/// std::invalid_argument when the instance fails validation.
std::vector<std::string> topological_order(const NetworkInstance& inst);

/// One input to an edge's local encoder: either a source variable (for edges
/// leaving a source node) or the value on an incoming edge.
struct InputRef {
  bool is_source = false;
  std::string id;

  friend bool operator==(const InputRef&, const InputRef&) = default;
};

/// Inputs of the edge's local encoder, in declaration order: the sources at
/// the tail node if it hosts any, otherwise the edges entering the tail.
std::vector<InputRef> edge_inputs(const NetworkInstance& inst, const std::string& edge_id);

/// Edges entering the terminal's node, in declaration order.
std::vector<std::string> terminal_inputs(const NetworkInstance& inst,
                                         const std::string& terminal_id);

/// In(x) for an edge or terminal id: the ids from edge_inputs / terminal_inputs.
/// Throws std::invalid_argument for unknown ids.
std::vector<std::string> in_set(const NetworkInstance& inst, const std::string& id);

}  // namespace ncic
