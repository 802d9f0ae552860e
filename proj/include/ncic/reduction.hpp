#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncic/instance.hpp"

namespace ncic {

enum class OriginKind { Source, Edge, Terminal, All };

/// Where an index-coding object came from in the network instance.
struct Origin {
  OriginKind kind = OriginKind::All;
  std::string id;  // empty for All

  friend bool operator==(const Origin&, const Origin&) = default;
};

/// Correspondence between a network instance and its reduced index instance.
struct ReductionMap {
  std::map<std::string, Origin> source_of;    // index source id -> Source | Edge
  std::map<std::string, Origin> terminal_of;  // index terminal id -> Edge | Terminal | All
  Rational c_hat_b;                           // = sum of edge capacities

  friend bool operator==(const ReductionMap&, const ReductionMap&) = default;
};

struct Reduction {
  IndexInstance instance;
  ReductionMap map;
};

/// Builds the index instance equivalent to a network instance:
///   - one index source per network source (same rate) and one per edge
///     (rate = capacity),
///   - a terminal per edge e (has the In(e) variables, wants the edge
///     variable), a terminal per network terminal (has the In(t) variables,
///     wants its demanded sources), and one terminal that has every
///     source-origin variable and wants every edge-origin variable,
///   - broadcast rate equal to the total edge capacity.
/// Naming is deterministic: "src:<id>", "edge:<id>", "t:<id>", "all".
/// Throws std::invalid_argument when the network instance fails validation.
Reduction reduce_instance(const NetworkInstance& inst);

/// Rate vector for the reduced instance: the given per-source rates carried
/// over verbatim, followed by the edge capacities. `rates` is indexed by
/// source declaration order.
std::vector<std::pair<std::string, Rational>> reduce_rates(const NetworkInstance& inst,
                                                           std::span<const Rational> rates);

}  // namespace ncic
