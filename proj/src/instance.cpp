#include "ncic/instance.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ncic {

namespace {

void check_unique(std::vector<std::string> ids, const std::string& what,
                  ValidationReport& report) {
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] == ids[i - 1] && (i < 2 || ids[i] != ids[i - 2])) {
      report.violations.push_back(
          {"unique-id", "duplicate " + what + " id '" + ids[i] + "'", ids[i]});
    }
  }
}

}  // namespace

ValidationReport validate_network(const NetworkInstance& inst) {
  ValidationReport report;

  std::set<std::string> nodes(inst.nodes.begin(), inst.nodes.end());
  std::set<std::string> source_ids;
  std::set<std::string> source_nodes;
  std::set<std::string> terminal_nodes;

  {
    std::vector<std::string> ids;
    for (const auto& e : inst.edges) ids.push_back(e.id);
    check_unique(std::move(ids), "edge", report);
  }
  {
    std::vector<std::string> ids;
    for (const auto& s : inst.sources) ids.push_back(s.id);
    check_unique(std::move(ids), "source", report);
  }
  {
    std::vector<std::string> ids;
    for (const auto& t : inst.terminals) ids.push_back(t.id);
    check_unique(std::move(ids), "terminal", report);
  }
  check_unique(inst.nodes, "node", report);

  for (const auto& s : inst.sources) {
    source_ids.insert(s.id);
    source_nodes.insert(s.node);
    if (!nodes.count(s.node)) {
      report.violations.push_back(
          {"unknown-node", "source '" + s.id + "' placed at undeclared node '" + s.node + "'",
           s.id});
    }
    if (s.rate.is_negative()) {
      report.violations.push_back(
          {"rate-negative", "source '" + s.id + "' has negative rate " + s.rate.str(), s.id});
    }
  }

  for (const auto& e : inst.edges) {
    if (!nodes.count(e.from) || !nodes.count(e.to)) {
      report.violations.push_back(
          {"unknown-node", "edge '" + e.id + "' references an undeclared node", e.id});
    }
    if (e.capacity.is_negative()) {
      report.violations.push_back(
          {"capacity-negative", "edge '" + e.id + "' has negative capacity " + e.capacity.str(),
           e.id});
    }
    if (source_nodes.count(e.to)) {
      report.violations.push_back(
          {"source-incoming", "edge '" + e.id + "' enters source node '" + e.to + "'", e.id});
    }
  }

  for (const auto& t : inst.terminals) {
    terminal_nodes.insert(t.node);
    if (!nodes.count(t.node)) {
      report.violations.push_back(
          {"unknown-node", "terminal '" + t.id + "' placed at undeclared node '" + t.node + "'",
           t.id});
    }
    std::set<std::string> seen;
    for (const auto& want : t.wants) {
      if (!source_ids.count(want)) {
        report.violations.push_back(
            {"unknown-source", "terminal '" + t.id + "' wants undeclared source '" + want + "'",
             t.id});
      }
      if (!seen.insert(want).second) {
        report.violations.push_back(
            {"duplicate-want", "terminal '" + t.id + "' lists source '" + want + "' twice",
             t.id});
      }
    }
  }

  for (const auto& e : inst.edges) {
    if (terminal_nodes.count(e.from)) {
      report.violations.push_back(
          {"terminal-outgoing", "edge '" + e.id + "' leaves terminal node '" + e.from + "'",
           e.id});
    }
  }

  // Kahn's algorithm on nodes; leftovers mean a directed cycle.
  {
    std::map<std::string, std::size_t> indegree;
    for (const auto& n : inst.nodes) indegree[n] = 0;
    for (const auto& e : inst.edges) {
      if (indegree.count(e.to)) ++indegree[e.to];
    }
    std::vector<std::string> queue;
    for (const auto& [node, deg] : indegree) {
      if (deg == 0) queue.push_back(node);
    }
    std::size_t removed = 0;
    while (!queue.empty()) {
      std::string node = queue.back();
      queue.pop_back();
      ++removed;
      for (const auto& e : inst.edges) {
        if (e.from == node && indegree.count(e.to) && --indegree[e.to] == 0) {
          queue.push_back(e.to);
        }
      }
    }
    if (removed != indegree.size()) {
      report.violations.push_back(
          {"acyclicity", "the edge relation contains a directed cycle", ""});
    }
  }

  report.ok = report.violations.empty();
  return report;
}

ValidationReport validate_index(const IndexInstance& inst) {
  ValidationReport report;

  std::set<std::string> source_ids;
  {
    std::vector<std::string> ids;
    for (const auto& s : inst.sources) ids.push_back(s.id);
    check_unique(std::move(ids), "source", report);
  }
  {
    std::vector<std::string> ids;
    for (const auto& t : inst.terminals) ids.push_back(t.id);
    check_unique(std::move(ids), "terminal", report);
  }

  for (const auto& s : inst.sources) {
    source_ids.insert(s.id);
    if (s.rate.is_negative()) {
      report.violations.push_back(
          {"rate-negative", "source '" + s.id + "' has negative rate " + s.rate.str(), s.id});
    }
  }
  if (inst.broadcast_rate.is_negative()) {
    report.violations.push_back(
        {"rate-negative", "broadcast rate " + inst.broadcast_rate.str() + " is negative", ""});
  }

  for (const auto& t : inst.terminals) {
    auto check_refs = [&](const std::vector<std::string>& refs, const char* which) {
      std::set<std::string> seen;
      for (const auto& id : refs) {
        if (!source_ids.count(id)) {
          report.violations.push_back({"unknown-source",
                                       "terminal '" + t.id + "' " + which +
                                           " undeclared source '" + id + "'",
                                       t.id});
        }
        if (!seen.insert(id).second) {
          report.violations.push_back(
              {"duplicate-ref",
               "terminal '" + t.id + "' " + which + " source '" + id + "' twice", t.id});
        }
      }
      return seen;
    };
    auto wants = check_refs(t.wants, "wants");
    auto has = check_refs(t.has, "has");
    if (t.wants.empty()) {
      report.violations.push_back(
          {"empty-wants", "terminal '" + t.id + "' wants nothing", t.id});
    }
    for (const auto& id : wants) {
      if (has.count(id)) {
        report.warnings.push_back(
            {"wants-has-overlap",
             "terminal '" + t.id + "' both wants and has source '" + id + "'", t.id});
      }
    }
  }

  report.ok = report.violations.empty();
  return report;
}

std::vector<std::string> topological_order(const NetworkInstance& inst) {
  ValidationReport report = validate_network(inst);
  if (!report.ok) {
    throw std::invalid_argument("invalid network instance: " + report.violations.front().message);
  }

  // An edge is ready once every edge entering its tail has been emitted.
  // Among ready edges the smallest declaration index goes first.
  std::map<std::string, std::vector<std::size_t>> edges_from;  // tail node -> edge positions
  std::vector<std::size_t> pending(inst.edges.size());
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    edges_from[inst.edges[i].from].push_back(i);
  }
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    std::size_t count = 0;
    for (const auto& e : inst.edges) {
      if (e.to == inst.edges[i].from) ++count;
    }
    pending[i] = count;
  }

  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    if (pending[i] == 0) ready.insert(i);
  }

  std::vector<std::string> order;
  order.reserve(inst.edges.size());
  while (!ready.empty()) {
    std::size_t next = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(inst.edges[next].id);
    auto it = edges_from.find(inst.edges[next].to);
    if (it != edges_from.end()) {
      for (std::size_t succ : it->second) {
        if (--pending[succ] == 0) ready.insert(succ);
      }
    }
  }
  return order;
}

std::vector<InputRef> edge_inputs(const NetworkInstance& inst, const std::string& edge_id) {
  const EdgeDecl* edge = nullptr;
  for (const auto& e : inst.edges) {
    if (e.id == edge_id) {
      edge = &e;
      break;
    }
  }
  if (edge == nullptr) {
    throw std::invalid_argument("unknown edge id '" + edge_id + "'");
  }

  std::vector<InputRef> inputs;
  for (const auto& s : inst.sources) {
    if (s.node == edge->from) inputs.push_back({true, s.id});
  }
  if (!inputs.empty()) {
    return inputs;  // edges leaving a source node read the sources directly
  }
  for (const auto& e : inst.edges) {
    if (e.to == edge->from) inputs.push_back({false, e.id});
  }
  return inputs;
}

std::vector<std::string> terminal_inputs(const NetworkInstance& inst,
                                         const std::string& terminal_id) {
  const NetworkTerminalDecl* terminal = nullptr;
  for (const auto& t : inst.terminals) {
    if (t.id == terminal_id) {
      terminal = &t;
      break;
    }
  }
  if (terminal == nullptr) {
    throw std::invalid_argument("unknown terminal id '" + terminal_id + "'");
  }
  std::vector<std::string> inputs;
  for (const auto& e : inst.edges) {
    if (e.to == terminal->node) inputs.push_back(e.id);
  }
  return inputs;
}

std::vector<std::string> in_set(const NetworkInstance& inst, const std::string& id) {
  for (const auto& e : inst.edges) {
    if (e.id == id) {
      std::vector<std::string> ids;
      for (const auto& ref : edge_inputs(inst, id)) ids.push_back(ref.id);
      return ids;
    }
  }
  return terminal_inputs(inst, id);
}

}  // namespace ncic
