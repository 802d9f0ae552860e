#include "ncic/reduction.hpp"

#include <set>
#include <stdexcept>

namespace ncic {

namespace {

std::string src_name(const std::string& id) { return "src:" + id; }
std::string edge_name(const std::string& id) { return "edge:" + id; }
std::string term_name(const std::string& id) { return "t:" + id; }

}  // namespace

Reduction reduce_instance(const NetworkInstance& inst) {
  ValidationReport report = validate_network(inst);
  if (!report.ok) {
    throw std::invalid_argument("invalid network instance: " +
                                report.violations.front().message);
  }

  Reduction out;
  IndexInstance& hat = out.instance;
  ReductionMap& map = out.map;

  for (const auto& s : inst.sources) {
    hat.sources.push_back({src_name(s.id), s.rate});
    map.source_of[src_name(s.id)] = {OriginKind::Source, s.id};
  }
  Rational total_capacity = 0;
  for (const auto& e : inst.edges) {
    hat.sources.push_back({edge_name(e.id), e.capacity});
    map.source_of[edge_name(e.id)] = {OriginKind::Edge, e.id};
    total_capacity += e.capacity;
  }
  hat.broadcast_rate = total_capacity;
  map.c_hat_b = total_capacity;

  for (const auto& e : inst.edges) {
    IndexTerminalDecl t;
    t.id = edge_name(e.id);
    t.wants = {edge_name(e.id)};
    for (const auto& ref : edge_inputs(inst, e.id)) {
      t.has.push_back(ref.is_source ? src_name(ref.id) : edge_name(ref.id));
    }
    hat.terminals.push_back(std::move(t));
    map.terminal_of[edge_name(e.id)] = {OriginKind::Edge, e.id};
  }

  for (const auto& nt : inst.terminals) {
    IndexTerminalDecl t;
    t.id = term_name(nt.id);
    std::set<std::string> wants(nt.wants.begin(), nt.wants.end());
    for (const auto& s : inst.sources) {
      if (wants.count(s.id)) t.wants.push_back(src_name(s.id));
    }
    for (const auto& id : terminal_inputs(inst, nt.id)) {
      t.has.push_back(edge_name(id));
    }
    hat.terminals.push_back(std::move(t));
    map.terminal_of[term_name(nt.id)] = {OriginKind::Terminal, nt.id};
  }

  {
    IndexTerminalDecl t;
    t.id = "all";
    for (const auto& e : inst.edges) t.wants.push_back(edge_name(e.id));
    for (const auto& s : inst.sources) t.has.push_back(src_name(s.id));
    hat.terminals.push_back(std::move(t));
    map.terminal_of["all"] = {OriginKind::All, ""};
  }

  return out;
}

std::vector<std::pair<std::string, Rational>> reduce_rates(const NetworkInstance& inst,
                                                           std::span<const Rational> rates) {
  if (rates.size() != inst.sources.size()) {
    throw std::invalid_argument("rate tuple must have one entry per source");
  }
  std::vector<std::pair<std::string, Rational>> out;
  out.reserve(inst.sources.size() + inst.edges.size());
  for (std::size_t i = 0; i < inst.sources.size(); ++i) {
    out.emplace_back(src_name(inst.sources[i].id), rates[i]);
  }
  for (const auto& e : inst.edges) {
    out.emplace_back(edge_name(e.id), e.capacity);
  }
  return out;
}

}  // namespace ncic
