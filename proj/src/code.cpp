#include "ncic/code.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace ncic {

namespace {

/// Packed concatenation of the wanted source values, declaration order,
/// most significant first.
std::uint64_t pack_wanted(std::span<const std::uint64_t> source_values,
                          const std::vector<std::size_t>& wanted,
                          const std::vector<MessageSpace>& spaces) {
  std::uint64_t packed = 0;
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    packed = packed * spaces[i].cardinality() + source_values[wanted[i]];
  }
  return packed;
}

std::vector<std::uint64_t> realization_vector(const std::vector<SourceDecl>& sources,
                                              std::span<const MessageSpace> spaces,
                                              const Realization& x) {
  if (x.values.size() != sources.size()) {
    throw std::invalid_argument("realization must assign every source exactly once");
  }
  std::vector<std::uint64_t> values(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    auto it = x.values.find(sources[i].id);
    if (it == x.values.end()) {
      throw std::invalid_argument("realization missing source '" + sources[i].id + "'");
    }
    if (it->second >= spaces[i].cardinality()) {
      throw std::invalid_argument("realization value for '" + sources[i].id +
                                  "' outside its message space");
    }
    values[i] = it->second;
  }
  return values;
}

std::vector<std::uint64_t> index_realization_vector(const IndexInstance& inst,
                                                    std::span<const MessageSpace> spaces,
                                                    const Realization& x) {
  if (x.values.size() != inst.sources.size()) {
    throw std::invalid_argument("realization must assign every source exactly once");
  }
  std::vector<std::uint64_t> values(inst.sources.size());
  for (std::size_t i = 0; i < inst.sources.size(); ++i) {
    auto it = x.values.find(inst.sources[i].id);
    if (it == x.values.end()) {
      throw std::invalid_argument("realization missing source '" + inst.sources[i].id + "'");
    }
    if (it->second >= spaces[i].cardinality()) {
      throw std::invalid_argument("realization value for '" + inst.sources[i].id +
                                  "' outside its message space");
    }
    values[i] = it->second;
  }
  return values;
}

/// Counts satisfied realizations over [begin, end) of the packed realization
/// index space. The split into ranges never changes the total.
template <typename SatisfiedFn>
std::uint64_t count_range(std::uint64_t begin, std::uint64_t end, SatisfiedFn&& satisfied) {
  std::uint64_t count = 0;
  for (std::uint64_t r = begin; r < end; ++r) {
    if (satisfied(r)) ++count;
  }
  return count;
}

template <typename SatisfiedFn>
Rational enumerate_success(std::uint64_t total, const EnumerationOptions& opts,
                           SatisfiedFn&& satisfied) {
  unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1 || total < 2 * jobs) {
    return Rational(static_cast<std::int64_t>(count_range(0, total, satisfied)),
                    static_cast<std::int64_t>(total));
  }
  std::vector<std::uint64_t> counts(jobs, 0);
  std::vector<std::thread> workers;
  std::uint64_t chunk = total / jobs;
  std::uint64_t rest = total % jobs;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < jobs; ++w) {
    std::uint64_t end = begin + chunk + (w < rest ? 1 : 0);
    workers.emplace_back(
        [&, w, begin, end] { counts[w] = count_range(begin, end, satisfied); });
    begin = end;
  }
  for (auto& worker : workers) worker.join();
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts) sum += c;
  return Rational(static_cast<std::int64_t>(sum), static_cast<std::int64_t>(total));
}

}  // namespace

void check_network_binding(const NetworkInstance& inst, const NetworkCode& code) {
  if (code.block_length == 0) {
    throw std::invalid_argument("block length must be positive");
  }
  if (code.encoders.size() != inst.edges.size()) {
    throw std::invalid_argument("code must provide exactly one encoder per edge");
  }
  if (code.decoders.size() != inst.terminals.size()) {
    throw std::invalid_argument("code must provide exactly one decoder per terminal");
  }
  auto source_rate = [&](const std::string& id) {
    for (const auto& s : inst.sources) {
      if (s.id == id) return s.rate;
    }
    throw std::invalid_argument("unknown source id '" + id + "'");
  };
  auto edge_capacity = [&](const std::string& id) {
    for (const auto& e : inst.edges) {
      if (e.id == id) return e.capacity;
    }
    throw std::invalid_argument("unknown edge id '" + id + "'");
  };

  for (const auto& e : inst.edges) {
    auto it = code.encoders.find(e.id);
    if (it == code.encoders.end()) {
      throw std::invalid_argument("code has no encoder for edge '" + e.id + "'");
    }
    const TruthTable& table = it->second;
    std::vector<MessageSpace> expected;
    for (const auto& ref : edge_inputs(inst, e.id)) {
      expected.push_back(space_for_rate(ref.is_source ? source_rate(ref.id)
                                                      : edge_capacity(ref.id),
                                        code.block_length));
    }
    if (table.input_spaces() != expected ||
        table.output_space() != space_for_rate(e.capacity, code.block_length)) {
      throw std::invalid_argument("encoder for edge '" + e.id +
                                  "' does not match In(e) and capacity widths");
    }
  }
  for (const auto& t : inst.terminals) {
    auto it = code.decoders.find(t.id);
    if (it == code.decoders.end()) {
      throw std::invalid_argument("code has no decoder for terminal '" + t.id + "'");
    }
    const TruthTable& table = it->second;
    std::vector<MessageSpace> expected;
    for (const auto& id : terminal_inputs(inst, t.id)) {
      expected.push_back(space_for_rate(edge_capacity(id), code.block_length));
    }
    std::uint32_t wanted_width = 0;
    std::set<std::string> wants(t.wants.begin(), t.wants.end());
    for (const auto& s : inst.sources) {
      if (wants.count(s.id)) {
        wanted_width += space_for_rate(s.rate, code.block_length).width_bits;
      }
    }
    if (table.input_spaces() != expected ||
        table.output_space() != MessageSpace{wanted_width}) {
      throw std::invalid_argument("decoder for terminal '" + t.id +
                                  "' does not match In(t) and demand widths");
    }
  }
}

void check_index_binding(const IndexInstance& inst, const IndexCode& code) {
  if (code.block_length == 0) {
    throw std::invalid_argument("block length must be positive");
  }
  std::vector<MessageSpace> source_spaces;
  for (const auto& s : inst.sources) {
    source_spaces.push_back(space_for_rate(s.rate, code.block_length));
  }
  MessageSpace broadcast = space_for_rate(inst.broadcast_rate, code.block_length);
  if (code.encoder.input_spaces() != source_spaces || code.encoder.output_space() != broadcast) {
    throw std::invalid_argument("broadcast encoder does not match source and broadcast widths");
  }
  if (code.decoders.size() != inst.terminals.size()) {
    throw std::invalid_argument("code must provide exactly one decoder per terminal");
  }
  for (const auto& t : inst.terminals) {
    auto it = code.decoders.find(t.id);
    if (it == code.decoders.end()) {
      throw std::invalid_argument("code has no decoder for terminal '" + t.id + "'");
    }
    std::vector<MessageSpace> expected{broadcast};
    std::uint32_t wanted_width = 0;
    std::set<std::string> has(t.has.begin(), t.has.end());
    std::set<std::string> wants(t.wants.begin(), t.wants.end());
    for (std::size_t i = 0; i < inst.sources.size(); ++i) {
      if (has.count(inst.sources[i].id)) expected.push_back(source_spaces[i]);
      if (wants.count(inst.sources[i].id)) wanted_width += source_spaces[i].width_bits;
    }
    if (it->second.input_spaces() != expected ||
        it->second.output_space() != MessageSpace{wanted_width}) {
      throw std::invalid_argument("decoder for terminal '" + t.id +
                                  "' does not match broadcast/has/wants widths");
    }
  }
}

NetworkEvaluator::NetworkEvaluator(const NetworkInstance& inst, const NetworkCode& code) {
  std::vector<std::string> order = topological_order(inst);
  build(inst, code, order);
}

NetworkEvaluator::NetworkEvaluator(const NetworkInstance& inst, const NetworkCode& code,
                                   std::span<const std::string> edge_order) {
  ValidationReport report = validate_network(inst);
  if (!report.ok) {
    throw std::invalid_argument("invalid network instance: " +
                                report.violations.front().message);
  }
  build(inst, code, edge_order);
}

void NetworkEvaluator::build(const NetworkInstance& inst, const NetworkCode& code,
                             std::span<const std::string> edge_order) {
  check_network_binding(inst, code);

  for (const auto& s : inst.sources) {
    source_spaces_.push_back(space_for_rate(s.rate, code.block_length));
  }
  for (const auto& e : inst.edges) {
    edge_spaces_.push_back(space_for_rate(e.capacity, code.block_length));
  }

  std::map<std::string, std::size_t> source_pos;
  for (std::size_t i = 0; i < inst.sources.size(); ++i) source_pos[inst.sources[i].id] = i;
  std::map<std::string, std::size_t> edge_pos;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) edge_pos[inst.edges[i].id] = i;

  if (edge_order.size() != inst.edges.size()) {
    throw std::invalid_argument("edge order must list every edge exactly once");
  }
  std::vector<bool> computed(inst.edges.size(), false);
  for (const auto& id : edge_order) {
    auto it = edge_pos.find(id);
    if (it == edge_pos.end() || computed[it->second]) {
      throw std::invalid_argument("edge order must list every edge exactly once");
    }
    EdgeStep step;
    step.edge_pos = it->second;
    step.table = &code.encoders.at(id);
    for (const auto& ref : edge_inputs(inst, id)) {
      if (ref.is_source) {
        step.inputs.emplace_back(true, source_pos.at(ref.id));
      } else {
        std::size_t pos = edge_pos.at(ref.id);
        if (!computed[pos]) {
          throw std::invalid_argument("edge order violates In(e) precedence at edge '" + id +
                                      "'");
        }
        step.inputs.emplace_back(false, pos);
      }
    }
    computed[it->second] = true;
    steps_.push_back(std::move(step));
  }

  for (const auto& t : inst.terminals) {
    TerminalPlan plan;
    plan.table = &code.decoders.at(t.id);
    for (const auto& id : terminal_inputs(inst, t.id)) {
      plan.input_edges.push_back(edge_pos.at(id));
    }
    std::set<std::string> wants(t.wants.begin(), t.wants.end());
    for (std::size_t i = 0; i < inst.sources.size(); ++i) {
      if (wants.count(inst.sources[i].id)) {
        plan.wanted_sources.push_back(i);
        plan.wanted_spaces.push_back(source_spaces_[i]);
      }
    }
    terminals_.push_back(std::move(plan));
  }
}

std::uint64_t NetworkEvaluator::realization_count() const {
  return space_product(source_spaces_);
}

void NetworkEvaluator::edge_values(std::span<const std::uint64_t> source_values,
                                   std::span<std::uint64_t> out) const {
  std::vector<std::uint64_t> inputs;
  for (const EdgeStep& step : steps_) {
    inputs.clear();
    for (const auto& [is_source, pos] : step.inputs) {
      inputs.push_back(is_source ? source_values[pos] : out[pos]);
    }
    out[step.edge_pos] = step.table->eval(inputs);
  }
}

bool NetworkEvaluator::terminal_satisfied(std::size_t terminal_pos,
                                          std::span<const std::uint64_t> source_values,
                                          std::span<const std::uint64_t> edge_vals) const {
  const TerminalPlan& plan = terminals_[terminal_pos];
  std::vector<std::uint64_t> inputs;
  inputs.reserve(plan.input_edges.size());
  for (std::size_t pos : plan.input_edges) inputs.push_back(edge_vals[pos]);
  std::uint64_t decoded = plan.table->eval(inputs);
  return decoded == pack_wanted(source_values, plan.wanted_sources, plan.wanted_spaces);
}

bool NetworkEvaluator::all_satisfied(std::span<const std::uint64_t> source_values,
                                     std::span<std::uint64_t> edge_scratch) const {
  edge_values(source_values, edge_scratch);
  for (std::size_t t = 0; t < terminals_.size(); ++t) {
    if (!terminal_satisfied(t, source_values, edge_scratch)) return false;
  }
  return true;
}

IndexEvaluator::IndexEvaluator(const IndexInstance& inst, const IndexCode& code) {
  // Terminals with empty wants are degenerate but evaluable (they are always
  // satisfied); reductions of edge-free networks produce them.
  ValidationReport report = validate_index(inst);
  for (const auto& violation : report.violations) {
    if (violation.rule != "empty-wants") {
      throw std::invalid_argument("invalid index instance: " + violation.message);
    }
  }
  check_index_binding(inst, code);

  encoder_ = &code.encoder;
  broadcast_width_ = code.encoder.output_space().width_bits;
  for (const auto& s : inst.sources) {
    source_spaces_.push_back(space_for_rate(s.rate, code.block_length));
  }

  for (const auto& t : inst.terminals) {
    TerminalPlan plan;
    plan.table = &code.decoders.at(t.id);
    std::set<std::string> has(t.has.begin(), t.has.end());
    std::set<std::string> wants(t.wants.begin(), t.wants.end());
    for (std::size_t i = 0; i < inst.sources.size(); ++i) {
      if (has.count(inst.sources[i].id)) plan.has_sources.push_back(i);
      if (wants.count(inst.sources[i].id)) {
        plan.wanted_sources.push_back(i);
        plan.wanted_spaces.push_back(source_spaces_[i]);
      }
    }
    terminals_.push_back(std::move(plan));
  }
}

std::uint64_t IndexEvaluator::realization_count() const {
  return space_product(source_spaces_);
}

std::uint64_t IndexEvaluator::encode(std::span<const std::uint64_t> source_values) const {
  return encoder_->eval(source_values);
}

bool IndexEvaluator::terminal_satisfied(std::size_t terminal_pos,
                                        std::span<const std::uint64_t> source_values,
                                        std::uint64_t broadcast) const {
  const TerminalPlan& plan = terminals_[terminal_pos];
  std::vector<std::uint64_t> inputs;
  inputs.reserve(plan.has_sources.size() + 1);
  inputs.push_back(broadcast);
  for (std::size_t pos : plan.has_sources) inputs.push_back(source_values[pos]);
  std::uint64_t decoded = plan.table->eval(inputs);
  return decoded == pack_wanted(source_values, plan.wanted_sources, plan.wanted_spaces);
}

bool IndexEvaluator::all_satisfied(std::span<const std::uint64_t> source_values,
                                   std::uint64_t broadcast) const {
  for (std::size_t t = 0; t < terminals_.size(); ++t) {
    if (!terminal_satisfied(t, source_values, broadcast)) return false;
  }
  return true;
}

std::map<std::string, std::uint64_t> eval_global(const NetworkInstance& inst,
                                                 const NetworkCode& code, const Realization& x) {
  NetworkEvaluator ev(inst, code);
  std::vector<std::uint64_t> src =
      realization_vector(inst.sources, ev.source_spaces(), x);
  std::vector<std::uint64_t> edges(inst.edges.size());
  ev.edge_values(src, edges);
  std::map<std::string, std::uint64_t> out;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) out[inst.edges[i].id] = edges[i];
  return out;
}

std::set<std::string> network_satisfied(const NetworkInstance& inst, const NetworkCode& code,
                                        const Realization& x) {
  NetworkEvaluator ev(inst, code);
  std::vector<std::uint64_t> src =
      realization_vector(inst.sources, ev.source_spaces(), x);
  std::vector<std::uint64_t> edges(inst.edges.size());
  ev.edge_values(src, edges);
  std::set<std::string> satisfied;
  for (std::size_t t = 0; t < inst.terminals.size(); ++t) {
    if (ev.terminal_satisfied(t, src, edges)) satisfied.insert(inst.terminals[t].id);
  }
  return satisfied;
}

std::set<std::string> index_satisfied(const IndexInstance& inst, const IndexCode& code,
                                      const Realization& x) {
  IndexEvaluator ev(inst, code);
  std::vector<std::uint64_t> src = index_realization_vector(inst, ev.source_spaces(), x);
  std::uint64_t broadcast = ev.encode(src);
  std::set<std::string> satisfied;
  for (std::size_t t = 0; t < inst.terminals.size(); ++t) {
    if (ev.terminal_satisfied(t, src, broadcast)) satisfied.insert(inst.terminals[t].id);
  }
  return satisfied;
}

Rational network_success_probability(const NetworkInstance& inst, const NetworkCode& code,
                                     const EnumerationOptions& opts) {
  NetworkEvaluator ev(inst, code);
  std::uint64_t total = ev.realization_count();
  if (total > opts.max_realizations) {
    throw BudgetExceededError("enumeration of " + std::to_string(total) +
                              " realizations exceeds the cap of " +
                              std::to_string(opts.max_realizations));
  }
  auto spaces = ev.source_spaces();
  return enumerate_success(total, opts, [&](std::uint64_t r) {
    std::vector<std::uint64_t> src(spaces.size());
    std::vector<std::uint64_t> edges(ev.edge_count());
    unpack_values(r, spaces, src);
    return ev.all_satisfied(src, edges);
  });
}

Rational index_success_probability(const IndexInstance& inst, const IndexCode& code,
                                   const EnumerationOptions& opts) {
  IndexEvaluator ev(inst, code);
  std::uint64_t total = ev.realization_count();
  if (total > opts.max_realizations) {
    throw BudgetExceededError("enumeration of " + std::to_string(total) +
                              " realizations exceeds the cap of " +
                              std::to_string(opts.max_realizations));
  }
  auto spaces = ev.source_spaces();
  return enumerate_success(total, opts, [&](std::uint64_t r) {
    std::vector<std::uint64_t> src(spaces.size());
    unpack_values(r, spaces, src);
    return ev.all_satisfied(src, ev.encode(src));
  });
}

bool check_feasible(const NetworkInstance& inst, const NetworkCode& code, const Rational& eps,
                    const EnumerationOptions& opts) {
  return network_success_probability(inst, code, opts) >= Rational(1) - eps;
}

bool check_feasible(const IndexInstance& inst, const IndexCode& code, const Rational& eps,
                    const EnumerationOptions& opts) {
  return index_success_probability(inst, code, opts) >= Rational(1) - eps;
}

}  // namespace ncic
