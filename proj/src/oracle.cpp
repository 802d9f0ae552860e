#include "ncic/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ncic {

namespace {

/// base^exponent, capped: returns cap+1 as soon as the power exceeds cap.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t cap) {
  std::uint64_t value = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && value > cap / base) return cap + 1;
    value *= base;
  }
  return value;
}

/// ceil((1 - eps) * total), clamped below at zero: the number of satisfied
/// realizations a code needs.
std::uint64_t needed_successes(const Rational& eps, std::uint64_t total) {
  Rational bound = (Rational(1) - eps) * Rational(static_cast<std::int64_t>(total));
  std::int64_t needed = bound.ceil_int();
  return needed <= 0 ? 0 : static_cast<std::uint64_t>(needed);
}

/// Decodes candidate index `counter` into table entries: row 0 is the most
/// significant digit, so ascending counters are lexicographic over entries.
void counter_to_entries(std::uint64_t counter, std::uint64_t out_card,
                        std::vector<std::uint64_t>& entries) {
  for (std::size_t row = entries.size(); row-- > 0;) {
    entries[row] = counter % out_card;
    counter /= out_card;
  }
}

/// Per-view majority: the output value with the highest count wins, ties to
/// the smallest value. Maximizes the per-terminal success count.
std::map<std::uint64_t, std::uint64_t> majority_by_view(
    const std::map<std::uint64_t, std::map<std::uint64_t, std::uint64_t>>& view_counts) {
  std::map<std::uint64_t, std::uint64_t> majority;
  for (const auto& [view, counts] : view_counts) {
    std::uint64_t best_value = 0;
    std::uint64_t best = 0;
    for (const auto& [value, count] : counts) {
      if (count > best) {
        best = count;
        best_value = value;
      }
    }
    majority[view] = best_value;
  }
  return majority;
}

std::uint64_t max_satisfiable(
    const std::map<std::uint64_t, std::map<std::uint64_t, std::uint64_t>>& view_counts) {
  std::uint64_t total = 0;
  for (const auto& [view, counts] : view_counts) {
    std::uint64_t best = 0;
    for (const auto& [value, count] : counts) best = std::max(best, count);
    total += best;
  }
  return total;
}

struct NetworkSearchContext {
  const NetworkInstance& inst;
  std::uint32_t n;
  std::uint64_t needed;
  std::uint64_t total;
  bool prune;

  std::vector<MessageSpace> source_spaces;
  std::vector<MessageSpace> edge_spaces;

  struct EdgeSlot {
    std::size_t edge_pos = 0;
    std::vector<MessageSpace> in_spaces;
    std::vector<std::pair<bool, std::size_t>> inputs;  // (is_source, position)
    std::uint64_t rows = 0;
    std::uint64_t table_count = 0;
    std::vector<std::uint64_t> entries;
  };
  std::vector<EdgeSlot> slots;                      // topological order
  std::vector<std::size_t> depth_of_edge;           // edge pos -> slot depth
  std::vector<std::vector<std::size_t>> check_at;   // depth -> terminal positions

  struct TerminalSlot {
    std::vector<std::size_t> input_edges;
    std::vector<std::size_t> wanted_sources;
    std::vector<MessageSpace> wanted_spaces;
    std::vector<MessageSpace> input_spaces;
  };
  std::vector<TerminalSlot> terminals;

  std::vector<std::vector<std::uint64_t>> source_values;  // per realization
  std::vector<std::vector<std::uint64_t>> edge_values;    // per depth, per realization
};

std::uint64_t terminal_view(const NetworkSearchContext& ctx, std::size_t terminal,
                            std::uint64_t realization) {
  const auto& slot = ctx.terminals[terminal];
  std::uint64_t view = 0;
  for (std::size_t i = 0; i < slot.input_edges.size(); ++i) {
    std::size_t depth = ctx.depth_of_edge[slot.input_edges[i]];
    view = view * slot.input_spaces[i].cardinality() + ctx.edge_values[depth][realization];
  }
  return view;
}

std::uint64_t terminal_wanted(const NetworkSearchContext& ctx, std::size_t terminal,
                              std::uint64_t realization) {
  const auto& slot = ctx.terminals[terminal];
  std::uint64_t wanted = 0;
  for (std::size_t i = 0; i < slot.wanted_sources.size(); ++i) {
    wanted = wanted * slot.wanted_spaces[i].cardinality() +
             ctx.source_values[realization][slot.wanted_sources[i]];
  }
  return wanted;
}

std::map<std::uint64_t, std::map<std::uint64_t, std::uint64_t>> terminal_view_counts(
    const NetworkSearchContext& ctx, std::size_t terminal) {
  std::map<std::uint64_t, std::map<std::uint64_t, std::uint64_t>> counts;
  for (std::uint64_t r = 0; r < ctx.total; ++r) {
    ++counts[terminal_view(ctx, terminal, r)][terminal_wanted(ctx, terminal, r)];
  }
  return counts;
}

/// Re-evaluates the edge assigned at `depth` for every realization.
void refresh_edge_values(NetworkSearchContext& ctx, std::size_t depth) {
  const auto& slot = ctx.slots[depth];
  std::vector<std::uint64_t> inputs(slot.inputs.size());
  for (std::uint64_t r = 0; r < ctx.total; ++r) {
    for (std::size_t i = 0; i < slot.inputs.size(); ++i) {
      const auto& [is_source, pos] = slot.inputs[i];
      inputs[i] = is_source ? ctx.source_values[r][pos]
                            : ctx.edge_values[ctx.depth_of_edge[pos]][r];
    }
    ctx.edge_values[depth][r] = slot.entries[pack_values(inputs, slot.in_spaces)];
  }
}

bool network_search_leaf(NetworkSearchContext& ctx, NetworkCode& out) {
  // Majority decoders, then the exact joint success count.
  std::vector<std::map<std::uint64_t, std::uint64_t>> majority(ctx.terminals.size());
  for (std::size_t t = 0; t < ctx.terminals.size(); ++t) {
    majority[t] = majority_by_view(terminal_view_counts(ctx, t));
  }
  std::uint64_t successes = 0;
  for (std::uint64_t r = 0; r < ctx.total; ++r) {
    bool all = true;
    for (std::size_t t = 0; t < ctx.terminals.size(); ++t) {
      if (majority[t][terminal_view(ctx, t, r)] != terminal_wanted(ctx, t, r)) {
        all = false;
        break;
      }
    }
    if (all) ++successes;
  }
  if (successes < ctx.needed) return false;

  out.block_length = ctx.n;
  for (const auto& slot : ctx.slots) {
    out.encoders.emplace(ctx.inst.edges[slot.edge_pos].id,
                         TruthTable(slot.in_spaces, ctx.edge_spaces[slot.edge_pos],
                                    slot.entries));
  }
  for (std::size_t t = 0; t < ctx.terminals.size(); ++t) {
    const auto& slot = ctx.terminals[t];
    std::uint32_t wanted_width = 0;
    for (const auto& space : slot.wanted_spaces) wanted_width += space.width_bits;
    std::uint64_t rows = space_product(slot.input_spaces);
    std::vector<std::uint64_t> entries(rows, 0);
    for (const auto& [view, value] : majority[t]) entries[view] = value;
    out.decoders.emplace(ctx.inst.terminals[t].id,
                         TruthTable(slot.input_spaces, MessageSpace{wanted_width},
                                    std::move(entries)));
  }
  return true;
}

bool network_search_dfs(NetworkSearchContext& ctx, std::size_t depth, NetworkCode& out) {
  if (depth == ctx.slots.size()) {
    return network_search_leaf(ctx, out);
  }
  auto& slot = ctx.slots[depth];
  for (std::uint64_t counter = 0; counter < slot.table_count; ++counter) {
    counter_to_entries(counter, ctx.edge_spaces[slot.edge_pos].cardinality(), slot.entries);
    refresh_edge_values(ctx, depth);
    if (ctx.prune) {
      bool dead = false;
      for (std::size_t t : ctx.check_at[depth]) {
        if (max_satisfiable(terminal_view_counts(ctx, t)) < ctx.needed) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
    }
    if (network_search_dfs(ctx, depth + 1, out)) return true;
  }
  return false;
}

}  // namespace

std::optional<NetworkCode> search_network_code(const NetworkInstance& inst, std::uint32_t n,
                                               const Rational& eps, const SearchBudget& budget,
                                               bool prune) {
  std::vector<std::string> order = topological_order(inst);  // validates

  NetworkSearchContext ctx{inst, n, 0, 0, prune, {}, {}, {}, {}, {}, {}, {}, {}};
  for (const auto& s : inst.sources) ctx.source_spaces.push_back(space_for_rate(s.rate, n));
  for (const auto& e : inst.edges) ctx.edge_spaces.push_back(space_for_rate(e.capacity, n));

  ctx.total = space_product(ctx.source_spaces);
  if (ctx.total > budget.max_realizations) {
    throw BudgetExceededError("search would enumerate " + std::to_string(ctx.total) +
                              " realizations, over the cap of " +
                              std::to_string(budget.max_realizations));
  }
  ctx.needed = needed_successes(eps, ctx.total);

  std::map<std::string, std::size_t> source_pos;
  for (std::size_t i = 0; i < inst.sources.size(); ++i) source_pos[inst.sources[i].id] = i;
  std::map<std::string, std::size_t> edge_pos;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) edge_pos[inst.edges[i].id] = i;

  ctx.depth_of_edge.resize(inst.edges.size());
  std::uint64_t table_space = 1;
  for (std::size_t depth = 0; depth < order.size(); ++depth) {
    NetworkSearchContext::EdgeSlot slot;
    slot.edge_pos = edge_pos.at(order[depth]);
    ctx.depth_of_edge[slot.edge_pos] = depth;
    for (const auto& ref : edge_inputs(inst, order[depth])) {
      if (ref.is_source) {
        std::size_t pos = source_pos.at(ref.id);
        slot.inputs.emplace_back(true, pos);
        slot.in_spaces.push_back(ctx.source_spaces[pos]);
      } else {
        std::size_t pos = edge_pos.at(ref.id);
        slot.inputs.emplace_back(false, pos);
        slot.in_spaces.push_back(ctx.edge_spaces[pos]);
      }
    }
    slot.rows = space_product(slot.in_spaces);
    slot.table_count = checked_pow(ctx.edge_spaces[slot.edge_pos].cardinality(), slot.rows,
                                   budget.max_tables);
    if (slot.table_count > budget.max_tables ||
        table_space > budget.max_tables / slot.table_count) {
      throw BudgetExceededError("encoder table space exceeds the cap of " +
                                std::to_string(budget.max_tables));
    }
    table_space *= slot.table_count;
    slot.entries.assign(slot.rows, 0);
    ctx.slots.push_back(std::move(slot));
  }

  for (const auto& t : inst.terminals) {
    NetworkSearchContext::TerminalSlot slot;
    for (const auto& id : terminal_inputs(inst, t.id)) {
      std::size_t pos = edge_pos.at(id);
      slot.input_edges.push_back(pos);
      slot.input_spaces.push_back(ctx.edge_spaces[pos]);
    }
    std::set<std::string> wants(t.wants.begin(), t.wants.end());
    for (std::size_t i = 0; i < inst.sources.size(); ++i) {
      if (wants.count(inst.sources[i].id)) {
        slot.wanted_sources.push_back(i);
        slot.wanted_spaces.push_back(ctx.source_spaces[i]);
      }
    }
    ctx.terminals.push_back(std::move(slot));
  }

  // A terminal becomes checkable once its deepest in-edge is assigned.
  ctx.check_at.resize(ctx.slots.size());
  for (std::size_t t = 0; t < ctx.terminals.size(); ++t) {
    if (ctx.terminals[t].input_edges.empty()) continue;  // checked only at the leaf
    std::size_t deepest = 0;
    for (std::size_t pos : ctx.terminals[t].input_edges) {
      deepest = std::max(deepest, ctx.depth_of_edge[pos]);
    }
    ctx.check_at[deepest].push_back(t);
  }

  // The working tables hold one value per (realization, variable) cell.
  std::uint64_t vars = inst.sources.size() + ctx.slots.size();
  if (vars > 0 && ctx.total > (std::uint64_t{1} << 24) / vars) {
    throw BudgetExceededError(
        "search working set too large; lower --max-realizations");
  }
  ctx.source_values.assign(ctx.total, std::vector<std::uint64_t>(inst.sources.size()));
  for (std::uint64_t r = 0; r < ctx.total; ++r) {
    unpack_values(r, ctx.source_spaces, ctx.source_values[r]);
  }
  ctx.edge_values.assign(ctx.slots.size(), std::vector<std::uint64_t>(ctx.total, 0));

  NetworkCode found;
  if (network_search_dfs(ctx, 0, found)) {
    return found;
  }
  return std::nullopt;
}

std::optional<IndexCode> search_index_code(const IndexInstance& inst, std::uint32_t n,
                                           const Rational& eps, const SearchBudget& budget) {
  ValidationReport report = validate_index(inst);
  if (!report.ok) {
    throw std::invalid_argument("invalid index instance: " + report.violations.front().message);
  }

  std::vector<MessageSpace> source_spaces;
  for (const auto& s : inst.sources) source_spaces.push_back(space_for_rate(s.rate, n));
  MessageSpace broadcast = space_for_rate(inst.broadcast_rate, n);

  std::uint64_t total = space_product(source_spaces);
  if (total > budget.max_realizations) {
    throw BudgetExceededError("search would enumerate " + std::to_string(total) +
                              " realizations, over the cap of " +
                              std::to_string(budget.max_realizations));
  }
  std::uint64_t needed = needed_successes(eps, total);

  std::uint64_t table_space = checked_pow(broadcast.cardinality(), total, budget.max_tables);
  if (table_space > budget.max_tables) {
    throw BudgetExceededError("broadcast encoder space exceeds the cap of " +
                              std::to_string(budget.max_tables));
  }

  struct TerminalSlot {
    std::vector<std::size_t> has_sources;
    std::vector<MessageSpace> has_spaces;
    std::vector<std::size_t> wanted_sources;
    std::vector<MessageSpace> wanted_spaces;
  };
  std::vector<TerminalSlot> terminals;
  for (const auto& t : inst.terminals) {
    TerminalSlot slot;
    std::set<std::string> has(t.has.begin(), t.has.end());
    std::set<std::string> wants(t.wants.begin(), t.wants.end());
    for (std::size_t i = 0; i < inst.sources.size(); ++i) {
      if (has.count(inst.sources[i].id)) {
        slot.has_sources.push_back(i);
        slot.has_spaces.push_back(source_spaces[i]);
      }
      if (wants.count(inst.sources[i].id)) {
        slot.wanted_sources.push_back(i);
        slot.wanted_spaces.push_back(source_spaces[i]);
      }
    }
    terminals.push_back(std::move(slot));
  }

  std::uint64_t vars = inst.sources.size() + 1;
  if (total > (std::uint64_t{1} << 24) / vars) {
    throw BudgetExceededError(
        "search working set too large; lower --max-realizations");
  }
  std::vector<std::vector<std::uint64_t>> source_values(
      total, std::vector<std::uint64_t>(inst.sources.size()));
  for (std::uint64_t r = 0; r < total; ++r) {
    unpack_values(r, source_spaces, source_values[r]);
  }
  auto view_of = [&](const TerminalSlot& slot, std::uint64_t broadcast_value, std::uint64_t r) {
    std::uint64_t view = broadcast_value;
    for (std::size_t i = 0; i < slot.has_sources.size(); ++i) {
      view = view * slot.has_spaces[i].cardinality() + source_values[r][slot.has_sources[i]];
    }
    return view;
  };
  auto wanted_of = [&](const TerminalSlot& slot, std::uint64_t r) {
    std::uint64_t wanted = 0;
    for (std::size_t i = 0; i < slot.wanted_sources.size(); ++i) {
      wanted =
          wanted * slot.wanted_spaces[i].cardinality() + source_values[r][slot.wanted_sources[i]];
    }
    return wanted;
  };

  std::vector<std::uint64_t> entries(total, 0);
  for (std::uint64_t counter = 0; counter < table_space; ++counter) {
    counter_to_entries(counter, broadcast.cardinality(), entries);

    std::vector<std::map<std::uint64_t, std::uint64_t>> majority(terminals.size());
    for (std::size_t t = 0; t < terminals.size(); ++t) {
      std::map<std::uint64_t, std::map<std::uint64_t, std::uint64_t>> counts;
      for (std::uint64_t r = 0; r < total; ++r) {
        ++counts[view_of(terminals[t], entries[r], r)][wanted_of(terminals[t], r)];
      }
      majority[t] = majority_by_view(counts);
    }

    std::uint64_t successes = 0;
    for (std::uint64_t r = 0; r < total; ++r) {
      bool all = true;
      for (std::size_t t = 0; t < terminals.size(); ++t) {
        if (majority[t][view_of(terminals[t], entries[r], r)] != wanted_of(terminals[t], r)) {
          all = false;
          break;
        }
      }
      if (all) ++successes;
    }
    if (successes < needed) continue;

    IndexCode code{n, TruthTable(source_spaces, broadcast, entries), {}};
    for (std::size_t t = 0; t < terminals.size(); ++t) {
      const auto& slot = terminals[t];
      std::vector<MessageSpace> inputs{broadcast};
      inputs.insert(inputs.end(), slot.has_spaces.begin(), slot.has_spaces.end());
      std::uint32_t wanted_width = 0;
      for (const auto& space : slot.wanted_spaces) wanted_width += space.width_bits;
      std::uint64_t rows = space_product(inputs);
      std::vector<std::uint64_t> dec(rows, 0);
      for (const auto& [view, value] : majority[t]) dec[view] = value;
      code.decoders.emplace(inst.terminals[t].id,
                            TruthTable(inputs, MessageSpace{wanted_width}, std::move(dec)));
    }
    return code;
  }
  return std::nullopt;
}

BroadcastSearchResult min_broadcast_bits(const IndexInstance& inst, std::uint32_t n,
                                         const SearchBudget& budget) {
  if (n == 0) {
    throw std::invalid_argument("block length must be positive");
  }
  std::uint32_t width_limit = 0;
  for (const auto& s : inst.sources) {
    width_limit += space_for_rate(s.rate, n).width_bits;
  }
  // Broadcasting every source verbatim is always a zero-error code, so the
  // search ends at width_limit at the latest.
  for (std::uint32_t width = 0; width <= width_limit; ++width) {
    IndexInstance candidate = inst;
    candidate.broadcast_rate = Rational(width, n);
    if (auto code = search_index_code(candidate, n, Rational(0), budget)) {
      return {width, std::move(*code)};
    }
  }
  throw std::logic_error("no zero-error code found at full broadcast width");
}

}  // namespace ncic
