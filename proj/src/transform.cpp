#include "ncic/transform.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace ncic {

namespace {

/// Bit layout of the broadcast word: one chunk per edge in declaration
/// order, most significant chunk first.
struct ChunkLayout {
  std::vector<std::uint32_t> shift;
  std::vector<std::uint64_t> mask;
  std::uint32_t total_width = 0;

  ChunkLayout(const NetworkInstance& inst, std::uint32_t block_length) {
    std::vector<std::uint32_t> widths;
    for (const auto& e : inst.edges) {
      widths.push_back(space_for_rate(e.capacity, block_length).width_bits);
      total_width += widths.back();
    }
    if (total_width > kMaxWidthBits) {
      throw std::invalid_argument("broadcast word of " + std::to_string(total_width) +
                                  " bits is unsupported");
    }
    std::uint32_t used = 0;
    for (std::uint32_t w : widths) {
      used += w;
      shift.push_back(total_width - used);
      mask.push_back((std::uint64_t{1} << w) - 1);
    }
  }

  std::uint64_t chunk(std::uint64_t word, std::size_t edge_pos) const {
    return (word >> shift[edge_pos]) & mask[edge_pos];
  }
};

void require_hat_matches(const NetworkInstance& inst, const IndexInstance& hat,
                         const ReductionMap& map) {
  Rational total_capacity = 0;
  for (const auto& e : inst.edges) total_capacity += e.capacity;
  if (hat.broadcast_rate != total_capacity) {
    throw std::invalid_argument("broadcast rate " + hat.broadcast_rate.str() +
                                " does not equal the total edge capacity " +
                                total_capacity.str());
  }
  Reduction fresh = reduce_instance(inst);
  if (!(fresh.map == map)) {
    throw std::invalid_argument("reduction map does not correspond to the network instance");
  }
  auto same_terminal = [](const IndexTerminalDecl& a, const IndexTerminalDecl& b) {
    return a.id == b.id && a.wants == b.wants && a.has == b.has;
  };
  bool same = hat.sources.size() == fresh.instance.sources.size() &&
              hat.terminals.size() == fresh.instance.terminals.size();
  for (std::size_t i = 0; same && i < hat.sources.size(); ++i) {
    same = hat.sources[i].id == fresh.instance.sources[i].id &&
           hat.sources[i].rate == fresh.instance.sources[i].rate;
  }
  for (std::size_t i = 0; same && i < hat.terminals.size(); ++i) {
    same = same_terminal(hat.terminals[i], fresh.instance.terminals[i]);
  }
  if (!same) {
    throw std::invalid_argument("index instance is not the reduction of the network instance");
  }
}

/// Positions of the source-origin and edge-origin variables in the index
/// instance's declaration order.
struct OriginSplit {
  std::vector<std::size_t> source_positions;
  std::vector<std::size_t> edge_positions;
  std::vector<MessageSpace> source_spaces;
  std::vector<MessageSpace> edge_spaces;

  OriginSplit(const IndexInstance& hat, const ReductionMap& map, std::uint32_t block_length) {
    for (std::size_t i = 0; i < hat.sources.size(); ++i) {
      auto it = map.source_of.find(hat.sources[i].id);
      if (it == map.source_of.end()) {
        throw std::invalid_argument("reduction map has no origin for source '" +
                                    hat.sources[i].id + "'");
      }
      MessageSpace space = space_for_rate(hat.sources[i].rate, block_length);
      if (it->second.kind == OriginKind::Source) {
        source_positions.push_back(i);
        source_spaces.push_back(space);
      } else if (it->second.kind == OriginKind::Edge) {
        edge_positions.push_back(i);
        edge_spaces.push_back(space);
      } else {
        throw std::invalid_argument("source '" + hat.sources[i].id +
                                    "' has a non-source, non-edge origin");
      }
    }
  }

  void scatter(std::uint64_t xs, std::uint64_t xe, std::vector<std::uint64_t>& full) const {
    std::vector<std::uint64_t> sv(source_positions.size());
    std::vector<std::uint64_t> ev(edge_positions.size());
    unpack_values(xs, source_spaces, sv);
    unpack_values(xe, edge_spaces, ev);
    for (std::size_t i = 0; i < source_positions.size(); ++i) full[source_positions[i]] = sv[i];
    for (std::size_t i = 0; i < edge_positions.size(); ++i) full[edge_positions[i]] = ev[i];
  }
};

std::uint32_t cover_overhead_bits(std::size_t cover_size) {
  if (cover_size <= 1) return 0;
  return std::bit_width(static_cast<std::uint64_t>(cover_size - 1));
}

/// Sign of x^q - 2^e2 for x >= 0, q >= 1. Exact: the narrow case where
/// floor-log bounds do not settle it is resolved with a small bignum power.
int compare_power_with_pow2(std::uint64_t x, std::uint64_t q, std::int64_t e2) {
  if (x == 0) return -1;
  if (e2 < 0) return 1;  // x^q >= 1 > 2^e2
  if (x == 1) return e2 == 0 ? 0 : -1;
  std::uint32_t k = std::bit_width(x) - 1;  // 2^k <= x < 2^(k+1)
  bool is_pow2 = (x & (x - 1)) == 0;
  auto kq = static_cast<__int128>(k) * static_cast<__int128>(q);
  if (is_pow2) {
    if (kq < e2) return -1;
    if (kq > e2) return 1;
    return 0;
  }
  if (kq >= e2) return 1;  // x^q > 2^(kq) >= 2^e2
  auto upper = static_cast<__int128>(k + 1) * static_cast<__int128>(q);
  if (upper <= e2) return -1;  // x^q < 2^((k+1)q) <= 2^e2
  // kq < e2 < (k+1)q: compute the exact bit length of x^q.
  std::vector<std::uint64_t> limbs{1};
  for (std::uint64_t i = 0; i < q; ++i) {
    unsigned __int128 carry = 0;
    for (auto& limb : limbs) {
      unsigned __int128 prod = static_cast<unsigned __int128>(limb) * x + carry;
      limb = static_cast<std::uint64_t>(prod);
      carry = prod >> 64;
    }
    while (carry != 0) {
      limbs.push_back(static_cast<std::uint64_t>(carry));
      carry >>= 64;
    }
  }
  std::uint64_t top = limbs.back();
  auto bits = static_cast<std::int64_t>((limbs.size() - 1) * 64 + std::bit_width(top));
  // x is not a power of two, so x^q is not either: bit length settles it.
  return bits - 1 >= e2 ? 1 : -1;
}

}  // namespace

IndexCode network_to_index_code(const NetworkInstance& inst, const ReductionMap& map,
                                const NetworkCode& code) {
  Reduction red = reduce_instance(inst);
  if (!(red.map == map)) {
    throw std::invalid_argument("reduction map does not correspond to the network instance");
  }
  const IndexInstance& hat = red.instance;

  NetworkEvaluator ev(inst, code);
  std::uint32_t n = code.block_length;
  ChunkLayout layout(inst, n);

  std::vector<MessageSpace> hat_source_spaces;
  for (const auto& s : hat.sources) hat_source_spaces.push_back(space_for_rate(s.rate, n));
  MessageSpace broadcast{layout.total_width};

  std::size_t ns = inst.sources.size();
  std::size_t ne = inst.edges.size();
  std::vector<MessageSpace> src_spaces(hat_source_spaces.begin(),
                                       hat_source_spaces.begin() + ns);
  std::vector<MessageSpace> edge_spaces(hat_source_spaces.begin() + ns,
                                        hat_source_spaces.end());
  std::uint64_t src_card = space_product(src_spaces);
  std::uint64_t edge_card = space_product(edge_spaces);
  if (src_card > kMaxTableRows / edge_card) {
    throw BudgetExceededError("broadcast encoder table would exceed the row cap");
  }

  // Global encodings depend only on the source part; compute them once per xs.
  std::vector<std::vector<std::uint64_t>> fbar(src_card, std::vector<std::uint64_t>(ne));
  {
    std::vector<std::uint64_t> sv(ns);
    for (std::uint64_t xs = 0; xs < src_card; ++xs) {
      unpack_values(xs, src_spaces, sv);
      ev.edge_values(sv, fbar[xs]);
    }
  }

  std::vector<std::uint64_t> encoder_entries;
  encoder_entries.reserve(src_card * edge_card);
  {
    std::vector<std::uint64_t> xv(ne);
    for (std::uint64_t xs = 0; xs < src_card; ++xs) {
      for (std::uint64_t xe = 0; xe < edge_card; ++xe) {
        unpack_values(xe, edge_spaces, xv);
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < ne; ++i) {
          word = (word << edge_spaces[i].width_bits) | (xv[i] ^ fbar[xs][i]);
        }
        encoder_entries.push_back(word);
      }
    }
  }
  TruthTable encoder(hat_source_spaces, broadcast, std::move(encoder_entries));

  std::map<std::string, std::size_t> edge_pos;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) edge_pos[inst.edges[i].id] = i;
  std::map<std::string, std::size_t> source_pos;
  for (std::size_t i = 0; i < inst.sources.size(); ++i) source_pos[inst.sources[i].id] = i;

  std::map<std::string, TruthTable> decoders;

  // Edge-origin terminals: recover the global encodings of In(e) from the
  // broadcast chunks and the has-set, apply the local encoder, strip the
  // chunk for e.
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const std::string& edge_id = inst.edges[e].id;
    std::vector<InputRef> refs = edge_inputs(inst, edge_id);
    std::vector<MessageSpace> inputs{broadcast};
    for (const auto& ref : refs) {
      inputs.push_back(ref.is_source
                           ? src_spaces[source_pos.at(ref.id)]
                           : edge_spaces[edge_pos.at(ref.id)]);
    }
    const TruthTable& local = code.encoders.at(edge_id);
    decoders.emplace(
        "edge:" + edge_id,
        TruthTable::tabulate(inputs, edge_spaces[e], [&](std::span<const std::uint64_t> row) {
          std::uint64_t word = row[0];
          std::vector<std::uint64_t> local_in(refs.size());
          for (std::size_t i = 0; i < refs.size(); ++i) {
            local_in[i] = refs[i].is_source
                              ? row[i + 1]
                              : (layout.chunk(word, edge_pos.at(refs[i].id)) ^ row[i + 1]);
          }
          return layout.chunk(word, e) ^ local.eval(local_in);
        }));
  }

  // Terminal-origin terminals: recover the In(t) global encodings, then run
  // the network decoder.
  for (const auto& t : inst.terminals) {
    std::vector<std::string> ins = terminal_inputs(inst, t.id);
    std::vector<MessageSpace> inputs{broadcast};
    for (const auto& id : ins) inputs.push_back(edge_spaces[edge_pos.at(id)]);
    const TruthTable& dec = code.decoders.at(t.id);
    decoders.emplace(
        "t:" + t.id,
        TruthTable::tabulate(inputs, dec.output_space(),
                             [&](std::span<const std::uint64_t> row) {
                               std::uint64_t word = row[0];
                               std::vector<std::uint64_t> dec_in(ins.size());
                               for (std::size_t i = 0; i < ins.size(); ++i) {
                                 dec_in[i] =
                                     layout.chunk(word, edge_pos.at(ins[i])) ^ row[i + 1];
                               }
                               return dec.eval(dec_in);
                             }));
  }

  // The all-terminal: strip every chunk at once.
  {
    std::vector<MessageSpace> inputs{broadcast};
    for (const auto& space : src_spaces) inputs.push_back(space);
    decoders.emplace(
        "all",
        TruthTable::tabulate(inputs, MessageSpace{layout.total_width},
                             [&](std::span<const std::uint64_t> row) {
                               std::uint64_t word = row[0];
                               std::uint64_t xs =
                                   pack_values(row.subspan(1), src_spaces);
                               std::uint64_t out = 0;
                               for (std::size_t i = 0; i < ne; ++i) {
                                 out = (out << edge_spaces[i].width_bits) |
                                       (layout.chunk(word, i) ^ fbar[xs][i]);
                               }
                               return out;
                             }));
  }

  IndexCode out{n, std::move(encoder), std::move(decoders)};
  check_index_binding(hat, out);
  return out;
}

GoodSetTable good_sets(const IndexInstance& inst, const IndexCode& code, const ReductionMap& map,
                       const EnumerationOptions& opts) {
  IndexEvaluator ev(inst, code);
  OriginSplit split(inst, map, code.block_length);

  GoodSetTable table;
  table.source_positions = split.source_positions;
  table.edge_positions = split.edge_positions;
  table.source_spaces = split.source_spaces;
  table.edge_spaces = split.edge_spaces;
  table.broadcast_width = ev.broadcast_width();
  table.source_cardinality = space_product(split.source_spaces);
  table.edge_cardinality = space_product(split.edge_spaces);

  if (table.source_cardinality > opts.max_realizations / table.edge_cardinality) {
    throw BudgetExceededError("good-set enumeration exceeds the realization cap");
  }

  table.good.resize(table.source_cardinality);
  std::vector<std::uint64_t> full(inst.sources.size());
  for (std::uint64_t xs = 0; xs < table.source_cardinality; ++xs) {
    for (std::uint64_t xe = 0; xe < table.edge_cardinality; ++xe) {
      split.scatter(xs, xe, full);
      std::uint64_t sigma = ev.encode(full);
      if (ev.all_satisfied(full, sigma)) {
        table.good[xs].push_back({xe, sigma});
        ++table.good_pair_count;
      }
    }
  }
  return table;
}

std::optional<InjectivityViolation> check_good_set_injectivity(const IndexInstance& inst,
                                                               const IndexCode& code,
                                                               const ReductionMap& map,
                                                               const GoodSetTable& table) {
  bool has_all = false;
  for (const auto& [id, origin] : map.terminal_of) {
    if (origin.kind == OriginKind::All) has_all = true;
  }
  if (!has_all) {
    throw std::invalid_argument("reduction map lacks the all-terminal");
  }

  IndexEvaluator ev(inst, code);
  OriginSplit split(inst, map, code.block_length);
  std::vector<std::uint64_t> full(inst.sources.size());
  for (std::uint64_t xs = 0; xs < table.source_cardinality; ++xs) {
    std::map<std::uint64_t, std::uint64_t> seen;  // sigma -> first good xe
    for (const auto& pair : table.good[xs]) {
      split.scatter(xs, pair.edge_value, full);
      std::uint64_t sigma = ev.encode(full);
      auto [it, inserted] = seen.emplace(sigma, pair.edge_value);
      if (!inserted) {
        return InjectivityViolation{xs, it->second, pair.edge_value, sigma};
      }
    }
  }
  return std::nullopt;
}

SigmaSelection select_sigma(const GoodSetTable& table, const IndexInstance& inst) {
  (void)inst;
  if (table.broadcast_width > 26) {
    throw BudgetExceededError("broadcast space too large to scan for sigma");
  }
  std::uint64_t sigma_count = std::uint64_t{1} << table.broadcast_width;
  std::vector<std::uint64_t> covered_count(sigma_count, 0);
  std::vector<std::uint64_t> sigmas;
  for (const auto& pairs : table.good) {
    sigmas.clear();
    for (const auto& pair : pairs) sigmas.push_back(pair.sigma);
    std::sort(sigmas.begin(), sigmas.end());
    sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());
    for (std::uint64_t sigma : sigmas) ++covered_count[sigma];
  }

  SigmaSelection selection;
  std::uint64_t best = 0;
  for (std::uint64_t sigma = 0; sigma < sigma_count; ++sigma) {
    if (covered_count[sigma] > best) {
      best = covered_count[sigma];
      selection.sigma = sigma;
    }
  }
  for (std::uint64_t xs = 0; xs < table.source_cardinality; ++xs) {
    for (const auto& pair : table.good[xs]) {
      if (pair.sigma == selection.sigma) {
        selection.covered.push_back(xs);
        break;
      }
    }
  }
  selection.coverage_fraction =
      Rational(static_cast<std::int64_t>(selection.covered.size()),
               static_cast<std::int64_t>(table.source_cardinality));
  return selection;
}

NetworkCode index_to_network_code(const NetworkInstance& inst, const IndexInstance& hat,
                                  const ReductionMap& map, const IndexCode& code,
                                  std::uint64_t sigma) {
  require_hat_matches(inst, hat, map);
  check_index_binding(hat, code);

  std::uint32_t n = code.block_length;
  MessageSpace broadcast = space_for_rate(hat.broadcast_rate, n);
  if (sigma >= broadcast.cardinality()) {
    throw std::invalid_argument("sigma " + std::to_string(sigma) +
                                " outside the broadcast space");
  }

  // A pinned decoder is a contiguous slice of the table: the broadcast word
  // is the most significant input.
  auto pin = [&](const TruthTable& dec, const std::vector<MessageSpace>& inputs,
                 MessageSpace output) {
    std::uint64_t rest = space_product(inputs);
    std::vector<MessageSpace> expected{broadcast};
    expected.insert(expected.end(), inputs.begin(), inputs.end());
    if (dec.input_spaces() != expected || dec.output_space() != output) {
      throw std::invalid_argument("decoder table widths do not match the network spaces");
    }
    auto begin = dec.entries().begin() + static_cast<std::ptrdiff_t>(sigma * rest);
    return TruthTable(inputs, output,
                      std::vector<std::uint64_t>(begin, begin + static_cast<std::ptrdiff_t>(rest)));
  };

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

  NetworkCode out;
  out.block_length = n;

  for (const auto& e : inst.edges) {
    std::vector<MessageSpace> inputs;
    for (const auto& ref : edge_inputs(inst, e.id)) {
      inputs.push_back(space_for_rate(
          ref.is_source ? source_rate(ref.id) : edge_capacity(ref.id), n));
    }
    out.encoders.emplace(e.id, pin(code.decoders.at("edge:" + e.id), inputs,
                                   space_for_rate(e.capacity, n)));
  }
  for (const auto& t : inst.terminals) {
    std::vector<MessageSpace> inputs;
    for (const auto& id : terminal_inputs(inst, t.id)) {
      inputs.push_back(space_for_rate(edge_capacity(id), n));
    }
    std::uint32_t wanted_width = 0;
    std::set<std::string> wants(t.wants.begin(), t.wants.end());
    for (const auto& s : inst.sources) {
      if (wants.count(s.id)) wanted_width += space_for_rate(s.rate, n).width_bits;
    }
    out.decoders.emplace(t.id,
                         pin(code.decoders.at("t:" + t.id), inputs, MessageSpace{wanted_width}));
  }

  check_network_binding(inst, out);
  return out;
}

TransferReport transfer_report(const NetworkInstance& inst, const IndexInstance& hat,
                               const ReductionMap& map, const IndexCode& code,
                               const EnumerationOptions& opts) {
  require_hat_matches(inst, hat, map);
  GoodSetTable table = good_sets(hat, code, map, opts);
  if (auto violation = check_good_set_injectivity(hat, code, map, table)) {
    throw std::logic_error("broadcast encoder not injective on a good set (xs=" +
                           std::to_string(violation->source_value) + ")");
  }
  SigmaSelection selection = select_sigma(table, hat);
  NetworkCode network = index_to_network_code(inst, hat, map, code, selection.sigma);

  TransferReport report;
  report.sigma = selection.sigma;
  report.coverage = selection.coverage_fraction;
  report.network_success = network_success_probability(inst, network, opts);
  if (report.network_success < report.coverage) {
    throw std::logic_error("network success " + report.network_success.str() +
                           " fell below the coverage bound " + report.coverage.str());
  }
  CoverSet cover = find_cover(table, hat, Rational(0));
  report.cover_size = cover.sigmas.size();
  report.overhead_bits = cover_overhead_bits(report.cover_size);
  return report;
}

CoverSet find_cover(const GoodSetTable& table, const IndexInstance& inst,
                    const Rational& delta) {
  (void)inst;
  if (delta.is_negative()) {
    throw std::invalid_argument("delta must be nonnegative");
  }

  CoverSet cover;
  cover.delta = delta;

  // Eligibility: |A_xs| >= 2^((1-delta)*W - 1), compared exactly as
  // |A_xs|^q >= 2^((W-1)q - W*p) for delta = p/q.
  std::int64_t w = table.broadcast_width;
  std::int64_t e2 = (w - 1) * delta.den() - w * delta.num();
  std::vector<std::uint64_t> remaining;
  for (std::uint64_t xs = 0; xs < table.source_cardinality; ++xs) {
    auto size = static_cast<std::uint64_t>(table.good[xs].size());
    if (compare_power_with_pow2(size, static_cast<std::uint64_t>(delta.den()), e2) >= 0) {
      remaining.push_back(xs);
    }
  }
  cover.eligible_count = remaining.size();

  while (!remaining.empty()) {
    std::map<std::uint64_t, std::uint64_t> count;  // sigma -> coverable xs
    for (std::uint64_t xs : remaining) {
      std::set<std::uint64_t> seen;
      for (const auto& pair : table.good[xs]) {
        if (seen.insert(pair.sigma).second) ++count[pair.sigma];
      }
    }
    std::uint64_t best_sigma = 0;
    std::uint64_t best = 0;
    for (const auto& [sigma, c] : count) {  // ascending sigma: smallest wins ties
      if (c > best) {
        best = c;
        best_sigma = sigma;
      }
    }
    cover.sigmas.push_back(best_sigma);

    std::vector<std::uint64_t> next;
    for (std::uint64_t xs : remaining) {
      const GoodSetTable::GoodPair* witness = nullptr;
      for (const auto& pair : table.good[xs]) {
        if (pair.sigma == best_sigma) {
          witness = &pair;
          break;  // pairs ascend by edge value, so this is the smallest witness
        }
      }
      if (witness != nullptr) {
        cover.assignment[xs] = {best_sigma, witness->edge_value};
      } else {
        next.push_back(xs);
      }
    }
    remaining = std::move(next);
  }
  return cover;
}

TwoPhaseReport collocated_two_phase_check(const NetworkInstance& inst, const IndexInstance& hat,
                                          const ReductionMap& map, const IndexCode& code,
                                          const CoverSet& cover,
                                          const EnumerationOptions& opts) {
  require_hat_matches(inst, hat, map);
  if (inst.sources.empty()) {
    throw std::invalid_argument("two-phase check needs at least one source");
  }
  const std::string& source_node = inst.sources.front().node;
  for (const auto& s : inst.sources) {
    if (s.node != source_node) {
      throw std::invalid_argument("sources are not collocated: '" + s.id + "' sits at '" +
                                  s.node + "', not '" + source_node + "'");
    }
  }
  {
    std::set<std::string> reached{source_node};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : inst.edges) {
        if (reached.count(e.from) && reached.insert(e.to).second) grew = true;
      }
    }
    for (const auto& node : inst.nodes) {
      if (!reached.count(node)) {
        throw std::invalid_argument("node '" + node + "' is unreachable from the source node");
      }
    }
  }

  OriginSplit split(hat, map, code.block_length);
  std::uint64_t source_card = space_product(split.source_spaces);

  // Case A: every covered realization must decode under its assigned sigma.
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_sigma;
  for (const auto& [xs, witness] : cover.assignment) {
    by_sigma[witness.sigma].push_back(xs);
  }
  bool all_correct = true;
  for (const auto& [sigma, realizations] : by_sigma) {
    NetworkCode network = index_to_network_code(inst, hat, map, code, sigma);
    NetworkEvaluator ev(inst, network);
    std::vector<std::uint64_t> src(split.source_spaces.size());
    std::vector<std::uint64_t> edges(inst.edges.size());
    for (std::uint64_t xs : realizations) {
      unpack_values(xs, split.source_spaces, src);
      if (!ev.all_satisfied(src, edges)) all_correct = false;
    }
  }

  TwoPhaseReport report;
  report.cover_size = cover.sigmas.size();
  report.overhead_bits = cover_overhead_bits(report.cover_size);
  report.uncovered_fraction =
      Rational(static_cast<std::int64_t>(source_card - cover.assignment.size()),
               static_cast<std::int64_t>(source_card));
  report.case_a_all_correct = all_correct;

  // Case B happens with probability at most twice the code's error; exact
  // for the delta = 0 threshold.
  if (cover.delta.is_zero()) {
    Rational eps = Rational(1) - index_success_probability(hat, code, opts);
    if (report.uncovered_fraction > Rational(2) * eps) {
      throw std::logic_error("uncovered fraction " + report.uncovered_fraction.str() +
                             " exceeds twice the index error " + eps.str());
    }
  }
  return report;
}

}  // namespace ncic
