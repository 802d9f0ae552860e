#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ncic/instance.hpp"
#include "ncic/truth_table.hpp"

namespace ncic {

/// Default cap on exhaustively enumerated realizations.
inline constexpr std::uint64_t kDefaultMaxRealizations = std::uint64_t{1} << 24;

struct EnumerationOptions {
  std::uint64_t max_realizations = kDefaultMaxRealizations;
  unsigned jobs = 1;  // realization-space partitions; result is identical for any value
};

/// A network code: one local encoder table per edge (inputs ordered by
/// edge_inputs) and one decoder table per terminal (inputs ordered by
/// terminal_inputs, output = wanted source values concatenated in source
/// declaration order, most significant first).
struct NetworkCode {
  std::uint32_t block_length = 1;
  std::map<std::string, TruthTable> encoders;  // edge id -> table
  std::map<std::string, TruthTable> decoders;  // terminal id -> table

  friend bool operator==(const NetworkCode&, const NetworkCode&) = default;
};

/// An index code: the broadcast encoder table (inputs = all sources in
/// declaration order) and one decoder table per terminal (inputs = broadcast
/// value followed by the has-set values in source declaration order).
struct IndexCode {
  std::uint32_t block_length = 1;
  TruthTable encoder;
  std::map<std::string, TruthTable> decoders;  // terminal id -> table

  friend bool operator==(const IndexCode&, const IndexCode&) = default;
};

/// An assignment of a concrete message to every source variable; the unit
/// over which exact success probabilities are enumerated.
struct Realization {
  std::map<std::string, std::uint64_t> values;  // source id -> message
};

/// Throws std::invalid_argument when the code's tables do not match the
/// instance's edges, terminals, and message space widths.
void check_network_binding(const NetworkInstance& inst, const NetworkCode& code);
void check_index_binding(const IndexInstance& inst, const IndexCode& code);

/// Precomputed evaluation plan for a network code bound to an instance.
/// Construction validates the instance and the binding; evaluation is then
/// allocation-light and safe to share read-only across threads.
class NetworkEvaluator {
public:
  NetworkEvaluator(const NetworkInstance& inst, const NetworkCode& code);
  /// Same, but evaluating edges in the given order (must be a valid
  /// topological order; rejected otherwise). Results do not depend on the
  /// order choice.
  NetworkEvaluator(const NetworkInstance& inst, const NetworkCode& code,
                   std::span<const std::string> edge_order);

  std::size_t source_count() const noexcept { return source_spaces_.size(); }
  std::size_t edge_count() const noexcept { return edge_spaces_.size(); }
  std::size_t terminal_count() const noexcept { return terminals_.size(); }
  std::span<const MessageSpace> source_spaces() const noexcept { return source_spaces_; }
  std::span<const MessageSpace> edge_spaces() const noexcept { return edge_spaces_; }

  /// Total number of source realizations (product of source cardinalities).
  std::uint64_t realization_count() const;

  /// Computes every edge value (indexed by edge declaration order).
  void edge_values(std::span<const std::uint64_t> source_values,
                   std::span<std::uint64_t> out) const;

  bool terminal_satisfied(std::size_t terminal_pos,
                          std::span<const std::uint64_t> source_values,
                          std::span<const std::uint64_t> edge_vals) const;
  bool all_satisfied(std::span<const std::uint64_t> source_values,
                     std::span<std::uint64_t> edge_scratch) const;

private:
  void build(const NetworkInstance& inst, const NetworkCode& code,
             std::span<const std::string> edge_order);

  struct EdgeStep {
    std::size_t edge_pos = 0;
    const TruthTable* table = nullptr;
    std::vector<std::pair<bool, std::size_t>> inputs;  // (is_source, position)
  };
  struct TerminalPlan {
    const TruthTable* table = nullptr;
    std::vector<std::size_t> input_edges;
    std::vector<std::size_t> wanted_sources;
    std::vector<MessageSpace> wanted_spaces;
  };

  std::vector<MessageSpace> source_spaces_;
  std::vector<MessageSpace> edge_spaces_;
  std::vector<EdgeStep> steps_;
  std::vector<TerminalPlan> terminals_;
};

/// Evaluation plan for an index code bound to an index instance.
class IndexEvaluator {
public:
  IndexEvaluator(const IndexInstance& inst, const IndexCode& code);

  std::size_t source_count() const noexcept { return source_spaces_.size(); }
  std::size_t terminal_count() const noexcept { return terminals_.size(); }
  std::span<const MessageSpace> source_spaces() const noexcept { return source_spaces_; }
  std::uint32_t broadcast_width() const noexcept { return broadcast_width_; }

  std::uint64_t realization_count() const;

  /// The broadcast word for a full source realization.
  std::uint64_t encode(std::span<const std::uint64_t> source_values) const;

  bool terminal_satisfied(std::size_t terminal_pos,
                          std::span<const std::uint64_t> source_values,
                          std::uint64_t broadcast) const;
  bool all_satisfied(std::span<const std::uint64_t> source_values,
                     std::uint64_t broadcast) const;

private:
  struct TerminalPlan {
    const TruthTable* table = nullptr;
    std::vector<std::size_t> has_sources;     // positions, declaration order
    std::vector<std::size_t> wanted_sources;  // positions, declaration order
    std::vector<MessageSpace> wanted_spaces;
  };

  const TruthTable* encoder_ = nullptr;
  std::uint32_t broadcast_width_ = 0;
  std::vector<MessageSpace> source_spaces_;
  std::vector<TerminalPlan> terminals_;
};

/// Global encoding: the value carried on every edge for one realization,
/// computed in topological order.
std::map<std::string, std::uint64_t> eval_global(const NetworkInstance& inst,
                                                 const NetworkCode& code, const Realization& x);

/// Terminals whose decoders output exactly their wanted source values.
std::set<std::string> network_satisfied(const NetworkInstance& inst, const NetworkCode& code,
                                        const Realization& x);
std::set<std::string> index_satisfied(const IndexInstance& inst, const IndexCode& code,
                                      const Realization& x);

/// Exact probability (over uniform independent sources) that every terminal
/// is simultaneously satisfied. Pure rational arithmetic; the denominator
/// divides the realization count. Throws BudgetExceededError past
/// opts.max_realizations.
Rational network_success_probability(const NetworkInstance& inst, const NetworkCode& code,
                                     const EnumerationOptions& opts = {});
Rational index_success_probability(const IndexInstance& inst, const IndexCode& code,
                                   const EnumerationOptions& opts = {});

/// success >= 1 - eps, compared exactly.
bool check_feasible(const NetworkInstance& inst, const NetworkCode& code, const Rational& eps,
                    const EnumerationOptions& opts = {});
bool check_feasible(const IndexInstance& inst, const IndexCode& code, const Rational& eps,
                    const EnumerationOptions& opts = {});

}  // namespace ncic
