#pragma once

#include <cstdint>
#include <optional>

#include "ncic/code.hpp"

namespace ncic {

struct SearchBudget {
  std::uint64_t max_tables = std::uint64_t{1} << 20;
  std::uint64_t max_realizations = kDefaultMaxRealizations;
};

/// Exhaustive search for a network code with success >= 1 - eps.
///
/// Local encoder tables are enumerated edge by edge in topological order,
/// lexicographically over row-major entries, so the returned witness is the
/// lexicographically first satisfying candidate. Decoders are never
/// enumerated: for a fixed encoder the per-terminal optimum is the majority
/// output over the realizations sharing a view (ties to the smallest value).
/// With pruning on, a prefix is abandoned as soon as some terminal whose
/// in-edges are all assigned has provably too many view collisions to reach
/// the target, which never changes the verdict or the witness.
///
/// Throws BudgetExceededError when the candidate space or the realization
/// count exceeds the budget.
std::optional<NetworkCode> search_network_code(const NetworkInstance& inst, std::uint32_t n,
                                               const Rational& eps,
                                               const SearchBudget& budget = {},
                                               bool prune = true);

/// Exhaustive search for an index code with success >= 1 - eps: every
/// broadcast encoder table is tried (lexicographic order), decoders by
/// majority vote over realizations sharing (broadcast, has-view).
std::optional<IndexCode> search_index_code(const IndexInstance& inst, std::uint32_t n,
                                           const Rational& eps, const SearchBudget& budget = {});

struct BroadcastSearchResult {
  std::uint32_t width_bits = 0;
  IndexCode code;
};

/// Smallest broadcast width (in bits) admitting a zero-error index code,
/// found by increasing exhaustive search; the instance's own broadcast rate
/// is ignored. Always terminates at or before the total source width.
BroadcastSearchResult min_broadcast_bits(const IndexInstance& inst, std::uint32_t n,
                                         const SearchBudget& budget = {});

}  // namespace ncic
