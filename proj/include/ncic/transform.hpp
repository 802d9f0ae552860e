#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ncic/code.hpp"
#include "ncic/reduction.hpp"

namespace ncic {

/// The forward conversion: from a network code to an index code on the
/// reduced instance. The broadcast word is built in chunks, one per edge in
/// declaration order (most significant chunk first); the chunk for edge e is
/// the edge-origin variable xor'd with the global encoding of the
/// source-origin variables. Decoders are materialized as explicit tables so
/// the result is a portable artifact. Success probability carries over
/// exactly: the index code fails on (xs, xe) iff the network code fails
/// on xs.
IndexCode network_to_index_code(const NetworkInstance& inst, const ReductionMap& map,
                                const NetworkCode& code);

/// For each partial realization xs of the source-origin variables, the set
/// of edge-origin realizations xe such that every index terminal decodes
/// (xs, xe) correctly, each with its broadcast word.
struct GoodSetTable {
  struct GoodPair {
    std::uint64_t edge_value = 0;
    std::uint64_t sigma = 0;

    friend bool operator==(const GoodPair&, const GoodPair&) = default;
  };

  std::vector<std::size_t> source_positions;  // indices into the index instance's sources
  std::vector<std::size_t> edge_positions;
  std::vector<MessageSpace> source_spaces;
  std::vector<MessageSpace> edge_spaces;
  std::uint32_t broadcast_width = 0;
  std::uint64_t source_cardinality = 1;  // # partial realizations xs
  std::uint64_t edge_cardinality = 1;    // # edge-part realizations xe
  std::uint64_t good_pair_count = 0;     // = success probability * total realizations
  std::vector<std::vector<GoodPair>> good;  // per xs, ascending by edge_value
};

/// Exhaustively classifies every (xs, xe) pair.
GoodSetTable good_sets(const IndexInstance& inst, const IndexCode& code, const ReductionMap& map,
                       const EnumerationOptions& opts = {});

struct InjectivityViolation {
  std::uint64_t source_value = 0;
  std::uint64_t edge_value_a = 0;
  std::uint64_t edge_value_b = 0;
  std::uint64_t sigma = 0;
};

/// Verifies that for every xs the broadcast encoder restricted to the good
/// set is injective (so a broadcast value pins down at most one good xe).
/// Returns the first violating triple if any; broadcast values are
/// recomputed from the code, not trusted from the table.
std::optional<InjectivityViolation> check_good_set_injectivity(const IndexInstance& inst,
                                                               const IndexCode& code,
                                                               const ReductionMap& map,
                                                               const GoodSetTable& table);

struct SigmaSelection {
  std::uint64_t sigma = 0;
  std::vector<std::uint64_t> covered;  // xs values with a good witness at sigma, ascending
  Rational coverage_fraction;
};

/// The broadcast value covering the most partial realizations, ties broken
/// by smallest value. For a code with error eps on the reduced instance the
/// coverage is at least 1 - eps.
SigmaSelection select_sigma(const GoodSetTable& table, const IndexInstance& inst);

/// The reverse conversion: pins the broadcast input of every edge-origin and
/// terminal-origin decoder to sigma, yielding local encoders and decoders
/// over the network's own message spaces.
NetworkCode index_to_network_code(const NetworkInstance& inst, const IndexInstance& hat,
                                  const ReductionMap& map, const IndexCode& code,
                                  std::uint64_t sigma);

struct TransferReport {
  std::uint64_t sigma = 0;
  Rational coverage;
  Rational network_success;
  std::size_t cover_size = 0;      // greedy cover at delta = 0
  std::uint32_t overhead_bits = 0; // ceil(log2 |cover|)
};

/// Runs the whole reverse-conversion pipeline (good sets, injectivity check,
/// sigma selection, decoder specialization, exact verification) and checks
/// the achieved network success against the coverage bound.
TransferReport transfer_report(const NetworkInstance& inst, const IndexInstance& hat,
                               const ReductionMap& map, const IndexCode& code,
                               const EnumerationOptions& opts = {});

/// Greedy cover of the large-good-set realizations by broadcast values.
struct CoverSet {
  struct Witness {
    std::uint64_t sigma = 0;
    std::uint64_t edge_value = 0;
  };

  std::vector<std::uint64_t> sigmas;            // in pick order
  std::map<std::uint64_t, Witness> assignment;  // covered xs -> witness
  Rational delta;
  std::uint64_t eligible_count = 0;  // |A|, the xs with a large enough good set
};

/// Repeatedly picks the broadcast value covering the most still-uncovered
/// members of A = { xs : |A_xs| >= 2^((1-delta) * broadcast_width - 1) },
/// ties to the smallest value, until A is fully covered.
CoverSet find_cover(const GoodSetTable& table, const IndexInstance& inst, const Rational& delta);

struct TwoPhaseReport {
  std::size_t cover_size = 0;
  std::uint32_t overhead_bits = 0;   // ceil(log2 |cover|)
  Rational uncovered_fraction;
  bool case_a_all_correct = false;   // every covered xs decodes under its assigned sigma
};

/// Two-phase check for collocated sources: phase one announces the cover
/// member assigned to the realization (the overhead message), phase two runs
/// the sigma-pinned network code. Requires every source at a single node and
/// every node reachable from it. For a delta = 0 cover the uncovered
/// fraction is checked against twice the index code's error.
TwoPhaseReport collocated_two_phase_check(const NetworkInstance& inst, const IndexInstance& hat,
                                          const ReductionMap& map, const IndexCode& code,
                                          const CoverSet& cover,
                                          const EnumerationOptions& opts = {});

}  // namespace ncic
