#include <doctest.h>

#include <algorithm>

#include "ncic/butterfly.hpp"
#include "ncic/oracle.hpp"
#include "ncic/transform.hpp"
#include "test_support.hpp"

using namespace ncic;
using namespace ncic::testing;

namespace {

/// The broadcast encoder of the worked example, built from the chunk
/// formulas directly: chunk(e) = edge variable xor the xor code's value
/// on e, edge e1 most significant.
TruthTable expected_butterfly_encoder() {
  std::vector<MessageSpace> spaces(9, MessageSpace{1});
  return TruthTable::tabulate(spaces, MessageSpace{7}, [](std::span<const std::uint64_t> v) {
    std::uint64_t x1 = v[0], x2 = v[1];
    std::uint64_t chunks[7] = {v[2] ^ x1,      v[3] ^ x1,      v[4] ^ x2,     v[5] ^ x2,
                               v[6] ^ x1 ^ x2, v[7] ^ x1 ^ x2, v[8] ^ x1 ^ x2};
    std::uint64_t word = 0;
    for (std::uint64_t chunk : chunks) word = (word << 1) | chunk;
    return word;
  });
}

IndexCode butterfly_index_code() {
  NetworkInstance inst = butterfly_network();
  Reduction red = reduce_instance(inst);
  return network_to_index_code(inst, red.map, butterfly_xor_code());
}

/// Corrupts rows of the t:t decoder of a wire-reduction index code; each
/// corrupted (sigma, has) row kills exactly one good realization.
IndexCode corrupt_wire_code(IndexCode code, std::initializer_list<std::uint64_t> rows) {
  std::vector<std::uint64_t> entries = code.decoders.at("t:t").entries();
  for (std::uint64_t row : rows) entries[row] ^= 1;
  code.decoders.at("t:t") = TruthTable(code.decoders.at("t:t").input_spaces(),
                                       code.decoders.at("t:t").output_space(),
                                       std::move(entries));
  return code;
}

}  // namespace

TEST_CASE("the butterfly broadcast encoder matches the chunk formulas row for row") {
  IndexCode code = butterfly_index_code();
  TruthTable expected = expected_butterfly_encoder();
  REQUIRE(code.encoder.rows() == 512);
  CHECK(code.encoder == expected);

  // Spot-check the e5 chunk on a named realization: x1=1, x2=0, all edge
  // variables 0 -> chunk(e5) = x1 xor x2 = 1, sitting at bit 2.
  std::vector<std::uint64_t> v{1, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(((code.encoder.eval(v) >> 2) & 1) == 1);
}

TEST_CASE("the forward conversion on the wire is the one-chunk construction") {
  NetworkInstance inst = wire_network();
  Reduction red = reduce_instance(inst);
  IndexCode code = network_to_index_code(inst, red.map, wire_identity_code());

  // chunk = edge variable xor source variable
  std::vector<std::uint64_t> v(2);
  for (std::uint64_t s : {0, 1}) {
    for (std::uint64_t e : {0, 1}) {
      v = {s, e};
      CHECK(code.encoder.eval(v) == (e ^ s));
    }
  }
  // t:t recovers the source: broadcast xor edge variable
  const TruthTable& dec = code.decoders.at("t:t");
  for (std::uint64_t b : {0, 1}) {
    for (std::uint64_t e : {0, 1}) {
      v = {b, e};
      CHECK(dec.eval(v) == (b ^ e));
    }
  }
  CHECK(index_success_probability(red.instance, code) == Rational(1));
}

TEST_CASE("the forward conversion transfers success exactly, error or not") {
  NetworkInstance inst = butterfly_network();
  Reduction red = reduce_instance(inst);
  CHECK(index_success_probability(red.instance, butterfly_index_code()) == Rational(1));

  std::mt19937 rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    NetworkInstance dag = random_dag(rng);
    NetworkCode code = random_network_code(rng, dag);
    Reduction r = reduce_instance(dag);
    IndexCode hat_code = network_to_index_code(dag, r.map, code);
    CHECK(index_success_probability(r.instance, hat_code) ==
          network_success_probability(dag, code));
  }
}

TEST_CASE("forward-conversion failure events coincide realization-wise") {
  // Edge-origin terminals and the all-terminal always decode; a network
  // terminal's image fails exactly when the terminal itself fails on the
  // source part.
  std::mt19937 rng(211);
  NetworkInstance dag = random_dag(rng);
  NetworkCode code = random_network_code(rng, dag);
  Reduction red = reduce_instance(dag);
  IndexCode hat_code = network_to_index_code(dag, red.map, code);

  IndexEvaluator ev(red.instance, hat_code);
  std::vector<std::uint64_t> full(red.instance.sources.size());
  for (std::uint64_t r = 0; r < ev.realization_count(); ++r) {
    unpack_values(r, ev.source_spaces(), full);

    Realization hat_x;
    Realization x;
    for (std::size_t i = 0; i < red.instance.sources.size(); ++i) {
      hat_x.values[red.instance.sources[i].id] = full[i];
      const Origin& origin = red.map.source_of.at(red.instance.sources[i].id);
      if (origin.kind == OriginKind::Source) x.values[origin.id] = full[i];
    }

    std::set<std::string> expected;
    for (const auto& [hat_id, origin] : red.map.terminal_of) {
      if (origin.kind != OriginKind::Terminal) expected.insert(hat_id);
    }
    for (const auto& id : network_satisfied(dag, code, x)) expected.insert("t:" + id);
    CHECK(index_satisfied(red.instance, hat_code, hat_x) == expected);
  }
}

TEST_CASE("both directions work at block length two") {
  NetworkInstance inst = wire_network();
  Reduction red = reduce_instance(inst);

  NetworkCode code;
  code.block_length = 2;
  code.encoders.emplace("e", TruthTable({MessageSpace{2}}, MessageSpace{2}, {0, 1, 2, 3}));
  code.decoders.emplace("t", TruthTable({MessageSpace{2}}, MessageSpace{2}, {0, 1, 2, 3}));
  CHECK(network_success_probability(inst, code) == Rational(1));

  IndexCode hat_code = network_to_index_code(inst, red.map, code);
  CHECK(hat_code.encoder.output_space().width_bits == 2);
  CHECK(index_success_probability(red.instance, hat_code) == Rational(1));

  // chunk = edge variable xor the forwarded source, over 2-bit words
  std::vector<std::uint64_t> v(2);
  for (std::uint64_t s = 0; s < 4; ++s) {
    for (std::uint64_t e = 0; e < 4; ++e) {
      v = {s, e};
      CHECK(hat_code.encoder.eval(v) == (e ^ s));
    }
  }

  for (std::uint64_t sigma = 0; sigma < 4; ++sigma) {
    NetworkCode back = index_to_network_code(inst, red.instance, red.map, hat_code, sigma);
    CHECK(network_success_probability(inst, back) == Rational(1));
    if (sigma == 0) CHECK(back == code);
  }
}

TEST_CASE("the pipeline holds on a butterfly with two-bit edges") {
  NetworkInstance inst = butterfly_network();
  for (auto& e : inst.edges) e.capacity = 2;
  for (auto& s : inst.sources) s.rate = 2;

  auto identity = [] {
    return TruthTable({MessageSpace{2}}, MessageSpace{2}, {0, 1, 2, 3});
  };
  auto wide_xor = [] {
    return TruthTable::tabulate(
        {MessageSpace{2}, MessageSpace{2}}, MessageSpace{2},
        [](std::span<const std::uint64_t> v) { return v[0] ^ v[1]; });
  };
  NetworkCode code;
  code.block_length = 1;
  for (const auto& id : {"e1", "e2", "e3", "e4", "e6", "e7"}) code.encoders.emplace(id, identity());
  code.encoders.emplace("e5", wide_xor());
  code.decoders.emplace("t1", wide_xor());
  code.decoders.emplace("t2", wide_xor());
  CHECK(network_success_probability(inst, code) == Rational(1));

  Reduction red = reduce_instance(inst);
  IndexCode hat_code = network_to_index_code(inst, red.map, code);
  CHECK(hat_code.encoder.output_space().width_bits == 14);
  CHECK(index_success_probability(red.instance, hat_code) == Rational(1));

  GoodSetTable table = good_sets(red.instance, hat_code, red.map);
  CHECK(table.source_cardinality == 16);
  CHECK(table.edge_cardinality == 16384);
  for (const auto& pairs : table.good) CHECK(pairs.size() == 16384);

  SigmaSelection selection = select_sigma(table, red.instance);
  CHECK(selection.coverage_fraction == Rational(1));
  NetworkCode back =
      index_to_network_code(inst, red.instance, red.map, hat_code, selection.sigma);
  CHECK(network_success_probability(inst, back) == Rational(1));
  CHECK(index_to_network_code(inst, red.instance, red.map, hat_code, 0) == code);
}

TEST_CASE("the full invariant chain holds across mixed-width random instances") {
  std::mt19937 rng(8088);
  for (int trial = 0; trial < 15; ++trial) {
    NetworkInstance inst = random_dag_mixed(rng);
    NetworkCode code = random_network_code(rng, inst);
    Reduction red = reduce_instance(inst);

    IndexCode hat_code = network_to_index_code(inst, red.map, code);
    Rational network_success = network_success_probability(inst, code);
    CHECK(index_success_probability(red.instance, hat_code) == network_success);

    NetworkCode back = index_to_network_code(inst, red.instance, red.map, hat_code, 0);
    CHECK(back == code);

    GoodSetTable table = good_sets(red.instance, hat_code, red.map);
    CHECK_FALSE(
        check_good_set_injectivity(red.instance, hat_code, red.map, table).has_value());

    SigmaSelection selection = select_sigma(table, red.instance);
    CHECK(selection.coverage_fraction >= network_success);
    NetworkCode pinned =
        index_to_network_code(inst, red.instance, red.map, hat_code, selection.sigma);
    CHECK(network_success_probability(inst, pinned) >= selection.coverage_fraction);

    CoverSet cover = find_cover(table, red.instance, Rational(0));
    CHECK(cover.assignment.size() == cover.eligible_count);
  }
}

TEST_CASE("fractional rates evaluate once the block length absorbs them") {
  NetworkInstance inst = wire_network(Rational(1, 2), Rational(1, 2));
  NetworkCode code;
  code.block_length = 2;  // 1/2 * 2 = one bit
  code.encoders.emplace("e", TruthTable({MessageSpace{1}}, MessageSpace{1}, {0, 1}));
  code.decoders.emplace("t", TruthTable({MessageSpace{1}}, MessageSpace{1}, {0, 1}));
  CHECK(network_success_probability(inst, code) == Rational(1));

  NetworkCode odd = code;
  odd.block_length = 1;  // 1/2 * 1 is not an integer width
  CHECK_THROWS_AS(network_success_probability(inst, odd), std::invalid_argument);
}

TEST_CASE("the forward conversion rejects a mismatched map") {
  NetworkInstance inst = butterfly_network();
  Reduction red = reduce_instance(wire_network());
  CHECK_THROWS_AS(network_to_index_code(inst, red.map, butterfly_xor_code()),
                  std::invalid_argument);
}

TEST_CASE("good sets of the zero-error butterfly code are full") {
  NetworkInstance inst = butterfly_network();
  Reduction red = reduce_instance(inst);
  GoodSetTable table = good_sets(red.instance, butterfly_index_code(), red.map);

  CHECK(table.source_cardinality == 4);
  CHECK(table.edge_cardinality == 128);
  CHECK(table.good_pair_count == 512);
  for (const auto& pairs : table.good) CHECK(pairs.size() == 128);
}

TEST_CASE("a constant broadcast leaves at most one good edge realization per source part") {
  NetworkInstance inst = wire_network();
  Reduction red = reduce_instance(inst);
  IndexCode code = network_to_index_code(inst, red.map, wire_identity_code());

  // Erase all broadcast information.
  IndexCode constant{1,
                     TruthTable(code.encoder.input_spaces(), code.encoder.output_space(),
                                std::vector<std::uint64_t>(code.encoder.rows(), 0)),
                     code.decoders};
  GoodSetTable table = good_sets(red.instance, constant, red.map);
  for (const auto& pairs : table.good) CHECK(pairs.size() <= 1);
}

TEST_CASE("an edge-free network yields the single trivially good pair") {
  NetworkInstance inst;
  inst.nodes = {"a"};
  inst.sources = {{"s", "a", 0}};
  Reduction red = reduce_instance(inst);

  IndexCode code{1, TruthTable({MessageSpace{0}}, MessageSpace{0}, {0}), {}};
  code.decoders.emplace("all", TruthTable({MessageSpace{0}, MessageSpace{0}}, MessageSpace{0},
                                          {0}));
  GoodSetTable table = good_sets(red.instance, code, red.map);
  CHECK(table.source_cardinality == 1);
  CHECK(table.edge_cardinality == 1);
  CHECK(table.good_pair_count == 1);

  CHECK_FALSE(check_good_set_injectivity(red.instance, code, red.map, table).has_value());
}

TEST_CASE("good-set injectivity holds on the butterfly with 128 distinct broadcast values per source part") {
  NetworkInstance inst = butterfly_network();
  Reduction red = reduce_instance(inst);
  IndexCode code = butterfly_index_code();
  GoodSetTable table = good_sets(red.instance, code, red.map);

  CHECK_FALSE(check_good_set_injectivity(red.instance, code, red.map, table).has_value());
  for (const auto& pairs : table.good) {
    std::set<std::uint64_t> sigmas;
    for (const auto& pair : pairs) sigmas.insert(pair.sigma);
    CHECK(sigmas.size() == 128);
  }
}

TEST_CASE("injectivity violations are reported with a counterexample") {
  NetworkInstance inst = wire_network();
  Reduction red = reduce_instance(inst);
  IndexCode code = network_to_index_code(inst, red.map, wire_identity_code());

  // An encoder that ignores the edge variable, paired with a hand-crafted
  // table claiming both edge values good: only a lenient all-terminal could
  // produce such a table, and the injectivity check must flag it.
  IndexCode blind{1,
                  TruthTable(code.encoder.input_spaces(), code.encoder.output_space(),
                             {0, 0, 1, 1}),
                  code.decoders};
  GoodSetTable table = good_sets(red.instance, code, red.map);  // genuine shape
  table.good[0] = {{0, 0}, {1, 0}};
  table.good[1] = {{0, 1}, {1, 1}};

  auto violation = check_good_set_injectivity(red.instance, blind, red.map, table);
  REQUIRE(violation.has_value());
  CHECK(violation->source_value == 0);
  CHECK(violation->edge_value_a == 0);
  CHECK(violation->edge_value_b == 1);
  CHECK(violation->sigma == 0);
}

TEST_CASE("the injectivity check needs the all-terminal in the map") {
  NetworkInstance inst = wire_network();
  Reduction red = reduce_instance(inst);
  IndexCode code = network_to_index_code(inst, red.map, wire_identity_code());
  GoodSetTable table = good_sets(red.instance, code, red.map);
  ReductionMap crippled = red.map;
  crippled.terminal_of.erase("all");
  CHECK_THROWS_AS(check_good_set_injectivity(red.instance, code, crippled, table), std::invalid_argument);
}

TEST_CASE("sigma selection on the zero-error butterfly covers everything at sigma 0") {
  NetworkInstance inst = butterfly_network();
  Reduction red = reduce_instance(inst);
  GoodSetTable table = good_sets(red.instance, butterfly_index_code(), red.map);
  SigmaSelection selection = select_sigma(table, red.instance);

  CHECK(selection.sigma == 0);  // every sigma covers all four; smallest wins
  CHECK(selection.coverage_fraction == Rational(1));
  CHECK(selection.covered == std::vector<std::uint64_t>{0, 1, 2, 3});
}

TEST_CASE("sigma selection dominates the average: a 3/4-success code covers at least 3/4") {
  NetworkInstance inst = wire_network();
  Reduction red = reduce_instance(inst);
  IndexCode code = corrupt_wire_code(network_to_index_code(inst, red.map, wire_identity_code()),
                                     {0});

  Rational success = index_success_probability(red.instance, code);
  CHECK(success == Rational(3, 4));

  GoodSetTable table = good_sets(red.instance, code, red.map);
  SigmaSelection selection = select_sigma(table, red.instance);
  CHECK(selection.coverage_fraction >= Rational(3, 4));

  // Exhaustive cross-check over both broadcast values.
  for (std::uint64_t sigma = 0; sigma < 2; ++sigma) {
    std::uint64_t covered = 0;
    for (const auto& pairs : table.good) {
      for (const auto& pair : pairs) {
        if (pair.sigma == sigma) {
          ++covered;
          break;
        }
      }
    }
    CHECK(covered <= selection.covered.size());
  }
}

TEST_CASE("a zero-width broadcast selects sigma 0 with coverage equal to success") {
  NetworkInstance inst = wire_network(1, 0);  // zero-capacity edge
  Reduction red = reduce_instance(inst);
  NetworkCode net;
  net.block_length = 1;
  net.encoders.emplace("e", TruthTable({MessageSpace{1}}, MessageSpace{0}, {0, 0}));
  net.decoders.emplace("t", TruthTable({MessageSpace{0}}, MessageSpace{1}, {0}));
  IndexCode code = network_to_index_code(inst, red.map, net);

  GoodSetTable table = good_sets(red.instance, code, red.map);
  SigmaSelection selection = select_sigma(table, red.instance);
  CHECK(selection.sigma == 0);
  CHECK(selection.coverage_fraction == index_success_probability(red.instance, code));
}

TEST_CASE("the reverse conversion at sigma 0 reproduces the xor code and any sigma keeps success 1") {
  NetworkInstance inst = butterfly_network();
  Reduction red = reduce_instance(inst);
  IndexCode code = butterfly_index_code();

  NetworkCode recovered = index_to_network_code(inst, red.instance, red.map, code, 0);
  CHECK(recovered == butterfly_xor_code());
  CHECK(network_success_probability(inst, recovered) == Rational(1));

  for (std::uint64_t sigma : {1, 17, 64, 127}) {
    NetworkCode other = index_to_network_code(inst, red.instance, red.map, code, sigma);
    CHECK(network_success_probability(inst, other) == Rational(1));
  }
  CHECK_THROWS_AS(index_to_network_code(inst, red.instance, red.map, code, 128),
                  std::invalid_argument);
}

TEST_CASE("the reverse conversion requires the broadcast rate to equal the total capacity") {
  NetworkInstance inst = wire_network();
  Reduction red = reduce_instance(inst);
  IndexCode code = network_to_index_code(inst, red.map, wire_identity_code());
  IndexInstance wrong = red.instance;
  wrong.broadcast_rate = Rational(2);
  CHECK_THROWS_AS(index_to_network_code(inst, wrong, red.map, code, 0), std::invalid_argument);
}

TEST_CASE("round trip: reverse after forward conversion is the identity on the tables") {
  std::mt19937 rng(55);
  int zero_error_seen = 0;
  for (int trial = 0; trial < 30; ++trial) {
    NetworkInstance dag = random_dag(rng);
    Reduction red = reduce_instance(dag);

    NetworkCode code = random_network_code(rng, dag);
    if (auto searched = search_network_code(dag, 1, Rational(0))) {
      if (trial % 2 == 0) code = *searched;  // mix zero-error witnesses in
    }
    bool zero_error = network_success_probability(dag, code) == Rational(1);
    zero_error_seen += zero_error ? 1 : 0;

    IndexCode hat_code = network_to_index_code(dag, red.map, code);
    NetworkCode back = index_to_network_code(dag, red.instance, red.map, hat_code, 0);
    CHECK(back == code);
  }
  CHECK(zero_error_seen > 0);  // the round trip was exercised on zero-error codes too
}

TEST_CASE("the transfer pipeline certifies the butterfly") {
  NetworkInstance inst = butterfly_network();
  Reduction red = reduce_instance(inst);
  TransferReport report = transfer_report(inst, red.instance, red.map, butterfly_index_code());
  CHECK(report.sigma == 0);
  CHECK(report.coverage == Rational(1));
  CHECK(report.network_success == Rational(1));
  CHECK(report.cover_size == 1);
  CHECK(report.overhead_bits == 0);
}

TEST_CASE("the transfer pipeline keeps the success above the coverage on lossy codes") {
  NetworkInstance inst = wire_network();
  Reduction red = reduce_instance(inst);
  IndexCode base = network_to_index_code(inst, red.map, wire_identity_code());

  for (auto rows : {std::initializer_list<std::uint64_t>{0},
                    std::initializer_list<std::uint64_t>{0, 3},
                    std::initializer_list<std::uint64_t>{1, 2}}) {
    IndexCode code = corrupt_wire_code(base, rows);
    Rational eps = Rational(1) - index_success_probability(red.instance, code);
    TransferReport report = transfer_report(inst, red.instance, red.map, code);
    CHECK(report.coverage >= Rational(1) - eps);
    CHECK(report.network_success >= report.coverage);
  }
}

TEST_CASE("greedy cover: one sigma suffices for the zero-error butterfly") {
  NetworkInstance inst = butterfly_network();
  Reduction red = reduce_instance(inst);
  GoodSetTable table = good_sets(red.instance, butterfly_index_code(), red.map);
  CoverSet cover = find_cover(table, red.instance, Rational(0));

  CHECK(cover.sigmas == std::vector<std::uint64_t>{0});
  CHECK(cover.eligible_count == 4);
  CHECK(cover.assignment.size() == 4);
  for (const auto& [xs, witness] : cover.assignment) {
    CHECK(witness.sigma == 0);
    bool found = false;
    for (const auto& pair : table.good[xs]) {
      if (pair.edge_value == witness.edge_value && pair.sigma == witness.sigma) found = true;
    }
    CHECK(found);  // the recorded witness really is a good pair at that sigma
  }
}

TEST_CASE("greedy cover on the wire reduction") {
  NetworkInstance inst = wire_network();
  Reduction red = reduce_instance(inst);
  IndexCode code = network_to_index_code(inst, red.map, wire_identity_code());
  GoodSetTable table = good_sets(red.instance, code, red.map);
  CoverSet cover = find_cover(table, red.instance, Rational(0));
  CHECK(cover.sigmas.size() == 1);
  CHECK(cover.assignment.size() == 2);
}

TEST_CASE("disjoint per-source broadcast images force one sigma per element of A") {
  NetworkInstance inst = wire_network();
  Reduction red = reduce_instance(inst);

  // The broadcast carries the source part only; decoders that fix the edge
  // variable to zero make exactly (xs, 0) good, with image {xs}.
  IndexCode code{1,
                 TruthTable({MessageSpace{1}, MessageSpace{1}}, MessageSpace{1}, {0, 0, 1, 1}),
                 {}};
  code.decoders.emplace("edge:e", TruthTable({MessageSpace{1}, MessageSpace{1}}, MessageSpace{1},
                                             {0, 0, 0, 0}));
  code.decoders.emplace("t:t", TruthTable({MessageSpace{1}, MessageSpace{1}}, MessageSpace{1},
                                          {0, 0, 1, 1}));
  code.decoders.emplace("all", TruthTable({MessageSpace{1}, MessageSpace{1}}, MessageSpace{1},
                                          {0, 0, 0, 0}));

  GoodSetTable table = good_sets(red.instance, code, red.map);
  REQUIRE(table.good[0].size() == 1);
  REQUIRE(table.good[1].size() == 1);
  CHECK(table.good[0][0].sigma != table.good[1][0].sigma);

  CoverSet cover = find_cover(table, red.instance, Rational(0));
  CHECK(cover.eligible_count == 2);
  CHECK(cover.sigmas.size() == 2);  // |cover| = |A|
  CHECK(cover.assignment.size() == 2);
}

TEST_CASE("cover thresholds honor fractional delta exactly") {
  NetworkInstance inst = butterfly_network();
  Reduction red = reduce_instance(inst);
  GoodSetTable table = good_sets(red.instance, butterfly_index_code(), red.map);

  // |A_xs| = 128 = 2^7: eligible iff 128 >= 2^((1-delta)*7 - 1).
  for (const auto& [delta, eligible] :
       std::vector<std::pair<Rational, std::uint64_t>>{{Rational(0), 4},
                                                       {Rational(1, 7), 4},
                                                       {Rational(1), 4}}) {
    CoverSet cover = find_cover(table, red.instance, delta);
    CHECK(cover.eligible_count == eligible);
  }
  CHECK_THROWS_AS(find_cover(table, red.instance, Rational(-1, 2)), std::invalid_argument);

  // Shrink one good set below the threshold: 63 < 2^(7-1) drops one element.
  GoodSetTable pruned = table;
  pruned.good[2].resize(63);
  CHECK(find_cover(pruned, red.instance, Rational(0)).eligible_count == 3);
  // At delta = 1/7 the threshold is 2^5 = 32 <= 63: eligible again.
  CHECK(find_cover(pruned, red.instance, Rational(1, 7)).eligible_count == 4);
}

TEST_CASE("eligibility thresholds resolve the narrow band exactly") {
  // delta = 1/3 at width 7 puts the threshold at 2^(11/3), strictly between
  // 12 and 13; only an exact power comparison separates the two sizes.
  GoodSetTable table;
  table.source_spaces = {MessageSpace{1}};
  table.edge_spaces = {MessageSpace{7}};
  table.source_positions = {0};
  table.edge_positions = {1};
  table.broadcast_width = 7;
  table.source_cardinality = 2;
  table.edge_cardinality = 128;
  table.good.resize(2);
  for (std::uint64_t i = 0; i < 12; ++i) table.good[0].push_back({i, i});
  for (std::uint64_t i = 0; i < 13; ++i) table.good[1].push_back({i, i});
  table.good_pair_count = 25;

  IndexInstance unused;
  CoverSet cover = find_cover(table, unused, Rational(1, 3));
  CHECK(cover.eligible_count == 1);  // 13^3 > 2^11 but 12^3 < 2^11
  REQUIRE(cover.assignment.size() == 1);
  CHECK(cover.assignment.begin()->first == 1);
}

TEST_CASE("two-phase check on the collocated butterfly") {
  NetworkInstance inst = collocated_butterfly_network();
  NetworkCode code = collocated_butterfly_xor_code();
  CHECK(network_success_probability(inst, code) == Rational(1));

  Reduction red = reduce_instance(inst);
  IndexCode hat_code = network_to_index_code(inst, red.map, code);
  CHECK(index_success_probability(red.instance, hat_code) == Rational(1));

  GoodSetTable table = good_sets(red.instance, hat_code, red.map);
  CoverSet cover = find_cover(table, red.instance, Rational(0));
  TwoPhaseReport report =
      collocated_two_phase_check(inst, red.instance, red.map, hat_code, cover);

  CHECK(report.cover_size == 1);
  CHECK(report.overhead_bits == 0);
  CHECK(report.uncovered_fraction == Rational(0));
  CHECK(report.case_a_all_correct);
}

TEST_CASE("two-phase check bounds the uncovered fraction by twice the error") {
  NetworkInstance inst = wire_network();  // one source: trivially collocated
  Reduction red = reduce_instance(inst);
  IndexCode code = corrupt_wire_code(network_to_index_code(inst, red.map, wire_identity_code()),
                                     {0});
  CHECK(index_success_probability(red.instance, code) == Rational(3, 4));

  GoodSetTable table = good_sets(red.instance, code, red.map);
  CoverSet cover = find_cover(table, red.instance, Rational(0));
  TwoPhaseReport report = collocated_two_phase_check(inst, red.instance, red.map, code, cover);
  CHECK(report.uncovered_fraction <= Rational(1, 2));
  CHECK(report.case_a_all_correct);
}

TEST_CASE("the two-phase check rejects spread-out sources") {
  NetworkInstance inst = butterfly_network();  // sources at two nodes
  Reduction red = reduce_instance(inst);
  IndexCode code = butterfly_index_code();
  GoodSetTable table = good_sets(red.instance, code, red.map);
  CoverSet cover = find_cover(table, red.instance, Rational(0));
  CHECK_THROWS_AS(collocated_two_phase_check(inst, red.instance, red.map, code, cover),
                  std::invalid_argument);
}

TEST_CASE("the two-phase check rejects unreachable nodes") {
  NetworkInstance inst = wire_network();
  inst.nodes.push_back("island");
  Reduction red = reduce_instance(inst);
  IndexCode code = network_to_index_code(inst, red.map, wire_identity_code());
  GoodSetTable table = good_sets(red.instance, code, red.map);
  CoverSet cover = find_cover(table, red.instance, Rational(0));
  CHECK_THROWS_AS(collocated_two_phase_check(inst, red.instance, red.map, code, cover),
                  std::invalid_argument);
}
