#include <doctest.h>

#include <algorithm>
#include <set>

#include "ncic/butterfly.hpp"
#include "ncic/instance.hpp"
#include "ncic/truth_table.hpp"
#include "test_support.hpp"

using namespace ncic;
using namespace ncic::testing;

namespace {

bool has_rule(const ValidationReport& report, const std::string& rule) {
  return std::any_of(report.violations.begin(), report.violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

/// Every edge in In(e) must precede e; checked by direct scan.
bool respects_precedence(const NetworkInstance& inst, const std::vector<std::string>& order) {
  auto position = [&](const std::string& id) {
    return std::find(order.begin(), order.end(), id) - order.begin();
  };
  for (const auto& e : inst.edges) {
    for (const auto& ref : edge_inputs(inst, e.id)) {
      if (!ref.is_source && position(ref.id) >= position(e.id)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("message spaces demand integral widths") {
  CHECK(space_for_rate(Rational(1), 1).width_bits == 1);
  CHECK(space_for_rate(Rational(3, 2), 2).width_bits == 3);
  CHECK(space_for_rate(Rational(0), 5).width_bits == 0);
  CHECK(space_for_rate(Rational(0), 5).cardinality() == 1);
  CHECK_THROWS_AS(space_for_rate(Rational(1, 2), 1), std::invalid_argument);
  CHECK_THROWS_AS(space_for_rate(Rational(-1), 1), std::invalid_argument);
}

TEST_CASE("mixed-radix packing: first value most significant") {
  std::vector<MessageSpace> spaces{{2}, {1}, {3}};
  std::vector<std::uint64_t> values{3, 1, 5};
  std::uint64_t packed = pack_values(values, spaces);
  CHECK(packed == ((3u * 2 + 1) * 8 + 5));
  std::vector<std::uint64_t> round(3);
  unpack_values(packed, spaces, round);
  CHECK(round == values);
  CHECK(space_product(spaces) == 64);
}

TEST_CASE("truth tables are total and range-checked") {
  CHECK_THROWS_AS(TruthTable({MessageSpace{1}}, MessageSpace{1}, {0, 1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(TruthTable({MessageSpace{1}}, MessageSpace{1}, {0, 2}),
                  std::invalid_argument);
  TruthTable t({MessageSpace{1}, MessageSpace{1}}, MessageSpace{1}, {0, 1, 1, 0});
  std::vector<std::uint64_t> in{1, 0};
  CHECK(t.eval(in) == 1);
  CHECK(t.eval_row(3) == 0);
}

TEST_CASE("the butterfly validates") {
  ValidationReport report = validate_network(butterfly_network());
  CHECK(report.ok);
  CHECK(report.violations.empty());
}

TEST_CASE("a single wire validates") {
  CHECK(validate_network(wire_network()).ok);
}

TEST_CASE("cycles are rejected") {
  NetworkInstance inst;
  inst.nodes = {"a", "u", "v", "b"};
  inst.edges = {{"e1", "a", "u", 1},
                {"e2", "u", "v", 1},
                {"e3", "v", "u", 1},  // closes the cycle u -> v -> u
                {"e4", "v", "b", 1}};
  inst.sources = {{"s", "a", 1}};
  inst.terminals = {{"t", "b", {"s"}}};
  ValidationReport report = validate_network(inst);
  CHECK_FALSE(report.ok);
  CHECK(has_rule(report, "acyclicity"));
}

TEST_CASE("single-edge reversals of the butterfly") {
  // No reversal of this butterfly closes a directed cycle. Every reversal
  // except e5's points an edge into a source or out of a terminal and is
  // rejected; e5 runs between the two relay nodes, so its reversal is still
  // a structurally valid (if useless) DAG.
  NetworkInstance base = butterfly_network();
  for (std::size_t i = 0; i < base.edges.size(); ++i) {
    NetworkInstance inst = base;
    std::swap(inst.edges[i].from, inst.edges[i].to);
    CAPTURE(base.edges[i].id);
    CHECK(validate_network(inst).ok == (base.edges[i].id == "e5"));
  }
}

TEST_CASE("structural rules fire individually") {
  NetworkInstance inst = wire_network();
  SUBCASE("edge into a source node") {
    inst.edges.push_back({"back", "b", "a", 1});
    ValidationReport report = validate_network(inst);
    CHECK(has_rule(report, "source-incoming"));
    CHECK(has_rule(report, "terminal-outgoing"));
  }
  SUBCASE("unknown want") {
    inst.terminals[0].wants = {"nope"};
    CHECK(has_rule(validate_network(inst), "unknown-source"));
  }
  SUBCASE("duplicate ids") {
    inst.edges.push_back({"e", "a", "b", 1});
    CHECK(has_rule(validate_network(inst), "unique-id"));
  }
  SUBCASE("negative capacity") {
    inst.edges[0].capacity = Rational(-1);
    CHECK(has_rule(validate_network(inst), "capacity-negative"));
  }
}

TEST_CASE("butterfly topological order follows declaration order") {
  std::vector<std::string> expected{"e1", "e2", "e3", "e4", "e5", "e6", "e7"};
  NetworkInstance inst = butterfly_network();
  std::vector<std::string> order = topological_order(inst);
  CHECK(order == expected);
  CHECK(respects_precedence(inst, order));
}

TEST_CASE("wire and parallel edges order trivially") {
  CHECK(topological_order(wire_network()) == std::vector<std::string>{"e"});

  NetworkInstance inst = wire_network();
  inst.edges = {{"eA", "a", "b", 1}, {"eB", "a", "b", 1}};
  CHECK(topological_order(inst) == std::vector<std::string>{"eA", "eB"});
}

TEST_CASE("topological order is a precedence-respecting permutation on random DAGs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    NetworkInstance inst = random_dag(rng);
    std::vector<std::string> order = topological_order(inst);
    CHECK(order.size() == inst.edges.size());
    std::set<std::string> unique(order.begin(), order.end());
    CHECK(unique.size() == order.size());
    CHECK(respects_precedence(inst, order));
  }
}

TEST_CASE("topological order rejects invalid instances") {
  NetworkInstance inst = wire_network();
  inst.terminals[0].wants = {"nope"};
  CHECK_THROWS_AS(topological_order(inst), std::invalid_argument);
}

TEST_CASE("in-sets of the butterfly") {
  NetworkInstance inst = butterfly_network();
  CHECK(in_set(inst, "e5") == std::vector<std::string>{"e2", "e3"});
  CHECK(in_set(inst, "t1") == std::vector<std::string>{"e4", "e7"});
  CHECK(in_set(inst, "t2") == std::vector<std::string>{"e1", "e6"});
  CHECK(in_set(inst, "e1") == std::vector<std::string>{"s1"});
  CHECK_THROWS_AS(in_set(inst, "nope"), std::invalid_argument);
}

TEST_CASE("a source-adjacent edge reads exactly the sources at its tail") {
  NetworkInstance wire = wire_network();
  auto refs = edge_inputs(wire, "e");
  REQUIRE(refs.size() == 1);
  CHECK(refs[0].is_source);
  CHECK(refs[0].id == "s");

  // Non-source-adjacent edges see only edges.
  for (const auto& ref : edge_inputs(butterfly_network(), "e5")) {
    CHECK_FALSE(ref.is_source);
  }
}

TEST_CASE("index instance validation") {
  SUBCASE("single source and terminal") {
    IndexInstance inst;
    inst.sources = {{"s", 1}};
    inst.terminals = {{"t", {"s"}, {}}};
    inst.broadcast_rate = 1;
    CHECK(validate_index(inst).ok);
  }
  SUBCASE("undeclared source reference") {
    IndexInstance inst;
    inst.sources = {{"s", 1}};
    inst.terminals = {{"t", {"ghost"}, {}}};
    inst.broadcast_rate = 1;
    ValidationReport report = validate_index(inst);
    CHECK_FALSE(report.ok);
    CHECK(has_rule(report, "unknown-source"));
  }
  SUBCASE("empty wants") {
    IndexInstance inst;
    inst.sources = {{"s", 1}};
    inst.terminals = {{"t", {}, {"s"}}};
    inst.broadcast_rate = 1;
    CHECK(has_rule(validate_index(inst), "empty-wants"));
  }
  SUBCASE("wanting what you have is a warning, not an error") {
    IndexInstance inst;
    inst.sources = {{"s", 1}};
    inst.terminals = {{"t", {"s"}, {"s"}}};
    inst.broadcast_rate = 0;
    ValidationReport report = validate_index(inst);
    CHECK(report.ok);
    REQUIRE(report.warnings.size() == 1);
    CHECK(report.warnings[0].rule == "wants-has-overlap");
  }
}
