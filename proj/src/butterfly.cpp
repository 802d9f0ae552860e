#include "ncic/butterfly.hpp"

namespace ncic {

namespace {

const MessageSpace kBit{1};

TruthTable identity1() { return TruthTable({kBit}, kBit, {0, 1}); }
TruthTable xor2() { return TruthTable({kBit, kBit}, kBit, {0, 1, 1, 0}); }
TruthTable project2(std::size_t keep) {
  // (a, b) -> a or b
  return keep == 0 ? TruthTable({kBit, kBit}, kBit, {0, 0, 1, 1})
                   : TruthTable({kBit, kBit}, kBit, {0, 1, 0, 1});
}

}  // namespace

NetworkInstance butterfly_network() {
  NetworkInstance inst;
  inst.nodes = {"s1", "s2", "u", "v", "t1", "t2"};
  inst.edges = {
      {"e1", "s1", "t2", 1}, {"e2", "s1", "u", 1}, {"e3", "s2", "u", 1},
      {"e4", "s2", "t1", 1}, {"e5", "u", "v", 1},  {"e6", "v", "t2", 1},
      {"e7", "v", "t1", 1},
  };
  inst.sources = {{"s1", "s1", 1}, {"s2", "s2", 1}};
  inst.terminals = {{"t1", "t1", {"s1"}}, {"t2", "t2", {"s2"}}};
  return inst;
}

NetworkCode butterfly_xor_code() {
  NetworkCode code;
  code.block_length = 1;
  code.encoders.emplace("e1", identity1());
  code.encoders.emplace("e2", identity1());
  code.encoders.emplace("e3", identity1());
  code.encoders.emplace("e4", identity1());
  code.encoders.emplace("e5", xor2());  // inputs (e2, e3)
  code.encoders.emplace("e6", identity1());
  code.encoders.emplace("e7", identity1());
  code.decoders.emplace("t1", xor2());  // inputs (e4, e7), outputs s1
  code.decoders.emplace("t2", xor2());  // inputs (e1, e6), outputs s2
  return code;
}

NetworkInstance collocated_butterfly_network() {
  NetworkInstance inst;
  inst.nodes = {"s0", "u", "v", "t1", "t2"};
  inst.edges = {
      {"e1", "s0", "t2", 1}, {"e2", "s0", "u", 1}, {"e3", "s0", "u", 1},
      {"e4", "s0", "t1", 1}, {"e5", "u", "v", 1},  {"e6", "v", "t2", 1},
      {"e7", "v", "t1", 1},
  };
  inst.sources = {{"s1", "s0", 1}, {"s2", "s0", 1}};
  inst.terminals = {{"t1", "t1", {"s1"}}, {"t2", "t2", {"s2"}}};
  return inst;
}

NetworkCode collocated_butterfly_xor_code() {
  NetworkCode code;
  code.block_length = 1;
  // First-hop encoders see (s1, s2) and forward one of them.
  code.encoders.emplace("e1", project2(0));
  code.encoders.emplace("e2", project2(0));
  code.encoders.emplace("e3", project2(1));
  code.encoders.emplace("e4", project2(1));
  code.encoders.emplace("e5", xor2());
  code.encoders.emplace("e6", identity1());
  code.encoders.emplace("e7", identity1());
  code.decoders.emplace("t1", xor2());
  code.decoders.emplace("t2", xor2());
  return code;
}

}  // namespace ncic
