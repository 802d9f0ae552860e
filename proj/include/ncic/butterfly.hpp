#pragma once

#include "ncic/code.hpp"
#include "ncic/instance.hpp"

namespace ncic {

/// The classic butterfly network: sources s1, s2 (one bit each), terminals
/// t1 (wants s1) and t2 (wants s2), seven unit-capacity edges e1..e7 with
/// the bottleneck e5 between the two relay nodes.
NetworkInstance butterfly_network();

/// The standard block-length-1 xor code for the butterfly: e1, e2 forward
/// s1; e3, e4 forward s2; e5, e6, e7 carry s1 xor s2; each terminal xors its
/// two incoming edges. Zero error on all four realizations.
NetworkCode butterfly_xor_code();

/// The butterfly with both sources attached to a single node (and the four
/// first-hop edges leaving it), for the collocated two-phase construction.
NetworkInstance collocated_butterfly_network();

/// The xor code adapted to the collocated layout: the first-hop encoders
/// take both sources and project the one they forward.
NetworkCode collocated_butterfly_xor_code();

}  // namespace ncic
