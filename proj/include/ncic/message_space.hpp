#pragma once

#include <compare>
#include <cstdint>

#include "ncic/rational.hpp"

namespace ncic {

/// Widest message space we can represent with 64-bit values.
inline constexpr std::uint32_t kMaxWidthBits = 62;

/// The set of messages [0, 2^width_bits). Width zero is the one-message space.
struct MessageSpace {
  std::uint32_t width_bits = 0;

  std::uint64_t cardinality() const noexcept { return std::uint64_t{1} << width_bits; }

  friend auto operator<=>(const MessageSpace&, const MessageSpace&) = default;
};

/// Space carrying rate * block_length bits. The product must be a nonnegative
/// integer; anything else is a hard construction error, not a rounding.
MessageSpace space_for_rate(const Rational& rate, std::uint32_t block_length);

}  // namespace ncic
