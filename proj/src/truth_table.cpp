#include "ncic/truth_table.hpp"

#include <stdexcept>
#include <string>

namespace ncic {

namespace {
constexpr std::uint64_t kProductCap = std::uint64_t{1} << 62;
}

MessageSpace space_for_rate(const Rational& rate, std::uint32_t block_length) {
  if (rate.is_negative()) {
    throw std::invalid_argument("negative rate " + rate.str());
  }
  Rational bits = rate * Rational(static_cast<std::int64_t>(block_length));
  if (!bits.is_integer()) {
    throw std::invalid_argument("rate " + rate.str() + " times block length " +
                                std::to_string(block_length) + " is not an integer bit width");
  }
  if (bits.num() > kMaxWidthBits) {
    throw std::invalid_argument("message space of " + std::to_string(bits.num()) +
                                " bits is unsupported");
  }
  return MessageSpace{static_cast<std::uint32_t>(bits.num())};
}

std::uint64_t space_product(std::span<const MessageSpace> spaces) {
  std::uint64_t product = 1;
  for (const MessageSpace& space : spaces) {
    std::uint64_t card = space.cardinality();
    if (product > kProductCap / card) {
      throw std::overflow_error("message space product exceeds 2^62");
    }
    product *= card;
  }
  return product;
}

std::uint64_t pack_values(std::span<const std::uint64_t> values,
                          std::span<const MessageSpace> spaces) {
  if (values.size() != spaces.size()) {
    throw std::invalid_argument("value tuple arity mismatch");
  }
  std::uint64_t packed = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t card = spaces[i].cardinality();
    if (values[i] >= card) {
      throw std::invalid_argument("value " + std::to_string(values[i]) +
                                  " outside message space of width " +
                                  std::to_string(spaces[i].width_bits));
    }
    packed = packed * card + values[i];
  }
  return packed;
}

void unpack_values(std::uint64_t packed, std::span<const MessageSpace> spaces,
                   std::span<std::uint64_t> out) {
  if (out.size() != spaces.size()) {
    throw std::invalid_argument("output tuple arity mismatch");
  }
  for (std::size_t i = spaces.size(); i-- > 0;) {
    std::uint64_t card = spaces[i].cardinality();
    out[i] = packed % card;
    packed /= card;
  }
  if (packed != 0) {
    throw std::invalid_argument("row index outside table domain");
  }
}

TruthTable::TruthTable(std::vector<MessageSpace> inputs, MessageSpace output,
                       std::vector<std::uint64_t> entries)
    : inputs_(std::move(inputs)), output_(output), entries_(std::move(entries)) {
  std::uint64_t rows = space_product(inputs_);
  if (rows > kMaxTableRows) {
    throw BudgetExceededError("truth table would need " + std::to_string(rows) + " rows");
  }
  if (entries_.size() != rows) {
    throw std::invalid_argument("truth table has " + std::to_string(entries_.size()) +
                                " entries, expected " + std::to_string(rows));
  }
  std::uint64_t out_card = output_.cardinality();
  for (std::uint64_t value : entries_) {
    if (value >= out_card) {
      throw std::invalid_argument("truth table entry " + std::to_string(value) +
                                  " outside output space of width " +
                                  std::to_string(output_.width_bits));
    }
  }
}

}  // namespace ncic
