#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ncic/errors.hpp"
#include "ncic/message_space.hpp"

namespace ncic {

/// Hard cap on materialized table rows (memory guard, not a tolerance).
inline constexpr std::uint64_t kMaxTableRows = std::uint64_t{1} << 26;

/// Product of space cardinalities; throws std::overflow_error past 2^62.
std::uint64_t space_product(std::span<const MessageSpace> spaces);

/// Mixed-radix row index for a value tuple: first value is most significant.
/// This is the packing rule used by every table in the project and by the
/// on-disk code format.
std::uint64_t pack_values(std::span<const std::uint64_t> values,
                          std::span<const MessageSpace> spaces);

/// Inverse of pack_values; `out` must have one slot per space.
void unpack_values(std::uint64_t packed, std::span<const MessageSpace> spaces,
                   std::span<std::uint64_t> out);

/// A total function from a tuple of finite message spaces to one output
/// space, stored row-major over the mixed-radix row index.
class TruthTable {
public:
  TruthTable(std::vector<MessageSpace> inputs, MessageSpace output,
             std::vector<std::uint64_t> entries);

  /// Builds a table by evaluating `fn` on every input tuple in row order.
  template <typename Fn>
  static TruthTable tabulate(std::vector<MessageSpace> inputs, MessageSpace output, Fn&& fn) {
    std::uint64_t rows = space_product(inputs);
    if (rows > kMaxTableRows) {
      throw BudgetExceededError("truth table would need " + std::to_string(rows) + " rows");
    }
    std::vector<std::uint64_t> entries;
    entries.reserve(rows);
    std::vector<std::uint64_t> values(inputs.size());
    for (std::uint64_t row = 0; row < rows; ++row) {
      unpack_values(row, inputs, values);
      entries.push_back(fn(std::span<const std::uint64_t>(values)));
    }
    return TruthTable(std::move(inputs), output, std::move(entries));
  }

  const std::vector<MessageSpace>& input_spaces() const noexcept { return inputs_; }
  const MessageSpace& output_space() const noexcept { return output_; }
  const std::vector<std::uint64_t>& entries() const noexcept { return entries_; }
  std::uint64_t rows() const noexcept { return entries_.size(); }

  std::uint64_t eval_row(std::uint64_t row) const { return entries_.at(row); }
  std::uint64_t eval(std::span<const std::uint64_t> values) const {
    return entries_[pack_values(values, inputs_)];
  }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
  std::vector<MessageSpace> inputs_;
  MessageSpace output_;
  std::vector<std::uint64_t> entries_;
};

}  // namespace ncic
