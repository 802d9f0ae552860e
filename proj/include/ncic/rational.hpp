#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ncic {

/// Exact rational number on 64-bit numerator and denominator.
///
/// Values are always normalized: gcd(num, den) == 1 and den > 0. Arithmetic
/// runs through 128-bit intermediates; a result that does not fit back into
/// 64 bits raises std::overflow_error instead of wrapping. No floating point
/// is involved anywhere.
class Rational {
public:
  constexpr Rational() noexcept = default;
  constexpr Rational(std::int64_t value) noexcept : num_(value) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on anything else.
  static Rational parse(const std::string& text);

  /// Exact conversion of a finite double (doubles are dyadic rationals).
  /// Throws std::invalid_argument for non-finite input and std::overflow_error
  /// when the dyadic form does not fit 64/64 bits.
  static Rational from_double(double value);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_negative() const noexcept { return num_ < 0; }

  /// Largest integer <= value.
  std::int64_t floor_int() const noexcept;
  /// Smallest integer >= value.
  std::int64_t ceil_int() const noexcept;

  /// Always "p/q", e.g. "1/1", "-3/4".
  std::string str() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& other) { return *this = *this + other; }
  Rational& operator-=(const Rational& other) { return *this = *this - other; }
  Rational& operator*=(const Rational& other) { return *this = *this * other; }
  Rational& operator/=(const Rational& other) { return *this = *this / other; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

private:
  static Rational from_int128(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace ncic
