#include "ncic/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ncic {

namespace {

using int128 = __int128;
using uint128 = unsigned __int128;

uint128 abs128(int128 v) { return v < 0 ? uint128(-v) : uint128(v); }

uint128 gcd128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr int128 kInt64Min = std::numeric_limits<std::int64_t>::min();
constexpr int128 kInt64Max = std::numeric_limits<std::int64_t>::max();

std::int64_t narrow(int128 v) {
  if (v < kInt64Min || v > kInt64Max) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational Rational::from_int128(int128 num, int128 den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    return Rational();
  }
  uint128 g = gcd128(abs128(num), abs128(den));
  num /= int128(g);
  den /= int128(g);
  Rational r;
  r.num_ = narrow(num);
  r.den_ = narrow(den);
  return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_int128(num, den);
}

Rational Rational::parse(const std::string& text) {
  std::size_t pos = 0;
  auto read_int = [&]() -> std::int64_t {
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw std::invalid_argument("not a rational: '" + text + "'");
    }
    int128 value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > kInt64Max) {
        throw std::overflow_error("rational literal out of range: '" + text + "'");
      }
      ++pos;
    }
    return static_cast<std::int64_t>(negative ? -value : value);
  };

  std::int64_t num = read_int();
  std::int64_t den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = read_int();
  }
  if (pos != text.size()) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  return Rational(num, den);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite number is not a rational");
  }
  if (value == 0.0) {
    return Rational();
  }
  int exp = 0;
  double mantissa = std::frexp(value, &exp);
  // 53 mantissa bits make ldexp(mantissa, 53) an exact integer.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  int shift = exp - 53;
  while (scaled != 0 && (scaled & 1) == 0) {
    scaled >>= 1;
    ++shift;
  }
  if (shift >= 0) {
    if (shift > 62) {
      throw std::overflow_error("number too large for exact rational");
    }
    return from_int128(int128(scaled) << shift, 1);
  }
  if (shift < -62) {
    throw std::overflow_error("number too fine-grained for exact rational");
  }
  return from_int128(scaled, int128(1) << -shift);
}

std::int64_t Rational::floor_int() const noexcept {
  std::int64_t q = num_ / den_;
  std::int64_t r = num_ % den_;
  return r < 0 ? q - 1 : q;
}

std::int64_t Rational::ceil_int() const noexcept {
  std::int64_t q = num_ / den_;
  std::int64_t r = num_ % den_;
  return r > 0 ? q + 1 : q;
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  return from_int128(-int128(num_), den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_int128(int128(a.num_) * b.den_ + int128(b.num_) * a.den_,
                               int128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::from_int128(int128(a.num_) * b.den_ - int128(b.num_) * a.den_,
                               int128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_int128(int128(a.num_) * b.num_, int128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) {
    throw std::invalid_argument("rational division by zero");
  }
  return Rational::from_int128(int128(a.num_) * b.den_, int128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  int128 lhs = int128(a.num_) * b.den_;
  int128 rhs = int128(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace ncic
