// Exact rational arithmetic for field divisors and normalized scores.
// Rankings must be bit-reproducible across platforms, so scores are kept as
// reduced int64 fractions and rounded with a fixed half-away-from-zero rule
// instead of going through floating point.
#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "citerank/errors.hpp"

namespace citerank {

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(runtime/explicit)

  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw DomainError("zero_denominator", "rational with denominator 0");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Parses a plain decimal literal ("78", "10.167", "-0.5") into the exact
  /// fraction it denotes.
  static Rational from_decimal(std::string_view text);

  /// Nearest integer, ties away from zero: 2494.5 -> 2495, -0.5 -> -1.
  std::int64_t round_half_away() const {
    i128 n = num_ < 0 ? -i128(num_) : i128(num_);
    i128 rounded = (2 * n + den_) / (2 * i128(den_));
    return static_cast<std::int64_t>(num_ < 0 ? -rounded : rounded);
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "num/den", or just "num" for integers.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("division_by_zero", "rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend auto operator<=>(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
  }

 private:
  using i128 = __int128;

  static Rational make(i128 num, i128 den);
  void normalize();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace citerank
