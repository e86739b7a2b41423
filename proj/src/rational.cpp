#include "citerank/rational.hpp"

#include <cctype>
#include <limits>

namespace citerank {

namespace {

std::int64_t checked_narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw DomainError("rational_overflow", "rational exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational Rational::make(i128 num, i128 den) {
  if (den == 0) throw DomainError("zero_denominator", "rational with denominator 0");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational r;
  r.num_ = checked_narrow(num);
  r.den_ = checked_narrow(den);
  return r;
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::from_decimal(std::string_view text) {
  auto fail = [&] {
    throw DomainError("invalid_decimal",
                      "not a decimal literal: '" + std::string(text) + "'");
  };
  if (text.empty()) fail();
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  i128 num = 0;
  i128 den = 1;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c == '.') {
      if (seen_point) fail();
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    any_digit = true;
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
    if (den > std::numeric_limits<std::int64_t>::max() / 10 ||
        num > std::numeric_limits<std::int64_t>::max()) {
      throw DomainError("rational_overflow",
                        "decimal literal out of range: '" + std::string(text) + "'");
    }
  }
  if (!any_digit) fail();
  return make(negative ? -num : num, den);
}

}  // namespace citerank
