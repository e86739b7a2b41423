#include "citerank/types.hpp"

#include <cctype>
#include <cstdio>

namespace citerank {

namespace {

bool is_leap(int year) {
  return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

int days_in_month(int year, int month) {
  static constexpr int lengths[] = {31, 28, 31, 30, 31, 30,
                                    31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap(year)) return 29;
  return lengths[month - 1];
}

int parse_digits(std::string_view text, std::size_t pos, std::size_t count,
                 std::size_t line) {
  int value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    char c = text[pos + i];
    if (c < '0' || c > '9') {
      throw ParseError("invalid_date",
                       "expected YYYY-MM-DD, got '" + std::string(text) + "'",
                       line);
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Date Date::parse(std::string_view text, std::size_t line) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw ParseError("invalid_date",
                     "expected YYYY-MM-DD, got '" + std::string(text) + "'",
                     line);
  }
  Date d;
  d.year = parse_digits(text, 0, 4, line);
  d.month = parse_digits(text, 5, 2, line);
  d.day = parse_digits(text, 8, 2, line);
  if (d.year < 1 || d.month < 1 || d.month > 12 || d.day < 1 ||
      d.day > days_in_month(d.year, d.month)) {
    throw ParseError("invalid_date",
                     "no such calendar date: '" + std::string(text) + "'",
                     line);
  }
  return d;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

const std::string& FieldMapping::nsf_for(const std::string& esi_field) const {
  auto it = pairs.find(esi_field);
  if (it == pairs.end()) {
    throw DomainError("unmapped_field",
                      "no broad field mapped for '" + esi_field + "'");
  }
  return it->second;
}

std::int64_t parse_cents(std::string_view text, std::size_t line) {
  bool negative = false;
  std::string_view rest = text;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  auto bad = [&] {
    throw ParseError("invalid_decimal",
                     "expected a decimal with two fraction digits, got '" +
                         std::string(text) + "'",
                     line);
  };
  std::size_t dot = rest.find('.');
  if (dot == std::string_view::npos || dot == 0 || rest.size() - dot - 1 != 2)
    bad();
  std::int64_t value = 0;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (i == dot) continue;
    char c = rest[i];
    if (c < '0' || c > '9') bad();
    if (value > (INT64_MAX - 9) / 10) bad();
    value = value * 10 + (c - '0');
  }
  return negative ? -value : value;
}

std::string format_cents(std::int64_t cents) {
  std::int64_t mag = cents < 0 ? -cents : cents;
  std::string s = (cents < 0 ? "-" : "") + std::to_string(mag / 100) + ".";
  s.push_back(static_cast<char>('0' + (mag / 10) % 10));
  s.push_back(static_cast<char>('0' + mag % 10));
  return s;
}

std::string normalize_name(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    } else {
      out.push_back(static_cast<char>(std::toupper(uc)));
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace citerank
