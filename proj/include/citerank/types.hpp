// Core domain records shared by the whole pipeline.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "citerank/errors.hpp"

namespace citerank {

/// Citation-window length all bundled snapshot data uses: ten years plus two
/// months.
inline constexpr double kDefaultWindowYears = 10.167;

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  /// Strict ISO-8601 calendar date (YYYY-MM-DD), validated against month
  /// lengths and leap years.
  static Date parse(std::string_view text, std::size_t line = 0);

  std::string to_string() const;

  auto operator<=>(const Date&) const = default;
};

/// One row of a per-field highly cited list.
struct ResearcherRecord {
  std::string name;       // uppercase, single-spaced; "SURNAME, INITIALS"
  std::string esi_field;  // canonical ESI field name
  int rank_in_field = 0;
  std::int64_t papers = 0;
  std::int64_t citations = 0;

  bool operator==(const ResearcherRecord&) const = default;
};

/// A dated top-k list for one ESI field over a moving citation window.
struct FieldSnapshot {
  std::string esi_field;
  Date snapshot_date;
  double window_years = kDefaultWindowYears;
  std::vector<ResearcherRecord> entries;  // ordered by rank_in_field

  bool operator==(const FieldSnapshot&) const = default;
};

/// Yearly total citation counts for one broad (NSF) field.
struct FieldTotalsSeries {
  std::string nsf_field;
  std::map<int, std::int64_t> points;  // year -> total

  bool operator==(const FieldTotalsSeries&) const = default;
};

/// Total mapping from the fine-grained (ESI) fields onto the broad (NSF)
/// fields, 22 -> 9 with the bundled default.
struct FieldMapping {
  std::map<std::string, std::string> pairs;

  const std::string& nsf_for(const std::string& esi_field) const;

  bool operator==(const FieldMapping&) const = default;
};

/// Per-paper citation counts for one researcher.
struct PaperProfile {
  std::string name;
  std::vector<std::int64_t> paper_citations;  // multiset, kept sorted descending

  bool operator==(const PaperProfile&) const = default;
};

/// One parsed row of the bundled 200-entry multidisciplinary reference list.
struct FixtureRow {
  int global_rank = 0;
  ResearcherRecord record;
  std::int64_t normalized = 0;
  std::int64_t cpp_cents = 0;  // citations-per-paper, in hundredths

  bool operator==(const FixtureRow&) const = default;
};

/// Uppercases ASCII and collapses internal whitespace runs to single spaces;
/// commas and initials pass through untouched.
std::string normalize_name(std::string_view raw);

/// Parses a decimal with exactly two fraction digits ("12.69") into
/// hundredths. Throws ParseError("invalid_decimal") otherwise.
std::int64_t parse_cents(std::string_view text, std::size_t line = 0);

/// Renders hundredths back to the two-fraction-digit form: 1269 -> "12.69".
std::string format_cents(std::int64_t cents);

}  // namespace citerank
