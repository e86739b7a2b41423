#include "citerank/indicators.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "citerank/rational.hpp"

namespace citerank {

std::int64_t cpp_cents(std::int64_t citations, std::int64_t papers) {
  if (papers <= 0) {
    throw DomainError("zero_papers",
                      "citations per paper needs a positive paper count");
  }
  return Rational(citations * 100, papers).round_half_away();
}

namespace {

std::vector<std::int64_t> sorted_desc(const PaperProfile& profile) {
  std::vector<std::int64_t> counts = profile.paper_citations;
  if (!std::is_sorted(counts.begin(), counts.end(), std::greater<>())) {
    std::sort(counts.begin(), counts.end(), std::greater<>());
  }
  return counts;
}

int h_of(const std::vector<std::int64_t>& desc) {
  // With counts sorted descending, h is the longest prefix whose i-th
  // element (1-based) is still >= i.
  int h = 0;
  for (std::size_t i = 0; i < desc.size(); ++i) {
    if (desc[i] >= static_cast<std::int64_t>(i) + 1) {
      h = static_cast<int>(i) + 1;
    } else {
      break;
    }
  }
  return h;
}

}  // namespace

int h_index(const PaperProfile& profile) { return h_of(sorted_desc(profile)); }

CpmpMode cpmp_mode_from_name(std::string_view name) {
  if (name == "fixed") return CpmpMode::kFixedThreshold;
  if (name == "h-index") return CpmpMode::kHIndex;
  throw DomainError("unknown_mode",
                    "unknown CPMP mode '" + std::string(name) + "'");
}

std::string_view cpmp_mode_name(CpmpMode mode) {
  return mode == CpmpMode::kFixedThreshold ? "fixed" : "h-index";
}

std::optional<double> cpmp(const PaperProfile& profile, CpmpMode mode,
                           std::int64_t threshold) {
  std::int64_t sum = 0;
  std::size_t count = 0;
  if (mode == CpmpMode::kFixedThreshold) {
    if (threshold < 0) {
      throw DomainError("negative_threshold",
                        "CPMP threshold must be non-negative");
    }
    for (std::int64_t c : profile.paper_citations) {
      if (c >= threshold) {
        sum += c;
        ++count;
      }
    }
  } else {
    std::vector<std::int64_t> desc = sorted_desc(profile);
    count = static_cast<std::size_t>(h_of(desc));
    for (std::size_t i = 0; i < count; ++i) sum += desc[i];
  }
  if (count == 0) return std::nullopt;
  return static_cast<double>(sum) / static_cast<double>(count);
}

AggregationCheck flag_aggregation(std::int64_t papers, double window_years,
                                  double threshold) {
  if (window_years <= 0.0) {
    throw DomainError("nonpositive_window",
                      "citation window must be positive");
  }
  AggregationCheck check;
  check.papers_per_year = static_cast<double>(papers) / window_years;
  check.flagged = check.papers_per_year >= threshold;
  return check;
}

}  // namespace citerank
