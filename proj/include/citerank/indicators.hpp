// Per-researcher indicators: citations per paper, the h-index, citations per
// "meaningful" paper, and the papers-per-year aggregation check.
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "citerank/types.hpp"

namespace citerank {

/// citations/papers in hundredths, rounded half away from zero. papers must
/// be positive.
std::int64_t cpp_cents(std::int64_t citations, std::int64_t papers);

/// Largest h such that at least h papers have at least h citations each.
int h_index(const PaperProfile& profile);

enum class CpmpMode { kFixedThreshold, kHIndex };

/// Accepts "fixed" and "h-index"; throws DomainError("unknown_mode")
/// otherwise.
CpmpMode cpmp_mode_from_name(std::string_view name);
std::string_view cpmp_mode_name(CpmpMode mode);

/// Mean citations over the "meaningful" papers: those with at least
/// `threshold` citations (fixed mode), or the h most-cited ones (h-index
/// mode). nullopt when the meaningful set is empty.
std::optional<double> cpmp(const PaperProfile& profile, CpmpMode mode,
                           std::int64_t threshold = 0);

struct AggregationCheck {
  bool flagged = false;
  double papers_per_year = 0.0;
};

/// Flags a paper count whose per-year rate reaches the threshold; the rate
/// is reported either way.
AggregationCheck flag_aggregation(std::int64_t papers, double window_years,
                                  double threshold = 100.0);

}  // namespace citerank
