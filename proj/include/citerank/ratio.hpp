// The two ratio tables at the heart of the method: T (per broad field, total
// citations relative to mathematics, averaged over years) and H (top-ten
// citation level relative to mathematics, pooled over monthly snapshots),
// plus the divisor presets used to normalize individual citation counts.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citerank/rational.hpp"
#include "citerank/types.hpp"

namespace citerank {

/// Elementwise sum of the top-k citation vectors of all ESI fields mapped to
/// one broad field at one snapshot date.
struct AggregatedVector {
  std::string nsf_field;
  Date snapshot_date;
  std::vector<std::int64_t> values;

  bool operator==(const AggregatedVector&) const = default;
};

/// Mean over the years shared with the base series of
/// total(field, y) / total(base, y). The base field maps to exactly 1.
std::map<std::string, double> compute_t_ratios(
    std::span<const FieldTotalsSeries> series, const std::string& base);

/// Sums same-date citation vectors across ESI fields sharing an NSF target.
/// All snapshots must agree on list length and window; each (field, date)
/// may appear once. Output sorted by (nsf_field, date).
std::vector<AggregatedVector> aggregate_top_vectors(
    std::span<const FieldSnapshot> snapshots, const FieldMapping& mapping);

struct HRatios {
  std::map<std::string, double> levels;  // pooled mean citation level
  std::map<std::string, double> ratios;  // level / base level; base exactly 1
};

HRatios compute_h_ratios(std::span<const AggregatedVector> aggregated,
                         const std::string& base);

enum class DivisorPreset { kTable2, kTwoThirds, kAppendix, kData };

/// Accepts "table2", "two_thirds", "appendix", "data"; throws
/// DomainError("unknown_preset") otherwise.
DivisorPreset preset_from_name(std::string_view name);
std::string_view preset_name(DivisorPreset preset);

struct DivisorOptions {
  /// Denominator the measured ratios are snapped to for the `data` preset.
  std::int64_t data_denominator = 1000;
};

/// One exact positive rational per ESI field in the mapping. The `data`
/// preset needs measured h_ratios; the other three are self-contained.
std::map<std::string, Rational> build_divisor_table(
    DivisorPreset preset, const FieldMapping& mapping,
    const std::map<std::string, double>* h_ratios = nullptr,
    const DivisorOptions& options = {});

}  // namespace citerank
