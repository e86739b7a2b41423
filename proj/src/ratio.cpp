#include "citerank/ratio.hpp"

#include <algorithm>
#include <cmath>

#include "citerank/fields.hpp"

namespace citerank {

std::map<std::string, double> compute_t_ratios(
    std::span<const FieldTotalsSeries> series, const std::string& base) {
  const FieldTotalsSeries* base_series = nullptr;
  for (const auto& s : series) {
    if (s.nsf_field == base) {
      base_series = &s;
      break;
    }
  }
  if (base_series == nullptr) {
    throw DomainError("missing_base", "no totals series for base field '" +
                                          base + "'");
  }

  std::map<std::string, double> ratios;
  for (const auto& s : series) {
    if (s.nsf_field == base) continue;
    double sum = 0.0;
    int shared = 0;
    for (const auto& [year, total] : s.points) {
      auto it = base_series->points.find(year);
      if (it == base_series->points.end()) continue;
      if (it->second == 0) {
        throw DomainError("zero_base_total",
                          "base total is zero in " + std::to_string(year));
      }
      sum += static_cast<double>(total) / static_cast<double>(it->second);
      ++shared;
    }
    if (shared == 0) {
      throw DomainError("no_shared_years", s.nsf_field +
                                               " shares no years with " + base);
    }
    ratios[s.nsf_field] = sum / shared;
  }
  ratios[base] = 1.0;
  return ratios;
}

std::vector<AggregatedVector> aggregate_top_vectors(
    std::span<const FieldSnapshot> snapshots, const FieldMapping& mapping) {
  if (snapshots.empty()) return {};

  std::size_t k = snapshots.front().entries.size();
  double window = snapshots.front().window_years;
  std::map<std::pair<std::string, Date>, const FieldSnapshot*> seen;
  for (const auto& snap : snapshots) {
    if (snap.entries.size() != k) {
      throw DomainError("mixed_k",
                        "snapshot " + snap.esi_field + " @ " +
                            snap.snapshot_date.to_string() + " has " +
                            std::to_string(snap.entries.size()) +
                            " entries, expected " + std::to_string(k));
    }
    if (snap.window_years != window) {
      throw DomainError("mixed_window",
                        "snapshot " + snap.esi_field + " @ " +
                            snap.snapshot_date.to_string() +
                            " uses a different citation window");
    }
    auto [it, inserted] =
        seen.emplace(std::pair{snap.esi_field, snap.snapshot_date}, &snap);
    if (!inserted) {
      throw DomainError("duplicate_snapshot",
                        snap.esi_field + " @ " +
                            snap.snapshot_date.to_string() +
                            " appears more than once");
    }
  }

  std::map<std::pair<std::string, Date>, std::vector<std::int64_t>> sums;
  for (const auto& [key, snap] : seen) {
    const std::string& nsf = mapping.nsf_for(key.first);
    auto& values = sums[{nsf, key.second}];
    if (values.empty()) values.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      values[i] += snap->entries[i].citations;
    }
  }

  std::vector<AggregatedVector> out;
  out.reserve(sums.size());
  for (auto& [key, values] : sums) {
    out.push_back({key.first, key.second, std::move(values)});
  }
  return out;
}

HRatios compute_h_ratios(std::span<const AggregatedVector> aggregated,
                         const std::string& base) {
  struct Tally {
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::map<std::string, Tally> tallies;
  for (const auto& vec : aggregated) {
    auto& tally = tallies[vec.nsf_field];
    for (std::int64_t v : vec.values) {
      tally.sum += static_cast<double>(v);
      ++tally.count;
    }
  }

  auto base_it = tallies.find(base);
  if (base_it == tallies.end() || base_it->second.count == 0) {
    throw DomainError("missing_base",
                      "no aggregated vectors for base field '" + base + "'");
  }
  double base_level = base_it->second.sum / base_it->second.count;
  if (base_level == 0.0) {
    throw DomainError("zero_base_level", "base citation level is zero");
  }

  HRatios out;
  for (const auto& [field, tally] : tallies) {
    if (tally.count == 0) continue;
    double level = tally.sum / tally.count;
    out.levels[field] = level;
    out.ratios[field] = field == base ? 1.0 : level / base_level;
  }
  return out;
}

DivisorPreset preset_from_name(std::string_view name) {
  if (name == "table2") return DivisorPreset::kTable2;
  if (name == "two_thirds") return DivisorPreset::kTwoThirds;
  if (name == "appendix") return DivisorPreset::kAppendix;
  if (name == "data") return DivisorPreset::kData;
  throw DomainError("unknown_preset",
                    "unknown divisor preset '" + std::string(name) + "'");
}

std::string_view preset_name(DivisorPreset preset) {
  switch (preset) {
    case DivisorPreset::kTable2:
      return "table2";
    case DivisorPreset::kTwoThirds:
      return "two_thirds";
    case DivisorPreset::kAppendix:
      return "appendix";
    case DivisorPreset::kData:
      return "data";
  }
  throw DomainError("unknown_preset", "unknown divisor preset value");
}

std::map<std::string, Rational> build_divisor_table(
    DivisorPreset preset, const FieldMapping& mapping,
    const std::map<std::string, double>* h_ratios,
    const DivisorOptions& options) {
  std::map<std::string, Rational> out;
  switch (preset) {
    case DivisorPreset::kTable2:
      for (const auto& [esi, nsf] : mapping.pairs) {
        auto it = fields::table2_divisors().find(esi);
        if (it == fields::table2_divisors().end()) {
          throw DomainError("missing_ratio",
                            "no table2 divisor for '" + esi + "'");
        }
        out.emplace(esi, it->second);
      }
      return out;

    case DivisorPreset::kTwoThirds:
      // H(base) is pinned to 1 by definition, so the base group keeps the
      // identity divisor rather than 2/3.
      for (const auto& [esi, nsf] : mapping.pairs) {
        auto it = fields::reference_t_ratios().find(nsf);
        if (it == fields::reference_t_ratios().end()) {
          throw DomainError("missing_ratio",
                            "no reference T ratio for '" + nsf + "'");
        }
        out.emplace(esi, nsf == fields::base_nsf_field()
                             ? Rational(1)
                             : Rational(2 * it->second, 3));
      }
      return out;

    case DivisorPreset::kAppendix:
      for (const auto& [esi, nsf] : mapping.pairs) {
        auto it = fields::appendix_divisors().find(esi);
        if (it == fields::appendix_divisors().end()) {
          throw DomainError("missing_ratio",
                            "no appendix divisor for '" + esi + "'");
        }
        out.emplace(esi, it->second);
      }
      return out;

    case DivisorPreset::kData: {
      if (h_ratios == nullptr) {
        throw DomainError("missing_ratio",
                          "the data preset needs measured h_ratios");
      }
      std::int64_t den = options.data_denominator;
      if (den < 1) {
        throw DomainError("out_of_range",
                          "data_denominator must be positive");
      }
      for (const auto& [esi, nsf] : mapping.pairs) {
        auto it = h_ratios->find(nsf);
        if (it == h_ratios->end()) {
          throw DomainError("missing_ratio",
                            "no measured H ratio for '" + nsf + "'");
        }
        std::int64_t num = std::llround(it->second * static_cast<double>(den));
        if (num < 1) {
          throw DomainError("out_of_range",
                            "H ratio for '" + nsf + "' is not positive");
        }
        out.emplace(esi, Rational(num, den));
      }
      return out;
    }
  }
  throw DomainError("unknown_preset", "unknown divisor preset value");
}

}  // namespace citerank
