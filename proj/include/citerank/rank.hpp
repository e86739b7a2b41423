// Normalization of per-researcher citation counts by field divisors, the
// merge into one multidisciplinary ranking, impact clusters, and
// leader-coverage statistics.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citerank/rational.hpp"
#include "citerank/types.hpp"

namespace citerank {

struct MergedEntry {
  int global_rank = 0;
  ResearcherRecord record;
  std::int64_t normalized_citations = 0;  // rounded half away from zero
  Rational normalized_exact;              // pre-rounding value
  int cluster_id = 0;
  std::vector<std::string> flags;  // sorted quality-flag codes ("AGG")

  bool operator==(const MergedEntry&) const = default;
};

struct MergedList {
  std::vector<MergedEntry> entries;  // by global rank
  std::string divisor_preset;
  int top_per_field = 0;
};

/// (exact, rounded) normalized score: citations divided by the field's
/// divisor, kept exact, then rounded half away from zero.
std::pair<Rational, std::int64_t> normalize_score(
    const ResearcherRecord& record,
    const std::map<std::string, Rational>& divisors);

struct MergeOptions {
  int top_per_field = 100;
  /// Relative score gap opening a new cluster.
  Rational cluster_epsilon = Rational(1, 200);
  /// Papers-per-year rate at or above which an entry gets the "AGG" flag;
  /// non-positive disables flagging.
  double aggregation_threshold = 100.0;
};

/// Truncates each per-field list to top_per_field, normalizes, concatenates,
/// sorts by (normalized desc, exact desc, name asc, field asc), assigns
/// contiguous global ranks, then clusters and flags.
MergedList merge_rank(std::span<const FieldSnapshot> lists,
                      const std::map<std::string, Rational>& divisors,
                      const MergeOptions& options = {});

/// Reassigns cluster ids in rank order: a new cluster starts when the exact
/// score drops by more than epsilon relative to max(previous score, 1).
void cluster_groups(MergedList& merged,
                    const Rational& epsilon = Rational(1, 200));

int cluster_count(const MergedList& merged);

/// ESI fields whose in-field rank-1 researcher sits within the global top n.
std::set<std::string> leader_coverage(const MergedList& merged, int n);

/// Regroups reference-list rows into per-field lists (the inverse of the
/// merge step), ready to feed back through merge_rank.
std::vector<FieldSnapshot> regroup_fixture(std::span<const FixtureRow> rows,
                                           Date date = Date{2005, 7, 1});

/// Wraps reference-list rows as a MergedList, taking the printed normalized
/// column as both the exact and the rounded score. Clusters are assigned
/// with the given epsilon.
MergedList fixture_as_merged(std::span<const FixtureRow> rows,
                             const Rational& epsilon = Rational(1, 200));

}  // namespace citerank
