#include "citerank/rank.hpp"

#include <algorithm>
#include <tuple>

#include "citerank/indicators.hpp"

namespace citerank {

std::pair<Rational, std::int64_t> normalize_score(
    const ResearcherRecord& record,
    const std::map<std::string, Rational>& divisors) {
  auto it = divisors.find(record.esi_field);
  if (it == divisors.end()) {
    throw DomainError("missing_divisor",
                      "no divisor for field '" + record.esi_field + "'");
  }
  Rational exact = Rational(record.citations) / it->second;
  return {exact, exact.round_half_away()};
}

MergedList merge_rank(std::span<const FieldSnapshot> lists,
                      const std::map<std::string, Rational>& divisors,
                      const MergeOptions& options) {
  if (options.top_per_field < 1) {
    throw DomainError("out_of_range", "top_per_field must be at least 1");
  }

  MergedList merged;
  merged.top_per_field = options.top_per_field;
  for (const FieldSnapshot& list : lists) {
    std::set<std::string> names;
    int prev_rank = 0;
    std::size_t taken = 0;
    for (const ResearcherRecord& rec : list.entries) {
      if (rec.rank_in_field <= prev_rank) {
        throw DomainError("unsorted_list",
                          "list for " + list.esi_field +
                              " is not sorted by in-field rank");
      }
      prev_rank = rec.rank_in_field;
      if (!names.insert(rec.name).second) {
        throw DomainError("duplicate_researcher",
                          rec.name + " appears twice in " + list.esi_field);
      }
      if (taken == static_cast<std::size_t>(options.top_per_field)) continue;
      ++taken;

      MergedEntry entry;
      entry.record = rec;
      std::tie(entry.normalized_exact, entry.normalized_citations) =
          normalize_score(rec, divisors);
      if (options.aggregation_threshold > 0.0) {
        AggregationCheck check = flag_aggregation(
            rec.papers, list.window_years, options.aggregation_threshold);
        if (check.flagged) entry.flags.push_back("AGG");
      }
      merged.entries.push_back(std::move(entry));
    }
  }

  std::sort(merged.entries.begin(), merged.entries.end(),
            [](const MergedEntry& a, const MergedEntry& b) {
              if (a.normalized_citations != b.normalized_citations)
                return a.normalized_citations > b.normalized_citations;
              if (a.normalized_exact != b.normalized_exact)
                return a.normalized_exact > b.normalized_exact;
              return std::tie(a.record.name, a.record.esi_field) <
                     std::tie(b.record.name, b.record.esi_field);
            });
  int rank = 0;
  for (MergedEntry& entry : merged.entries) entry.global_rank = ++rank;

  cluster_groups(merged, options.cluster_epsilon);
  return merged;
}

void cluster_groups(MergedList& merged, const Rational& epsilon) {
  if (epsilon < Rational(0)) {
    throw DomainError("negative_epsilon", "cluster epsilon must be >= 0");
  }
  int cluster = 0;
  const Rational* prev = nullptr;
  for (MergedEntry& entry : merged.entries) {
    if (prev == nullptr) {
      cluster = 1;
    } else {
      Rational reference = std::max(*prev, Rational(1));
      if (*prev - entry.normalized_exact > epsilon * reference) ++cluster;
    }
    entry.cluster_id = cluster;
    prev = &entry.normalized_exact;
  }
}

int cluster_count(const MergedList& merged) {
  return merged.entries.empty() ? 0 : merged.entries.back().cluster_id;
}

std::set<std::string> leader_coverage(const MergedList& merged, int n) {
  std::set<std::string> fields;
  for (const MergedEntry& entry : merged.entries) {
    if (entry.global_rank > n) break;
    if (entry.record.rank_in_field == 1) fields.insert(entry.record.esi_field);
  }
  return fields;
}

std::vector<FieldSnapshot> regroup_fixture(std::span<const FixtureRow> rows,
                                           Date date) {
  std::map<std::string, FieldSnapshot> lists;
  for (const FixtureRow& row : rows) {
    auto& list = lists[row.record.esi_field];
    list.esi_field = row.record.esi_field;
    list.snapshot_date = date;
    list.entries.push_back(row.record);
  }
  std::vector<FieldSnapshot> out;
  out.reserve(lists.size());
  for (auto& [_, list] : lists) {
    std::sort(list.entries.begin(), list.entries.end(),
              [](const ResearcherRecord& a, const ResearcherRecord& b) {
                return a.rank_in_field < b.rank_in_field;
              });
    out.push_back(std::move(list));
  }
  return out;
}

MergedList fixture_as_merged(std::span<const FixtureRow> rows,
                             const Rational& epsilon) {
  MergedList merged;
  merged.entries.reserve(rows.size());
  int max_field_rank = 0;
  for (const FixtureRow& row : rows) {
    MergedEntry entry;
    entry.global_rank = row.global_rank;
    entry.record = row.record;
    entry.normalized_citations = row.normalized;
    entry.normalized_exact = Rational(row.normalized);
    merged.entries.push_back(std::move(entry));
    max_field_rank = std::max(max_field_rank, row.record.rank_in_field);
  }
  std::sort(merged.entries.begin(), merged.entries.end(),
            [](const MergedEntry& a, const MergedEntry& b) {
              return a.global_rank < b.global_rank;
            });
  merged.top_per_field = max_field_rank;
  cluster_groups(merged, epsilon);
  return merged;
}

}  // namespace citerank
