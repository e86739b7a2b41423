// Acceptance gate: one check per release criterion, each reported as a
// single [PASS]/[FAIL] line. Exits with the number of failed criteria.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "citerank/fields.hpp"
#include "citerank/indicators.hpp"
#include "citerank/ingest.hpp"
#include "citerank/lawfit.hpp"
#include "citerank/rank.hpp"
#include "citerank/ratio.hpp"
#include "citerank/report.hpp"

using namespace citerank;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string data_path(const std::string& name) {
  return std::string(CITERANK_DATA_DIR) + "/" + name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<FixtureRow> load_fixture() {
  std::istringstream in(slurp(data_path("appendix_top200.csv")));
  return parse_appendix_fixture(in);
}

std::vector<FitPair> reference_pairs() {
  std::vector<FitPair> pairs;
  for (const auto& [field, t, h] : fields::reference_th_pairs()) {
    pairs.push_back({field, double(t), double(h)});
  }
  return pairs;
}

template <typename T>
std::vector<double> fractional_ranks(const std::vector<T>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[b] < values[a];
                   });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && !(values[order[j]] < values[order[i]]) &&
           !(values[order[i]] < values[order[j]])) {
      ++j;
    }
    double averaged = double(i + 1 + j) / 2.0;  // mean of ranks i+1 .. j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = averaged;
    i = j;
  }
  return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  double n = double(a.size());
  double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double da = a[i] - mean_a;
    double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  return cov / std::sqrt(var_a * var_b);
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

Outcome c1_alpha_fit() {
  auto pairs = reference_pairs();
  fit_alpha(pairs);  // warm up caches before timing
  double best_us = 1e18;
  double alpha = 0.0;
  for (int i = 0; i < 20; ++i) {
    auto start = std::chrono::steady_clock::now();
    alpha = fit_alpha(pairs).alpha;
    auto stop = std::chrono::steady_clock::now();
    best_us = std::min(
        best_us,
        std::chrono::duration<double, std::micro>(stop - start).count());
  }
  bool pass = std::abs(alpha - 0.82) <= 0.01 && best_us < 1000.0;
  return {pass, fmt("alpha = %.6f (target 0.82 +/- 0.01), fit in %.1f us",
                    alpha, best_us)};
}

Outcome c2_two_thirds_rule() {
  double max_within = 0.0;
  double miss_at_78 = 0.0;
  bool pass = true;
  for (const auto& [field, t, h] : fields::reference_th_pairs()) {
    Rational gap = predict_two_thirds(Rational(t)) - Rational(h);
    double abs_gap = std::abs(gap.to_double());
    if (t <= 19) {
      max_within = std::max(max_within, abs_gap);
      if (abs_gap > 1.0) pass = false;
    } else {
      miss_at_78 = abs_gap;
      if (abs_gap <= 1.0) pass = false;
    }
  }
  return {pass, fmt("max |2T/3 - H| = %.4f over T <= 19; the T = 78 pair "
                    "misses by %.0f",
                    max_within, miss_at_78)};
}

Outcome c3_power_residuals() {
  double max_abs = 0.0;
  for (const auto& [field, t, h] : fields::reference_th_pairs()) {
    max_abs =
        std::max(max_abs, std::abs(double(h) - std::pow(double(t), 0.82)));
  }
  return {max_abs <= 1.5, fmt("max |T^0.82 - H| = %.4f (bound 1.5)", max_abs)};
}

Outcome c4_list_reproduction() {
  auto rows = load_fixture();
  auto lists = regroup_fixture(rows);
  const auto& divisors = fields::appendix_divisors();

  auto start = std::chrono::steady_clock::now();
  auto merged = merge_rank(lists, divisors);
  auto stop = std::chrono::steady_clock::now();
  double merge_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();

  // The list reuses short names across fields (two distinct researchers can
  // both print as "WANG, J"), so rows align on (name, field).
  std::map<std::pair<std::string, std::string>, const MergedEntry*> by_key;
  for (const auto& entry : merged.entries) {
    by_key[{entry.record.name, entry.record.esi_field}] = &entry;
  }

  std::int64_t max_diff = 0;
  int within_one = 0;
  std::vector<std::int64_t> printed;
  std::vector<Rational> recomputed;
  for (const auto& row : rows) {
    auto it = by_key.find({row.record.name, row.record.esi_field});
    if (it == by_key.end()) {
      return {false, "researcher " + row.record.name + " lost in the merge"};
    }
    std::int64_t diff =
        std::abs(it->second->normalized_citations - row.normalized);
    max_diff = std::max(max_diff, diff);
    if (diff <= 1) ++within_one;
    printed.push_back(row.normalized);
    recomputed.push_back(it->second->normalized_exact);
  }
  double share = double(within_one) / double(rows.size());
  double rho = pearson(fractional_ranks(printed), fractional_ranks(recomputed));

  bool pass = merged.entries.size() == 200 && max_diff <= 2 && share >= 0.95 &&
              rho >= 0.999 && merge_ms < 1000.0;
  return {pass, fmt("max diff %lld, within-1 share %.1f%%, spearman %.6f, "
                    "merge in %.1f ms",
                    static_cast<long long>(max_diff), 100.0 * share, rho,
                    merge_ms)};
}

Outcome c5_leader_coverage() {
  auto merged = merge_rank(regroup_fixture(load_fixture()),
                           fields::appendix_divisors());
  auto at10 = leader_coverage(merged, 10);
  auto at50 = leader_coverage(merged, 50);
  auto at100 = leader_coverage(merged, 100);
  const std::set<std::string> want10 = {"Materials science", "Space science",
                                       "Chemistry", "Mathematics", "Physics"};
  bool pass = at10 == want10 && at50.size() == 7 && at100.size() == 10;
  return {pass, fmt("%zu / %zu / %zu fields at n = 10 / 50 / 100, top-10 set "
                    "%s",
                    at10.size(), at50.size(), at100.size(),
                    at10 == want10 ? "as expected" : "unexpected")};
}

Outcome c6_cpp_column() {
  auto rows = load_fixture();
  std::int64_t max_cents = 0;
  for (const auto& row : rows) {
    std::int64_t computed = cpp_cents(row.record.citations, row.record.papers);
    max_cents = std::max(max_cents, std::abs(computed - row.cpp_cents));
  }
  return {max_cents <= 1,
          fmt("max CPP deviation %.2f over 200 rows (bound 0.01)",
              double(max_cents) / 100.0)};
}

Outcome c7_h_ratio_pipeline() {
  std::istringstream in(slurp(data_path("snapshots_2003_2005.csv")));
  auto snapshots = parse_snapshots(in);
  auto aggregated =
      aggregate_top_vectors(snapshots, FieldMapping{fields::default_mapping()});
  auto h = compute_h_ratios(aggregated, fields::base_nsf_field());

  const std::map<std::string, std::int64_t> want = {
      {"Biology", 5},
      {"Biomedical research", 37},
      {"Chemistry", 10},
      {"Clinical medicine", 37},
      {"Earth and space sciences", 6},
      {"Engineering and technology", 3},
      {"Mathematics", 1},
      {"Physics", 12},
      {"Social/behavioral sciences", 9},
  };
  int matched = 0;
  for (const auto& [field, rounded] : want) {
    auto it = h.ratios.find(field);
    if (it != h.ratios.end() && std::llround(it->second) == rounded) {
      ++matched;
    }
  }
  bool pass = matched == int(want.size()) && h.ratios.size() == want.size();
  return {pass, fmt("%d of %zu rounded H ratios match the reference column",
                    matched, want.size())};
}

Outcome c8_h_index_oracle() {
  std::mt19937 rng(8675309);
  std::uniform_int_distribution<int> papers_dist(0, 50);
  std::uniform_int_distribution<std::int64_t> count_dist(0, 1000);
  int matched = 0;
  const int trials = 1000;
  for (int trial = 0; trial < trials; ++trial) {
    PaperProfile profile;
    profile.name = "R, X";
    profile.paper_citations.resize(papers_dist(rng));
    for (auto& c : profile.paper_citations) c = count_dist(rng);
    std::sort(profile.paper_citations.rbegin(), profile.paper_citations.rend());

    int oracle = 0;
    for (int h = 0; h <= int(profile.paper_citations.size()); ++h) {
      int qualifying = 0;
      for (std::int64_t c : profile.paper_citations) {
        if (c >= h) ++qualifying;
      }
      if (qualifying >= h) oracle = h;
    }
    if (h_index(profile) == oracle) ++matched;
  }
  return {matched == trials,
          fmt("%d/%d random profiles match the exhaustive oracle", matched,
              trials)};
}

bool ratio_scale_invariance() {
  std::istringstream in(slurp(data_path("nsf_field_totals.csv")));
  auto series = parse_field_totals(in);
  auto base = compute_t_ratios(series, fields::base_nsf_field());
  for (auto& s : series) {
    for (auto& [year, total] : s.points) total *= 3;
  }
  // Totals stay well under 2^53, so the scaled quotients are bit-identical.
  if (compute_t_ratios(series, fields::base_nsf_field()) != base) return false;

  std::istringstream snap_in(slurp(data_path("snapshots_2003_2005.csv")));
  auto snapshots = parse_snapshots(snap_in);
  FieldMapping mapping{fields::default_mapping()};
  auto h1 = compute_h_ratios(aggregate_top_vectors(snapshots, mapping),
                             fields::base_nsf_field());
  for (auto& s : snapshots) {
    for (auto& rec : s.entries) rec.citations *= 2;
  }
  auto h2 = compute_h_ratios(aggregate_top_vectors(snapshots, mapping),
                             fields::base_nsf_field());
  return h1.ratios == h2.ratios;
}

bool merge_divisor_scale_invariance() {
  auto rows = load_fixture();
  auto lists = regroup_fixture(rows);
  auto divisors = fields::appendix_divisors();
  auto merged = merge_rank(lists, divisors);
  for (auto& [field, d] : divisors) d = d * Rational(7);
  auto scaled = merge_rank(lists, divisors);
  if (merged.entries.size() != scaled.entries.size()) return false;
  for (std::size_t i = 0; i < merged.entries.size(); ++i) {
    if (merged.entries[i].record.name != scaled.entries[i].record.name) {
      return false;
    }
  }
  return leader_coverage(merged, 10) == leader_coverage(scaled, 10);
}

bool rounding_conformance() {
  return Rational(4989, 2).round_half_away() == 2495 &&
         Rational(-4989, 2).round_half_away() == -2495 &&
         Rational(8315) / Rational(10, 3) == Rational(4989, 2);
}

bool coverage_monotone() {
  auto merged = merge_rank(regroup_fixture(load_fixture()),
                           fields::appendix_divisors());
  std::set<std::string> prev;
  for (int n = 0; n <= int(merged.entries.size()); ++n) {
    auto cur = leader_coverage(merged, n);
    if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) {
      return false;
    }
    prev = std::move(cur);
  }
  return true;
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), dir).string()] = slurp(entry.path());
    }
  }
  return files;
}

/// Runs every CLI command twice into fresh directories and demands
/// byte-identical artifacts, stdout included.
bool cli_reruns_identical(std::string& problem) {
  fs::path root = fs::temp_directory_path() /
                  ("citerank_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);

  fs::path profiles = root / "profiles.csv";
  {
    std::ofstream out(profiles, std::ios::binary);
    out << "name,paper_id,citations\n"
           "\"INOUE, A\",p1,120\n"
           "\"INOUE, A\",p2,45\n"
           "\"FRENK, CS\",p1,300\n";
  }

  const std::string bin = CITERANK_CLI_BIN;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ratios", "ratios --totals " + data_path("nsf_field_totals.csv") +
                     " --snapshots " + data_path("snapshots_2003_2005.csv")},
      {"hratios", "hratios --snapshots " + data_path("snapshots_2003_2005.csv")},
      {"fit", "fit --pairs " + data_path("table3_pairs.csv")},
      {"rank", "rank --fixture " + data_path("appendix_top200.csv") +
                   " --format json"},
      {"indicators", "indicators --fixture " + data_path("appendix_top200.csv") +
                         " --profiles " + profiles.string()},
      {"report", "report --totals " + data_path("nsf_field_totals.csv") +
                     " --snapshots " + data_path("snapshots_2003_2005.csv") +
                     " --pairs " + data_path("table3_pairs.csv") +
                     " --fixture " + data_path("appendix_top200.csv")},
  };

  bool ok = true;
  for (const auto& [name, args] : commands) {
    // Identical command both times, including --out, so path-bearing
    // artifacts like the manifest must also come out byte-identical.
    fs::path out_dir = root / name;
    fs::create_directories(out_dir);
    std::string cmd = bin + " " + args + " --out " + out_dir.string() +
                      " >" + (out_dir / "stdout.txt").string() +
                      " 2>" + (out_dir / "stderr.txt").string();
    std::map<std::string, std::string> seen;
    for (int attempt = 0; attempt < 2 && ok; ++attempt) {
      int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        problem = name + " exited with a failure";
        ok = false;
        break;
      }
      auto files = dir_contents(out_dir);
      if (attempt == 0) {
        seen = std::move(files);
      } else if (files != seen) {
        problem = name + " artifacts differ between reruns";
        ok = false;
      }
    }
    if (!ok) break;
  }
  fs::remove_all(root);
  return ok;
}

Outcome c9_invariants() {
  std::vector<std::string> failures;
  if (!ratio_scale_invariance()) failures.push_back("ratio scale invariance");
  if (!merge_divisor_scale_invariance()) {
    failures.push_back("merge order under divisor scaling");
  }
  if (!rounding_conformance()) failures.push_back("half-away rounding");
  if (!coverage_monotone()) failures.push_back("monotone leader coverage");
  std::string cli_problem;
  if (!cli_reruns_identical(cli_problem)) failures.push_back(cli_problem);

  if (failures.empty()) {
    return {true, "ratio scaling, merge order, rounding, coverage, and 6 CLI "
                  "rerun checks all hold"};
  }
  std::string detail = "failed:";
  for (const auto& f : failures) detail += " " + f + ";";
  return {false, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"C1 power-law fit", c1_alpha_fit},
      {"C2 two-thirds rule", c2_two_thirds_rule},
      {"C3 power-law residuals", c3_power_residuals},
      {"C4 reference list reproduction", c4_list_reproduction},
      {"C5 leader coverage", c5_leader_coverage},
      {"C6 cpp column", c6_cpp_column},
      {"C7 h-ratio pipeline", c7_h_ratio_pipeline},
      {"C8 h-index oracle", c8_h_index_oracle},
      {"C9 invariant suite", c9_invariants},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL",
                criterion.name, outcome.detail.c_str());
  }
  return failures;
}
