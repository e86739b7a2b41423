// citerank: derives cross-field citation ratio tables, fits H = T^alpha,
// normalizes per-field citation lists, and merges them into one ranked,
// clustered, quality-flagged list of highly cited researchers.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "citerank/fields.hpp"
#include "citerank/indicators.hpp"
#include "citerank/ingest.hpp"
#include "citerank/lawfit.hpp"
#include "citerank/rank.hpp"
#include "citerank/ratio.hpp"
#include "citerank/report.hpp"

namespace {

using namespace citerank;

struct Options {
  std::string snapshots;
  std::string totals;
  std::string mapping;
  std::string divisors;
  std::string pairs;
  std::string fixture;
  std::string profiles;
  std::string preset = "appendix";
  int top_per_field = 100;
  std::string epsilon = "0.005";
  std::string cpmp_mode = "h-index";
  std::int64_t cpmp_threshold = 0;
  double agg_threshold = 100.0;
  double window = kDefaultWindowYears;
  std::int64_t data_denominator = 1000;
  std::string format = "csv";
  std::string out_dir = ".";
};

/// Tracks every file read and written so `report` can hash them all into
/// the manifest.
struct RunContext {
  const Options& opts;
  std::vector<ManifestFile> inputs;
  std::vector<ManifestFile> outputs;

  std::string load(const std::string& role, const std::string& path) {
    std::string bytes = read_file(path);
    inputs.push_back({role, path, sha256_hex(bytes)});
    return bytes;
  }

  void write(const std::string& name, const std::string& content) {
    std::filesystem::path path = std::filesystem::path(opts.out_dir) / name;
    atomic_write(path, content);
    outputs.push_back({name, path.string(), sha256_hex(content)});
  }
};

void add_common_flags(CLI::App* cmd, Options& opts) {
  cmd->add_option("--snapshots", opts.snapshots,
                  "Snapshot lists CSV (date,esi_field,rank,name,papers,citations)");
  cmd->add_option("--totals", opts.totals,
                  "Field totals CSV (year,nsf_field,total_citations)");
  cmd->add_option("--mapping", opts.mapping,
                  "ESI-to-NSF mapping CSV; the bundled default when omitted");
  cmd->add_option("--divisors", opts.divisors,
                  "Divisor table CSV (esi_field,divisor_num,divisor_den); "
                  "overrides --preset");
  cmd->add_option("--pairs", opts.pairs, "Fit input CSV (field,T,H)");
  cmd->add_option("--fixture", opts.fixture,
                  "Reference list CSV "
                  "(rank,name,normalized,field,field_rank,papers,citations,cpp)");
  cmd->add_option("--profiles", opts.profiles,
                  "Paper profiles CSV (name,paper_id,citations)");
  cmd->add_option("--preset", opts.preset,
                  "Divisor preset: table2, two_thirds, appendix, data");
  cmd->add_option("--top-per-field", opts.top_per_field,
                  "Entries kept per field before merging");
  cmd->add_option("--epsilon", opts.epsilon,
                  "Relative score gap that opens a new cluster (decimal)");
  cmd->add_option("--cpmp-mode", opts.cpmp_mode, "CPMP mode: fixed or h-index");
  cmd->add_option("--cpmp-threshold", opts.cpmp_threshold,
                  "Citation threshold for fixed-mode CPMP");
  cmd->add_option("--agg-threshold", opts.agg_threshold,
                  "Papers-per-year rate that triggers the AGG flag");
  cmd->add_option("--window", opts.window,
                  "Citation window length in years");
  cmd->add_option("--data-denominator", opts.data_denominator,
                  "Denominator for data-preset divisors");
  cmd->add_option("--format", opts.format,
                  "Merged list format: csv, json, or markdown (csv is always "
                  "written)")
      ->check(CLI::IsMember({"csv", "json", "markdown"}));
  cmd->add_option("--out", opts.out_dir, "Output directory");
}

FieldMapping load_mapping(RunContext& ctx) {
  if (ctx.opts.mapping.empty()) {
    return FieldMapping{fields::default_mapping()};
  }
  std::istringstream in(ctx.load("mapping", ctx.opts.mapping));
  return parse_mapping(in, fields::esi_universe(), fields::nsf_universe());
}

std::optional<std::map<std::string, double>> stage_t_ratios(RunContext& ctx) {
  if (ctx.opts.totals.empty()) return std::nullopt;
  std::istringstream in(ctx.load("totals", ctx.opts.totals));
  auto series = parse_field_totals(in);
  return compute_t_ratios(series, fields::base_nsf_field());
}

std::optional<HRatios> stage_h_ratios(RunContext& ctx,
                                      const FieldMapping& mapping) {
  if (ctx.opts.snapshots.empty()) return std::nullopt;
  std::istringstream in(ctx.load("snapshots", ctx.opts.snapshots));
  auto snapshots = parse_snapshots(in, {.window_years = ctx.opts.window});
  auto aggregated = aggregate_top_vectors(snapshots, mapping);
  return compute_h_ratios(aggregated, fields::base_nsf_field());
}

std::map<std::string, Rational> resolve_divisors(RunContext& ctx,
                                                 const FieldMapping& mapping,
                                                 const HRatios* h) {
  if (!ctx.opts.divisors.empty()) {
    std::istringstream in(ctx.load("divisors", ctx.opts.divisors));
    return parse_divisors(in);
  }
  DivisorPreset preset = preset_from_name(ctx.opts.preset);
  if (preset == DivisorPreset::kData && h == nullptr) {
    throw DomainError("missing_ratio",
                      "the data preset needs measured H ratios; run `ratios` "
                      "with --snapshots and pass its divisor_table.csv via "
                      "--divisors");
  }
  return build_divisor_table(preset, mapping, h ? &h->ratios : nullptr,
                             {.data_denominator = ctx.opts.data_denominator});
}

void write_ratio_outputs(RunContext& ctx,
                         const std::optional<std::map<std::string, double>>& t,
                         const std::optional<HRatios>& h) {
  std::ostringstream out;
  write_ratio_report(out, t ? *t : std::map<std::string, double>{},
                     h ? *h : HRatios{});
  ctx.write("ratio_report.csv", out.str());
}

void write_divisor_output(RunContext& ctx, const FieldMapping& mapping,
                          const HRatios* h) {
  auto divisors = resolve_divisors(ctx, mapping, h);
  std::ostringstream out;
  emit_divisors(out, divisors);
  ctx.write("divisor_table.csv", out.str());
}

void write_fit_outputs(RunContext& ctx) {
  std::istringstream in(ctx.load("pairs", ctx.opts.pairs));
  auto pairs = parse_fit_pairs(in);
  FitResult fit = fit_alpha(pairs);
  auto rows = residual_report(fit, ResidualRule::kPower);
  std::ostringstream report;
  write_fit_report(report, rows, fit.alpha);
  ctx.write("fit_report.csv", report.str());
  std::ostringstream plot;
  write_fit_plot(plot, rows);
  ctx.write("fit_plot.csv", plot.str());
}

std::vector<FieldSnapshot> rank_input_lists(RunContext& ctx) {
  if (!ctx.opts.fixture.empty()) {
    std::istringstream in(ctx.load("fixture", ctx.opts.fixture));
    auto rows = parse_appendix_fixture(in);
    auto lists = regroup_fixture(rows);
    for (auto& list : lists) list.window_years = ctx.opts.window;
    return lists;
  }
  if (!ctx.opts.snapshots.empty()) {
    std::istringstream in(ctx.load("snapshots", ctx.opts.snapshots));
    auto lists = parse_snapshots(in, {.window_years = ctx.opts.window});
    std::set<std::string> seen;
    for (const auto& list : lists) {
      if (!seen.insert(list.esi_field).second) {
        throw DomainError("multiple_dates",
                          "field " + list.esi_field +
                              " has lists at more than one date; rank needs "
                              "exactly one list per field");
      }
    }
    return lists;
  }
  throw DomainError("missing_input", "provide --fixture or --snapshots");
}

MergedList run_merge(RunContext& ctx, std::vector<FieldSnapshot> lists,
                     const FieldMapping& mapping) {
  auto divisors = resolve_divisors(ctx, mapping, nullptr);
  MergeOptions options;
  options.top_per_field = ctx.opts.top_per_field;
  options.cluster_epsilon = Rational::from_decimal(ctx.opts.epsilon);
  options.aggregation_threshold = ctx.opts.agg_threshold;
  MergedList merged = merge_rank(lists, divisors, options);
  merged.divisor_preset = ctx.opts.divisors.empty() ? ctx.opts.preset : "file";
  return merged;
}

void write_rank_outputs(RunContext& ctx, const MergedList& merged,
                        bool print_summary) {
  std::ostringstream csv;
  write_merged_csv(csv, merged);
  ctx.write("merged.csv", csv.str());
  if (ctx.opts.format == "json") {
    std::ostringstream json;
    write_merged_json(json, merged);
    ctx.write("merged.json", json.str());
  } else if (ctx.opts.format == "markdown") {
    std::ostringstream md;
    write_merged_markdown(md, merged);
    ctx.write("merged.md", md.str());
  }
  std::string summary = summary_text(merged);
  ctx.write("summary.txt", summary);
  if (print_summary) std::cout << summary;
}

void write_indicator_outputs(RunContext& ctx,
                             std::span<const FixtureRow> rows) {
  std::map<std::string, PaperProfile> profiles;
  if (!ctx.opts.profiles.empty()) {
    std::istringstream in(ctx.load("profiles", ctx.opts.profiles));
    for (auto& profile : parse_paper_profiles(in)) {
      std::string name = profile.name;
      profiles.emplace(std::move(name), std::move(profile));
    }
  }
  CpmpMode mode = cpmp_mode_from_name(ctx.opts.cpmp_mode);

  std::vector<IndicatorRow> out;
  out.reserve(rows.size());
  for (const FixtureRow& row : rows) {
    IndicatorRow ind;
    ind.name = row.record.name;
    ind.esi_field = row.record.esi_field;
    ind.cpp_cents = row.record.papers > 0
                        ? cpp_cents(row.record.citations, row.record.papers)
                        : 0;
    if (auto it = profiles.find(row.record.name); it != profiles.end()) {
      ind.h_index = h_index(it->second);
      ind.cpmp = cpmp(it->second, mode, ctx.opts.cpmp_threshold);
    }
    AggregationCheck check = flag_aggregation(
        row.record.papers, ctx.opts.window, ctx.opts.agg_threshold);
    ind.papers_per_year = check.papers_per_year;
    ind.aggregation_flagged = check.flagged;
    out.push_back(std::move(ind));
  }

  std::ostringstream report;
  write_indicator_report(report, out);
  ctx.write("indicators.csv", report.str());
}

std::vector<std::pair<std::string, std::string>> manifest_parameters(
    const Options& opts) {
  return {
      {"preset", opts.preset},
      {"top_per_field", std::to_string(opts.top_per_field)},
      {"epsilon", opts.epsilon},
      {"cpmp_mode", opts.cpmp_mode},
      {"cpmp_threshold", std::to_string(opts.cpmp_threshold)},
      {"agg_threshold", format_fixed(opts.agg_threshold, 4)},
      {"window", format_fixed(opts.window, 4)},
      {"data_denominator", std::to_string(opts.data_denominator)},
      {"format", opts.format},
  };
}

void cmd_ratios(RunContext& ctx) {
  FieldMapping mapping = load_mapping(ctx);
  auto t = stage_t_ratios(ctx);
  auto h = stage_h_ratios(ctx, mapping);
  if (!t && !h) {
    throw DomainError("missing_input", "provide --totals and/or --snapshots");
  }
  write_ratio_outputs(ctx, t, h);
  write_divisor_output(ctx, mapping, h ? &*h : nullptr);
}

void cmd_hratios(RunContext& ctx) {
  if (ctx.opts.snapshots.empty()) {
    throw DomainError("missing_input", "provide --snapshots");
  }
  FieldMapping mapping = load_mapping(ctx);
  auto h = stage_h_ratios(ctx, mapping);
  write_ratio_outputs(ctx, std::nullopt, h);
}

void cmd_fit(RunContext& ctx) {
  if (ctx.opts.pairs.empty()) {
    throw DomainError("missing_input", "provide --pairs");
  }
  write_fit_outputs(ctx);
}

void cmd_rank(RunContext& ctx) {
  FieldMapping mapping = load_mapping(ctx);
  auto lists = rank_input_lists(ctx);
  MergedList merged = run_merge(ctx, std::move(lists), mapping);
  write_rank_outputs(ctx, merged, /*print_summary=*/true);
}

void cmd_indicators(RunContext& ctx) {
  if (ctx.opts.fixture.empty()) {
    throw DomainError("missing_input", "provide --fixture");
  }
  std::istringstream in(ctx.load("fixture", ctx.opts.fixture));
  auto rows = parse_appendix_fixture(in);
  write_indicator_outputs(ctx, rows);
}

void cmd_report(RunContext& ctx) {
  const Options& o = ctx.opts;
  if (o.totals.empty() && o.snapshots.empty() && o.pairs.empty() &&
      o.fixture.empty()) {
    throw DomainError("missing_input",
                      "no inputs; provide at least one of --totals, "
                      "--snapshots, --pairs, --fixture");
  }
  FieldMapping mapping = load_mapping(ctx);
  auto t = stage_t_ratios(ctx);
  auto h = stage_h_ratios(ctx, mapping);
  if (t || h) write_ratio_outputs(ctx, t, h);
  write_divisor_output(ctx, mapping, h ? &*h : nullptr);
  if (!o.pairs.empty()) write_fit_outputs(ctx);
  if (!o.fixture.empty()) {
    std::istringstream in(ctx.load("fixture", o.fixture));
    auto rows = parse_appendix_fixture(in);
    auto lists = regroup_fixture(rows);
    for (auto& list : lists) list.window_years = o.window;
    MergedList merged = run_merge(ctx, std::move(lists), mapping);
    write_rank_outputs(ctx, merged, /*print_summary=*/false);
    write_indicator_outputs(ctx, rows);
  }
  ctx.write("manifest.json",
            manifest_json("report", manifest_parameters(o), ctx.inputs,
                          ctx.outputs));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "citerank: field-normalized rankings of highly cited researchers"};
  app.set_version_flag("--version", "citerank 1.0.0");
  app.require_subcommand(1);

  Options opts;
  CLI::App* ratios =
      app.add_subcommand("ratios", "Compute T and H ratio tables");
  CLI::App* hratios =
      app.add_subcommand("hratios", "Compute the H ratio table only");
  CLI::App* fit = app.add_subcommand("fit", "Fit H = T^alpha over (T, H) pairs");
  CLI::App* rank =
      app.add_subcommand("rank", "Merge per-field lists into one ranking");
  CLI::App* indicators =
      app.add_subcommand("indicators", "Per-researcher indicator report");
  CLI::App* report =
      app.add_subcommand("report", "Run every stage and write a manifest");
  for (CLI::App* cmd : {ratios, hratios, fit, rank, indicators, report}) {
    add_common_flags(cmd, opts);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunContext ctx{opts, {}, {}};
    if (ratios->parsed()) cmd_ratios(ctx);
    if (hratios->parsed()) cmd_hratios(ctx);
    if (fit->parsed()) cmd_fit(ctx);
    if (rank->parsed()) cmd_rank(ctx);
    if (indicators->parsed()) cmd_indicators(ctx);
    if (report->parsed()) cmd_report(ctx);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
