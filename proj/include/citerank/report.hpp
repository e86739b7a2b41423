// Report writers for every pipeline artifact, plus the reproducibility
// helpers: content hashing, atomic file writes, and the run manifest. All
// writers use fixed field ordering and fixed number formatting so identical
// inputs produce byte-identical files.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citerank/lawfit.hpp"
#include "citerank/rank.hpp"
#include "citerank/ratio.hpp"

namespace citerank {

/// Fixed-point decimal with the given fraction digits; negative zero is
/// normalized to plain zero.
std::string format_fixed(double value, int digits);

/// `nsf_field,t_ratio,h_level,h_ratio` over the union of fields, 4 fraction
/// digits; cells a side has no value for stay empty.
void write_ratio_report(std::ostream& out,
                        const std::map<std::string, double>& t_ratios,
                        const HRatios& h);

/// `field,T,H,H_pred,residual` rows plus an `alpha,<2 digits>` footer.
void write_fit_report(std::ostream& out, std::span<const ResidualRow> rows,
                      double alpha);

/// Plot data for H vs T and for the fitted curve: `t,h,h_pred`.
void write_fit_plot(std::ostream& out, std::span<const ResidualRow> rows);

/// Merged list in the reference-list CSV schema; cpp is recomputed from
/// each row's papers and citations.
void write_merged_csv(std::ostream& out, const MergedList& merged);

/// JSON mirror of the merged list with the exact scores as {num, den}.
void write_merged_json(std::ostream& out, const MergedList& merged);

/// Display-only table.
void write_merged_markdown(std::ostream& out, const MergedList& merged);

struct IndicatorRow {
  std::string name;
  std::string esi_field;
  std::int64_t cpp_cents = 0;
  std::optional<int> h_index;   // absent without a paper profile
  std::optional<double> cpmp;   // absent when the meaningful set is empty
  double papers_per_year = 0.0;
  bool aggregation_flagged = false;
};

/// `name,esi_field,cpp,h_index,cpmp,papers_per_year,aggregation_flagged`;
/// absent values leave their cell empty.
void write_indicator_report(std::ostream& out,
                            std::span<const IndicatorRow> rows);

/// Stable text block: entry and cluster counts, leader coverage at
/// n = 10 / 50 / 100, and the flagged entries.
std::string summary_text(const MergedList& merged);

std::string sha256_hex(std::string_view bytes);

/// Writes through a sibling temporary name and renames into place, so a
/// failed run leaves no partial file behind.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// Whole file as bytes; IoError("missing_input") carries the path.
std::string read_file(const std::filesystem::path& path);

struct ManifestFile {
  std::string name;
  std::string path;
  std::string sha256;
};

/// Machine-readable run record: command, parameters, input and output
/// hashes. Carries no timestamps, keeping reruns byte-identical.
std::string manifest_json(
    const std::string& command,
    std::span<const std::pair<std::string, std::string>> parameters,
    std::span<const ManifestFile> inputs,
    std::span<const ManifestFile> outputs);

}  // namespace citerank
