#include "citerank/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "citerank/csv.hpp"
#include "citerank/indicators.hpp"
#include "citerank/ingest.hpp"

namespace citerank {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string flags_cell(const std::vector<std::string>& flags) {
  std::string joined;
  for (const std::string& flag : flags) {
    if (!joined.empty()) joined.push_back(' ');
    joined += flag;
  }
  return joined;
}

std::int64_t entry_cpp_cents(const MergedEntry& entry) {
  if (entry.record.papers == 0) return 0;
  return cpp_cents(entry.record.citations, entry.record.papers);
}

}  // namespace

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
    s.erase(0, 1);  // -0.0000 and 0.0000 must not differ between runs
  }
  return s;
}

void write_ratio_report(std::ostream& out,
                        const std::map<std::string, double>& t_ratios,
                        const HRatios& h) {
  static const std::vector<std::string> header = {"nsf_field", "t_ratio",
                                                  "h_level", "h_ratio"};
  write_csv_row(out, header);
  std::set<std::string> fields;
  for (const auto& [field, _] : t_ratios) fields.insert(field);
  for (const auto& [field, _] : h.ratios) fields.insert(field);
  for (const std::string& field : fields) {
    std::vector<std::string> cells(4);
    cells[0] = field;
    if (auto it = t_ratios.find(field); it != t_ratios.end()) {
      cells[1] = format_fixed(it->second, 4);
    }
    if (auto it = h.levels.find(field); it != h.levels.end()) {
      cells[2] = format_fixed(it->second, 4);
    }
    if (auto it = h.ratios.find(field); it != h.ratios.end()) {
      cells[3] = format_fixed(it->second, 4);
    }
    write_csv_row(out, cells);
  }
}

void write_fit_report(std::ostream& out, std::span<const ResidualRow> rows,
                      double alpha) {
  static const std::vector<std::string> header = {"field", "T", "H", "H_pred",
                                                  "residual"};
  write_csv_row(out, header);
  for (const ResidualRow& row : rows) {
    write_csv_row(out, std::vector<std::string>{
                           row.field, format_fixed(row.t, 4),
                           format_fixed(row.h, 4),
                           format_fixed(row.predicted, 4),
                           format_fixed(row.residual, 4)});
  }
  write_csv_row(out, std::vector<std::string>{"alpha", format_fixed(alpha, 2)});
}

void write_fit_plot(std::ostream& out, std::span<const ResidualRow> rows) {
  static const std::vector<std::string> header = {"t", "h", "h_pred"};
  write_csv_row(out, header);
  for (const ResidualRow& row : rows) {
    write_csv_row(out, std::vector<std::string>{format_fixed(row.t, 4),
                                                format_fixed(row.h, 4),
                                                format_fixed(row.predicted, 4)});
  }
}

void write_merged_csv(std::ostream& out, const MergedList& merged) {
  std::vector<FixtureRow> rows;
  rows.reserve(merged.entries.size());
  for (const MergedEntry& entry : merged.entries) {
    FixtureRow row;
    row.global_rank = entry.global_rank;
    row.record = entry.record;
    row.normalized = entry.normalized_citations;
    row.cpp_cents = entry_cpp_cents(entry);
    rows.push_back(std::move(row));
  }
  emit_appendix_fixture(out, rows);
}

void write_merged_json(std::ostream& out, const MergedList& merged) {
  ordered_json doc;
  doc["divisor_preset"] = merged.divisor_preset;
  doc["top_per_field"] = merged.top_per_field;
  doc["entries"] = ordered_json::array();
  for (const MergedEntry& entry : merged.entries) {
    ordered_json e;
    e["global_rank"] = entry.global_rank;
    e["name"] = entry.record.name;
    e["esi_field"] = entry.record.esi_field;
    e["rank_in_field"] = entry.record.rank_in_field;
    e["papers"] = entry.record.papers;
    e["citations"] = entry.record.citations;
    e["normalized_citations"] = entry.normalized_citations;
    e["normalized_exact"] = {{"num", entry.normalized_exact.num()},
                             {"den", entry.normalized_exact.den()}};
    e["cluster_id"] = entry.cluster_id;
    e["flags"] = entry.flags;
    doc["entries"].push_back(std::move(e));
  }
  out << doc.dump(2) << '\n';
}

void write_merged_markdown(std::ostream& out, const MergedList& merged) {
  out << "| Rank | Name | Normalized | Field | Field rank | Papers | "
         "Citations | CPP | Cluster | Flags |\n";
  out << "| ---: | --- | ---: | --- | ---: | ---: | ---: | ---: | ---: | "
         "--- |\n";
  for (const MergedEntry& entry : merged.entries) {
    out << "| " << entry.global_rank << " | " << entry.record.name << " | "
        << entry.normalized_citations << " | " << entry.record.esi_field
        << " | " << entry.record.rank_in_field << " | " << entry.record.papers
        << " | " << entry.record.citations << " | "
        << format_cents(entry_cpp_cents(entry)) << " | " << entry.cluster_id
        << " | " << flags_cell(entry.flags) << " |\n";
  }
}

void write_indicator_report(std::ostream& out,
                            std::span<const IndicatorRow> rows) {
  static const std::vector<std::string> header = {
      "name",        "esi_field",       "cpp",
      "h_index",     "cpmp",            "papers_per_year",
      "aggregation_flagged"};
  write_csv_row(out, header);
  for (const IndicatorRow& row : rows) {
    std::vector<std::string> cells(7);
    cells[0] = row.name;
    cells[1] = row.esi_field;
    cells[2] = format_cents(row.cpp_cents);
    if (row.h_index) cells[3] = std::to_string(*row.h_index);
    if (row.cpmp) cells[4] = format_fixed(*row.cpmp, 2);
    cells[5] = format_fixed(row.papers_per_year, 2);
    cells[6] = row.aggregation_flagged ? "true" : "false";
    write_csv_row(out, cells);
  }
}

std::string summary_text(const MergedList& merged) {
  std::ostringstream out;
  out << "entries: " << merged.entries.size() << '\n';
  out << "clusters: " << cluster_count(merged) << '\n';

  std::array<int, 3> cuts = {10, 50, 100};
  std::array<std::set<std::string>, 3> leaders;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    leaders[i] = leader_coverage(merged, cuts[i]);
  }
  out << "field leaders in top 10 / 50 / 100: " << leaders[0].size() << " / "
      << leaders[1].size() << " / " << leaders[2].size() << '\n';
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    out << "leaders in top " << cuts[i] << ":";
    bool first = true;
    for (const std::string& field : leaders[i]) {
      out << (first ? " " : "; ") << field;
      first = false;
    }
    out << '\n';
  }

  int flagged = 0;
  for (const MergedEntry& entry : merged.entries) {
    if (!entry.flags.empty()) ++flagged;
  }
  out << "flagged entries: " << flagged << '\n';
  return out.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw IoError("hash_failed", "SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

void atomic_write(const std::filesystem::path& path,
                  std::string_view content) {
  std::filesystem::path parent = path.parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("write_failed", "cannot open " + tmp.string());
    }
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw IoError("write_failed", "cannot write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("write_failed",
                  "cannot rename " + tmp.string() + " to " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("missing_input", "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("read_failed", "cannot read " + path.string());
  }
  return buffer.str();
}

std::string manifest_json(
    const std::string& command,
    std::span<const std::pair<std::string, std::string>> parameters,
    std::span<const ManifestFile> inputs,
    std::span<const ManifestFile> outputs) {
  ordered_json doc;
  doc["command"] = command;
  doc["parameters"] = ordered_json::object();
  for (const auto& [key, value] : parameters) doc["parameters"][key] = value;
  auto files = [](std::span<const ManifestFile> list) {
    ordered_json obj = ordered_json::object();
    for (const ManifestFile& file : list) {
      obj[file.name] = {{"path", file.path}, {"sha256", file.sha256}};
    }
    return obj;
  };
  doc["inputs"] = files(inputs);
  doc["outputs"] = files(outputs);
  return doc.dump(2) + "\n";
}

}  // namespace citerank
