#include "citerank/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <ostream>
#include <utility>

#include "citerank/csv.hpp"
#include "citerank/fields.hpp"

namespace citerank {

namespace {

const std::vector<std::string> kSnapshotHeader = {
    "date", "esi_field", "rank", "name", "papers", "citations"};
const std::vector<std::string> kTotalsHeader = {"year", "nsf_field",
                                                "total_citations"};
const std::vector<std::string> kMappingHeader = {"esi_field", "nsf_field"};
const std::vector<std::string> kProfilesHeader = {"name", "paper_id",
                                                  "citations"};
const std::vector<std::string> kFixtureHeader = {
    "rank",   "name",   "normalized", "field",
    "field_rank", "papers", "citations",  "cpp"};
const std::vector<std::string> kDivisorHeader = {"esi_field", "divisor_num",
                                                 "divisor_den"};

void require_width(const CsvRow& row, std::size_t width) {
  if (row.cells.size() != width) {
    throw ParseError("bad_row",
                     "expected " + std::to_string(width) + " cells, got " +
                         std::to_string(row.cells.size()),
                     row.line);
  }
}

std::int64_t parse_int(const CsvRow& row, std::size_t idx, const char* what,
                       std::int64_t min_value) {
  const std::string& cell = row.cells[idx];
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("invalid_integer",
                     std::string(what) + " is not an integer: '" + cell + "'",
                     row.line, idx + 1);
  }
  if (value < min_value) {
    throw ParseError("out_of_range",
                     std::string(what) + " must be >= " +
                         std::to_string(min_value) + ", got " + cell,
                     row.line, idx + 1);
  }
  return value;
}

/// Collapses whitespace runs without changing case; applied to field names
/// that are not in the registry.
std::string tidy(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string canon_esi_or_keep(const std::string& raw) {
  if (auto canonical = fields::canonical_esi(raw)) return *canonical;
  return tidy(raw);
}

std::string canon_nsf_or_keep(const std::string& raw) {
  if (auto canonical = fields::canonical_nsf(raw)) return *canonical;
  return tidy(raw);
}

std::string parsed_name(const CsvRow& row, std::size_t idx) {
  std::string name = normalize_name(row.cells[idx]);
  if (name.empty()) {
    throw ParseError("blank_name", "researcher name is empty", row.line,
                     idx + 1);
  }
  return name;
}

}  // namespace

std::vector<FieldSnapshot> parse_snapshots(std::istream& in,
                                           const SnapshotParseOptions& options) {
  CsvReader reader(in);
  expect_header(reader, kSnapshotHeader, "snapshots");

  struct Pending {
    ResearcherRecord record;
    std::size_t line;
  };
  std::map<std::pair<std::string, Date>, std::vector<Pending>> groups;

  while (auto row = reader.next()) {
    require_width(*row, 6);
    Date date = Date::parse(row->cells[0], row->line);
    ResearcherRecord rec;
    rec.esi_field = canon_esi_or_keep(row->cells[1]);
    rec.rank_in_field = static_cast<int>(parse_int(*row, 2, "rank", 1));
    rec.name = parsed_name(*row, 3);
    rec.papers = parse_int(*row, 4, "papers", 0);
    rec.citations = parse_int(*row, 5, "citations", 0);
    groups[{rec.esi_field, date}].push_back({std::move(rec), row->line});
  }

  std::vector<FieldSnapshot> snapshots;
  snapshots.reserve(groups.size());
  for (auto& [key, pending] : groups) {
    std::stable_sort(pending.begin(), pending.end(),
                     [](const Pending& a, const Pending& b) {
                       return a.record.rank_in_field < b.record.rank_in_field;
                     });
    FieldSnapshot snap;
    snap.esi_field = key.first;
    snap.snapshot_date = key.second;
    snap.window_years = options.window_years;
    snap.entries.reserve(pending.size());
    int expected_rank = 1;
    for (const Pending& p : pending) {
      if (p.record.rank_in_field != expected_rank) {
        if (!snap.entries.empty() &&
            p.record.rank_in_field == snap.entries.back().rank_in_field) {
          throw ParseError("duplicate_rank",
                           "rank " + std::to_string(p.record.rank_in_field) +
                               " repeated in " + key.first + " @ " +
                               key.second.to_string(),
                           p.line);
        }
        throw ParseError("rank_gap",
                         "ranks in " + key.first + " @ " +
                             key.second.to_string() +
                             " are not contiguous from 1",
                         p.line);
      }
      if (!snap.entries.empty() &&
          p.record.citations > snap.entries.back().citations) {
        throw ParseError("citations_increase",
                         "citations increase from rank " +
                             std::to_string(expected_rank - 1) + " to " +
                             std::to_string(expected_rank) + " in " +
                             key.first + " @ " + key.second.to_string(),
                         p.line);
      }
      snap.entries.push_back(p.record);
      ++expected_rank;
    }
    snapshots.push_back(std::move(snap));
  }
  return snapshots;
}

std::vector<FieldTotalsSeries> parse_field_totals(std::istream& in) {
  CsvReader reader(in);
  expect_header(reader, kTotalsHeader, "totals");

  std::map<std::string, FieldTotalsSeries> series;
  while (auto row = reader.next()) {
    require_width(*row, 3);
    int year = static_cast<int>(parse_int(*row, 0, "year", 1));
    std::string field = canon_nsf_or_keep(row->cells[1]);
    std::int64_t total = parse_int(*row, 2, "total_citations", 0);
    auto& entry = series[field];
    entry.nsf_field = field;
    auto [it, inserted] = entry.points.emplace(year, total);
    if (!inserted) {
      throw ParseError("duplicate_year",
                       "duplicate total for " + field + " in " +
                           std::to_string(year),
                       row->line);
    }
  }

  std::vector<FieldTotalsSeries> out;
  out.reserve(series.size());
  for (auto& [_, value] : series) out.push_back(std::move(value));
  return out;
}

FieldMapping parse_mapping(std::istream& in,
                           std::span<const std::string> esi_universe,
                           std::span<const std::string> nsf_universe) {
  CsvReader reader(in);
  expect_header(reader, kMappingHeader, "mapping");

  auto resolve = [](const std::string& raw,
                    std::span<const std::string> universe,
                    std::function<std::string(const std::string&)> canon,
                    const char* side, std::size_t line) {
    std::string name = canon(raw);
    if (std::find(universe.begin(), universe.end(), name) == universe.end()) {
      throw ParseError("unknown_field",
                       std::string(side) + " field '" + raw +
                           "' is not in the declared universe",
                       line);
    }
    return name;
  };

  FieldMapping mapping;
  while (auto row = reader.next()) {
    require_width(*row, 2);
    std::string esi = resolve(row->cells[0], esi_universe, canon_esi_or_keep,
                              "ESI", row->line);
    std::string nsf = resolve(row->cells[1], nsf_universe, canon_nsf_or_keep,
                              "NSF", row->line);
    auto [it, inserted] = mapping.pairs.emplace(esi, nsf);
    if (!inserted && it->second != nsf) {
      throw ParseError("conflicting_mapping",
                       esi + " mapped to both " + it->second + " and " + nsf,
                       row->line);
    }
  }

  for (const std::string& esi : esi_universe) {
    if (!mapping.pairs.contains(esi)) {
      throw ParseError("incomplete_mapping", "no mapping row for " + esi, 0);
    }
  }
  return mapping;
}

std::vector<PaperProfile> parse_paper_profiles(std::istream& in) {
  CsvReader reader(in);
  expect_header(reader, kProfilesHeader, "profiles");

  std::map<std::string, PaperProfile> profiles;
  while (auto row = reader.next()) {
    require_width(*row, 3);
    std::string name = parsed_name(*row, 0);
    std::int64_t citations = parse_int(*row, 2, "citations", 0);
    auto& profile = profiles[name];
    profile.name = name;
    profile.paper_citations.push_back(citations);
  }

  std::vector<PaperProfile> out;
  out.reserve(profiles.size());
  for (auto& [_, profile] : profiles) {
    std::sort(profile.paper_citations.begin(), profile.paper_citations.end(),
              std::greater<>());
    out.push_back(std::move(profile));
  }
  return out;
}

std::vector<FixtureRow> parse_appendix_fixture(std::istream& in) {
  CsvReader reader(in);
  expect_header(reader, kFixtureHeader, "fixture");

  std::vector<std::pair<FixtureRow, std::size_t>> rows;
  while (auto row = reader.next()) {
    require_width(*row, 8);
    FixtureRow fixture;
    fixture.global_rank = static_cast<int>(parse_int(*row, 0, "rank", 1));
    fixture.record.name = parsed_name(*row, 1);
    fixture.normalized = parse_int(*row, 2, "normalized", 0);
    fixture.record.esi_field = canon_esi_or_keep(row->cells[3]);
    fixture.record.rank_in_field =
        static_cast<int>(parse_int(*row, 4, "field_rank", 1));
    fixture.record.papers = parse_int(*row, 5, "papers", 0);
    fixture.record.citations = parse_int(*row, 6, "citations", 0);
    fixture.cpp_cents = parse_cents(row->cells[7], row->line);
    if (fixture.cpp_cents < 0) {
      throw ParseError("out_of_range", "cpp must be non-negative", row->line,
                       8);
    }
    if (fixture.record.papers == 0 && fixture.cpp_cents != 0) {
      throw ParseError("cpp_mismatch",
                       "papers = 0 but cpp = " + format_cents(fixture.cpp_cents),
                       row->line);
    }
    rows.emplace_back(std::move(fixture), row->line);
  }

  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.first.global_rank < b.first.global_rank;
  });
  std::vector<FixtureRow> out;
  out.reserve(rows.size());
  int expected = 1;
  for (auto& [fixture, line] : rows) {
    if (fixture.global_rank != expected) {
      throw ParseError("rank_gap",
                       "global ranks are not contiguous from 1 (expected " +
                           std::to_string(expected) + ", got " +
                           std::to_string(fixture.global_rank) + ")",
                       line);
    }
    ++expected;
    out.push_back(std::move(fixture));
  }
  return out;
}

std::map<std::string, Rational> parse_divisors(std::istream& in) {
  CsvReader reader(in);
  expect_header(reader, kDivisorHeader, "divisors");

  std::map<std::string, Rational> divisors;
  while (auto row = reader.next()) {
    require_width(*row, 3);
    std::string field = canon_esi_or_keep(row->cells[0]);
    std::int64_t num = parse_int(*row, 1, "divisor_num", 1);
    std::int64_t den = parse_int(*row, 2, "divisor_den", 1);
    auto [it, inserted] = divisors.emplace(field, Rational(num, den));
    if (!inserted) {
      throw ParseError("duplicate_field", "divisor for " + field +
                           " appears more than once",
                       row->line);
    }
  }
  return divisors;
}

void emit_snapshots(std::ostream& out,
                    std::span<const FieldSnapshot> snapshots) {
  write_csv_row(out, kSnapshotHeader);
  std::vector<const FieldSnapshot*> ordered;
  ordered.reserve(snapshots.size());
  for (const auto& snap : snapshots) ordered.push_back(&snap);
  std::sort(ordered.begin(), ordered.end(),
            [](const FieldSnapshot* a, const FieldSnapshot* b) {
              return std::tie(a->esi_field, a->snapshot_date) <
                     std::tie(b->esi_field, b->snapshot_date);
            });
  for (const FieldSnapshot* snap : ordered) {
    for (const ResearcherRecord& rec : snap->entries) {
      write_csv_row(out,
                    std::vector<std::string>{
                        snap->snapshot_date.to_string(), snap->esi_field,
                        std::to_string(rec.rank_in_field), rec.name,
                        std::to_string(rec.papers),
                        std::to_string(rec.citations)});
    }
  }
}

void emit_field_totals(std::ostream& out,
                       std::span<const FieldTotalsSeries> series) {
  write_csv_row(out, kTotalsHeader);
  std::vector<const FieldTotalsSeries*> ordered;
  ordered.reserve(series.size());
  for (const auto& s : series) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(),
            [](const FieldTotalsSeries* a, const FieldTotalsSeries* b) {
              return a->nsf_field < b->nsf_field;
            });
  for (const FieldTotalsSeries* s : ordered) {
    for (const auto& [year, total] : s->points) {
      write_csv_row(out, std::vector<std::string>{std::to_string(year),
                                                  s->nsf_field,
                                                  std::to_string(total)});
    }
  }
}

void emit_mapping(std::ostream& out, const FieldMapping& mapping) {
  write_csv_row(out, kMappingHeader);
  for (const auto& [esi, nsf] : mapping.pairs) {
    write_csv_row(out, std::vector<std::string>{esi, nsf});
  }
}

void emit_paper_profiles(std::ostream& out,
                         std::span<const PaperProfile> profiles) {
  write_csv_row(out, kProfilesHeader);
  std::vector<const PaperProfile*> ordered;
  ordered.reserve(profiles.size());
  for (const auto& p : profiles) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const PaperProfile* a, const PaperProfile* b) {
              return a->name < b->name;
            });
  for (const PaperProfile* profile : ordered) {
    std::size_t i = 0;
    for (std::int64_t citations : profile->paper_citations) {
      write_csv_row(out, std::vector<std::string>{
                             profile->name, "p" + std::to_string(++i),
                             std::to_string(citations)});
    }
  }
}

void emit_appendix_fixture(std::ostream& out,
                           std::span<const FixtureRow> rows) {
  write_csv_row(out, kFixtureHeader);
  for (const FixtureRow& row : rows) {
    write_csv_row(out, std::vector<std::string>{
                           std::to_string(row.global_rank), row.record.name,
                           std::to_string(row.normalized),
                           row.record.esi_field,
                           std::to_string(row.record.rank_in_field),
                           std::to_string(row.record.papers),
                           std::to_string(row.record.citations),
                           format_cents(row.cpp_cents)});
  }
}

void emit_divisors(std::ostream& out,
                   const std::map<std::string, Rational>& divisors) {
  write_csv_row(out, kDivisorHeader);
  for (const auto& [field, divisor] : divisors) {
    write_csv_row(out, std::vector<std::string>{
                           field, std::to_string(divisor.num()),
                           std::to_string(divisor.den())});
  }
}

}  // namespace citerank
