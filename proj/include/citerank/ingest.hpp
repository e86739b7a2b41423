// Parsing, validation, and canonical re-emission of every input file format.
//
// All parsers are order-insensitive (permuting data rows yields an equal
// result), attach 1-based line numbers to every failure, and canonicalize
// field names through the registries in fields.hpp. Unrecognized field names
// are kept verbatim (whitespace-tidied) so small hand-written fixtures work;
// downstream stages reject them if they need a mapping or divisor.
#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "citerank/rational.hpp"
#include "citerank/types.hpp"

namespace citerank {

struct SnapshotParseOptions {
  double window_years = kDefaultWindowYears;
};

/// Header `date,esi_field,rank,name,papers,citations`. One FieldSnapshot per
/// (esi_field, date) group, entries sorted by rank; ranks must be unique and
/// contiguous from 1 and citations non-increasing.
std::vector<FieldSnapshot> parse_snapshots(
    std::istream& in, const SnapshotParseOptions& options = {});

/// Header `year,nsf_field,total_citations`. One series per field; duplicate
/// (year, field) rows rejected.
std::vector<FieldTotalsSeries> parse_field_totals(std::istream& in);

/// Header `esi_field,nsf_field`. Must be a total mapping over esi_universe
/// into nsf_universe; identical duplicate rows are accepted, conflicting
/// ones rejected.
FieldMapping parse_mapping(std::istream& in,
                           std::span<const std::string> esi_universe,
                           std::span<const std::string> nsf_universe);

/// Header `name,paper_id,citations`. One profile per name; the citation
/// multiset keeps duplicates and is stored sorted descending.
std::vector<PaperProfile> parse_paper_profiles(std::istream& in);

/// Header `rank,name,normalized,field,field_rank,papers,citations,cpp`.
/// Global ranks must be contiguous from 1; cpp carries exactly two fraction
/// digits and must be 0.00 when papers = 0.
std::vector<FixtureRow> parse_appendix_fixture(std::istream& in);

/// Header `esi_field,divisor_num,divisor_den`. Positive exact rationals, one
/// per field.
std::map<std::string, Rational> parse_divisors(std::istream& in);

// Canonical emitters. emit(parse(x)) parses back to an equal value.
void emit_snapshots(std::ostream& out, std::span<const FieldSnapshot> snapshots);
void emit_field_totals(std::ostream& out,
                       std::span<const FieldTotalsSeries> series);
void emit_mapping(std::ostream& out, const FieldMapping& mapping);
void emit_paper_profiles(std::ostream& out,
                         std::span<const PaperProfile> profiles);
void emit_appendix_fixture(std::ostream& out, std::span<const FixtureRow> rows);
void emit_divisors(std::ostream& out,
                   const std::map<std::string, Rational>& divisors);

}  // namespace citerank
