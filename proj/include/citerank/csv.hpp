// Minimal RFC-4180 style CSV reading/writing: comma separated, double-quote
// quoting with doubled quotes inside, UTF-8, CRLF tolerated on input, LF on
// output. Cell values embedding commas (researcher names) make this
// mandatory, a naive split won't do.
#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace citerank {

struct CsvRow {
  std::vector<std::string> cells;
  std::size_t line = 0;  // 1-based line the record starts on
};

class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Next record, or nullopt at end of input. Throws ParseError on an
  /// unterminated quoted cell or a stray quote inside an unquoted cell.
  std::optional<CsvRow> next();

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

/// Reads the first record and checks it equals the expected header cells
/// exactly; throws ParseError("bad_header") otherwise.
void expect_header(CsvReader& reader, std::span<const std::string> expected,
                   const std::string& context);

/// Quotes the cell iff it contains a comma, quote, CR, or LF.
std::string csv_quote(const std::string& cell);

void write_csv_row(std::ostream& out, std::span<const std::string> cells);

}  // namespace citerank
