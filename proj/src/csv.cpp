#include "citerank/csv.hpp"

#include "citerank/errors.hpp"

namespace citerank {

std::optional<CsvRow> CsvReader::next() {
  int first = in_.peek();
  if (first == std::char_traits<char>::eof()) return std::nullopt;

  CsvRow row;
  row.line = line_;
  std::string cell;
  bool quoted = false;
  bool cell_started = false;

  for (;;) {
    int ci = in_.get();
    if (ci == std::char_traits<char>::eof()) {
      if (quoted) {
        throw ParseError("unterminated_quote", "unterminated quoted cell", row.line);
      }
      row.cells.push_back(std::move(cell));
      return row;
    }
    char c = static_cast<char>(ci);
    if (quoted) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          cell.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line_;
        cell.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (cell_started || !cell.empty()) {
          throw ParseError("stray_quote", "quote inside unquoted cell", row.line);
        }
        quoted = true;
        cell_started = true;
        break;
      case ',':
        row.cells.push_back(std::move(cell));
        cell.clear();
        cell_started = false;
        break;
      case '\r':
        break;  // swallowed; record ends at the LF
      case '\n':
        ++line_;
        row.cells.push_back(std::move(cell));
        return row;
      default:
        cell.push_back(c);
        cell_started = true;
    }
  }
}

void expect_header(CsvReader& reader, std::span<const std::string> expected,
                   const std::string& context) {
  auto row = reader.next();
  if (!row) {
    throw ParseError("bad_header", context + ": empty input, expected header", 1);
  }
  bool ok = row->cells.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) {
    ok = row->cells[i] == expected[i];
  }
  if (!ok) {
    std::string want;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) want += ',';
      want += expected[i];
    }
    throw ParseError("bad_header", context + ": expected header '" + want + "'",
                     row->line);
  }
}

std::string csv_quote(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out.put(',');
    out << csv_quote(cells[i]);
  }
  out.put('\n');
}

}  // namespace citerank
