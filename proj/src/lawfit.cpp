#include "citerank/lawfit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "citerank/csv.hpp"
#include "citerank/errors.hpp"

namespace citerank {

FitResult fit_alpha(std::span<const FitPair> pairs) {
  FitResult result;
  double cross = 0.0;
  double norm = 0.0;
  bool informative = false;
  for (const FitPair& pair : pairs) {
    if (pair.t <= 0.0 || pair.h <= 0.0) {
      throw DomainError("nonpositive_pair",
                        "pair for '" + pair.field +
                            "' must have positive T and H");
    }
    result.pairs_used.push_back(pair);
    if (pair.t == 1.0) {
      result.excluded_fields.push_back(pair.field);
      if (pair.h != 1.0) {
        result.warnings.push_back("pair for '" + pair.field +
                                  "' has T = 1 but H != 1");
      }
      continue;
    }
    double lt = std::log(pair.t);
    cross += lt * std::log(pair.h);
    norm += lt * lt;
    informative = true;
  }
  if (!informative) {
    throw DomainError("no_informative_pairs",
                      "every pair has T = 1; alpha is undetermined");
  }
  result.alpha = cross / norm;
  for (const FitPair& pair : result.pairs_used) {
    double residual = pair.h - std::pow(pair.t, result.alpha);
    result.residuals.push_back(residual);
    result.max_abs_residual =
        std::max(result.max_abs_residual, std::abs(residual));
  }
  return result;
}

double predict_power(double t, double alpha) {
  if (t <= 0.0) {
    throw DomainError("nonpositive_t", "T must be positive");
  }
  return std::pow(t, alpha);
}

Rational predict_two_thirds(const Rational& t) {
  return Rational(2, 3) * t;
}

std::vector<ResidualRow> residual_report(const FitResult& fit,
                                         ResidualRule rule) {
  std::vector<ResidualRow> rows;
  rows.reserve(fit.pairs_used.size());
  for (const FitPair& pair : fit.pairs_used) {
    ResidualRow row;
    row.field = pair.field;
    row.t = pair.t;
    row.h = pair.h;
    row.predicted = rule == ResidualRule::kPower
                        ? std::pow(pair.t, fit.alpha)
                        : 2.0 * pair.t / 3.0;
    row.residual = row.h - row.predicted;
    row.excluded =
        rule == ResidualRule::kTwoThirds && std::abs(row.residual) > 1.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<FitPair> parse_fit_pairs(std::istream& in) {
  static const std::vector<std::string> header = {"field", "T", "H"};
  CsvReader reader(in);
  expect_header(reader, header, "fit pairs");

  auto parse_positive = [](const CsvRow& row, std::size_t idx,
                           const char* what) {
    const std::string& cell = row.cells[idx];
    char* end = nullptr;
    double value = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || cell.empty() ||
        !std::isfinite(value)) {
      throw ParseError("invalid_decimal",
                       std::string(what) + " is not a number: '" + cell + "'",
                       row.line, idx + 1);
    }
    if (value <= 0.0) {
      throw ParseError("out_of_range",
                       std::string(what) + " must be positive", row.line,
                       idx + 1);
    }
    return value;
  };

  std::vector<FitPair> pairs;
  while (auto row = reader.next()) {
    if (row->cells.size() != 3) {
      throw ParseError("bad_row",
                       "expected 3 cells, got " +
                           std::to_string(row->cells.size()),
                       row->line);
    }
    FitPair pair;
    pair.field = row->cells[0];
    pair.t = parse_positive(*row, 1, "T");
    pair.h = parse_positive(*row, 2, "H");
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace citerank
