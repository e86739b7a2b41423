// Fitting H = T^alpha by through-origin least squares in log-log space, the
// 2T/3 shortcut rule, and residual diagnostics for both.
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "citerank/rational.hpp"

namespace citerank {

struct FitPair {
  std::string field;
  double t = 0.0;
  double h = 0.0;

  bool operator==(const FitPair&) const = default;
};

struct FitResult {
  double alpha = 0.0;
  std::vector<FitPair> pairs_used;
  std::vector<double> residuals;  // h - t^alpha, aligned with pairs_used
  double max_abs_residual = 0.0;
  std::vector<std::string> excluded_fields;  // T = 1, analytically inert
  std::vector<std::string> warnings;
};

/// alpha = sum(ln T * ln H) / sum(ln T)^2 over pairs with T != 1; pairs with
/// T = 1 stay in the result but cannot move alpha (ln 1 = 0), and earn a
/// warning when their H is not 1.
FitResult fit_alpha(std::span<const FitPair> pairs);

/// T^alpha. T must be positive.
double predict_power(double t, double alpha);

/// Exact 2T/3.
Rational predict_two_thirds(const Rational& t);

enum class ResidualRule { kPower, kTwoThirds };

struct ResidualRow {
  std::string field;
  double t = 0.0;
  double h = 0.0;
  double predicted = 0.0;
  double residual = 0.0;
  /// Under the two-thirds rule: the pair misses by more than 1, i.e. the
  /// high-citation broad fields the rule does not cover.
  bool excluded = false;
};

std::vector<ResidualRow> residual_report(const FitResult& fit,
                                         ResidualRule rule);

/// Header `field,T,H`; decimals allowed in T and H.
std::vector<FitPair> parse_fit_pairs(std::istream& in);

}  // namespace citerank
