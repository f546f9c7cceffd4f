#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ksep/criteria.hpp"
#include "ksep/state.hpp"

namespace ksep {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q" (or "p" when q == 1).
std::string to_string(const Rational& r);

enum class ThresholdMethod { closed_form, bisection };

const char* to_string(ThresholdMethod m) noexcept;

struct ThresholdResult {
  /// Smallest a in [0,1] past which the criterion fires; empty when the
  /// criterion never fires on [0,1] ("none in range").
  std::optional<double> a_star;
  ThresholdMethod method = ThresholdMethod::bisection;
  /// Exact value for closed-form results; may lie outside [0,1].
  std::optional<Rational> exact;
  /// |value(a_star)| for bisection results.
  double residual = 0.0;
};

/// Exact white-noise threshold of the Dicke family |D_m^n> under the
/// m-excitation criterion:
///   a* = C(M + Nk) / (C(M + Nk) + 2^n (M - Nk)),   C = binom(n,m), M = m(n-m).
/// Throws ErrorKind::not_detectable when the denominator is not positive.
Rational dicke_threshold_closed_form(int n, int m, int k);

/// Closed form packaged as a ThresholdResult (a_star empty if a* >= 1).
ThresholdResult dicke_threshold_result(int n, int m, int k);

/// Root of value(a) = 0 on [0,1] by bisection to interval width <= tol.
/// Requires an inconclusive verdict at a = 0. Returns "none in range" when the
/// verdict at a = 1 is inconclusive (value within rounding of 0 counts as 0).
/// Verifies value is nondecreasing on a 32-point grid before bisecting and
/// throws ErrorKind::non_monotone naming the violating pair otherwise.
ThresholdResult bisection_threshold(const NoiseFamily& family, const CriterionContext& ctx, double tol = 1e-10);

struct ScanPoint {
  double a;
  CriterionValue value;
};

std::vector<ScanPoint> scan(const NoiseFamily& family, const CriterionContext& ctx, std::span<const double> grid);

/// Header "a,value,nk,verdict", 17 significant digits.
void write_scan_csv(std::ostream& out, std::span<const ScanPoint> points, int nk);

/// Equally spaced grid of `points` values over [0,1].
std::vector<double> uniform_grid(int points);

}  // namespace ksep
