#include "ksep/threshold.hpp"

#include <cmath>
#include <cstdio>

#include <boost/math/tools/roots.hpp>

#include "ksep/format.hpp"

namespace ksep {

using boost::multiprecision::cpp_int;

std::string to_string(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

const char* to_string(ThresholdMethod m) noexcept {
  return m == ThresholdMethod::closed_form ? "closed_form" : "bisection";
}

Rational dicke_threshold_closed_form(int n, int m, int k) {
  require(n >= 2 && n <= kMaxQubits, "n out of range");
  const cpp_int nk = nk_theorem2(n, k, m);
  const cpp_int c = binomial(n, m);
  const cpp_int moves = cpp_int(m) * (n - m);
  const cpp_int dim = cpp_int(1) << n;

  const cpp_int numerator = moves * c + nk * c;
  const cpp_int denominator = numerator - dim * nk + dim * moves;
  if (denominator <= 0) {
    fail(ErrorKind::not_detectable, "criterion cannot detect in this regime (n=" + std::to_string(n) +
                                        ", m=" + std::to_string(m) + ", k=" + std::to_string(k) +
                                        "): threshold denominator " + denominator.str() + " <= 0");
  }
  return Rational(numerator, denominator);
}

ThresholdResult dicke_threshold_result(int n, int m, int k) {
  ThresholdResult out;
  out.method = ThresholdMethod::closed_form;
  out.exact = dicke_threshold_closed_form(n, m, k);
  if (*out.exact < 1) out.a_star = static_cast<double>(*out.exact);
  return out;
}

ThresholdResult bisection_threshold(const NoiseFamily& family, const CriterionContext& ctx, double tol) {
  require(tol > 0.0, "bisection tolerance must be positive");
  require(family.n_qubits() == ctx.n_qubits(), "family width does not match criterion");
  auto evaluate = [&](double a) { return detect(family.realize(a), ctx); };
  auto value = [&](double a) { return evaluate(a).value; };

  ThresholdResult out;
  out.method = ThresholdMethod::bisection;

  const CriterionValue at0 = evaluate(0.0);
  const double v0 = at0.value;
  if (at0.verdict == Verdict::k_nonseparable) {
    fail(ErrorKind::parameter, "criterion already positive at a=0 (value " + format_real(v0) +
                                   "); no white-noise threshold exists");
  }
  if (evaluate(1.0).verdict != Verdict::k_nonseparable) return out;

  constexpr int kGrid = 32;
  double prev = v0;
  for (int i = 1; i < kGrid; ++i) {
    const double a = static_cast<double>(i) / (kGrid - 1);
    const double cur = value(a);
    const double slack = 1e-12 * std::max(1.0, std::abs(prev) + std::abs(cur));
    if (cur < prev - slack) {
      const double a_prev = static_cast<double>(i - 1) / (kGrid - 1);
      fail(ErrorKind::non_monotone, "criterion value decreases between a=" + format_real(a_prev) + " (" +
                                        format_real(prev) + ") and a=" + format_real(a) + " (" +
                                        format_real(cur) + ")");
    }
    prev = cur;
  }

  auto done = [tol](double lo, double hi) { return hi - lo <= tol; };
  boost::uintmax_t max_iter = 200;
  const auto [lo, hi] = boost::math::tools::bisect(value, 0.0, 1.0, done, max_iter);
  const double root = 0.5 * (lo + hi);
  out.a_star = root;
  out.residual = std::abs(value(root));
  return out;
}

std::vector<ScanPoint> scan(const NoiseFamily& family, const CriterionContext& ctx, std::span<const double> grid) {
  require(family.n_qubits() == ctx.n_qubits(), "family width does not match criterion");
  std::vector<ScanPoint> out;
  out.reserve(grid.size());
  for (double a : grid) {
    require(a >= 0.0 && a <= 1.0, "scan grid values must lie in [0, 1]");
    out.push_back({a, detect(family.realize(a), ctx)});
  }
  return out;
}

void write_scan_csv(std::ostream& out, std::span<const ScanPoint> points, int nk) {
  out << "a,value,nk,verdict\n";
  for (const auto& p : points) {
    out << format_real(p.a) << ',' << format_real(p.value.value) << ',' << nk << ',' << to_string(p.value.verdict)
        << '\n';
  }
}

std::vector<double> uniform_grid(int points) {
  require(points >= 2, "grid needs at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  return grid;
}

}  // namespace ksep
