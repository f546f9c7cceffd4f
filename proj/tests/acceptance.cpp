// Acceptance checks, one PASS/FAIL line per criterion. Exits 1 on any failure.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dense_oracle.hpp"
#include "ksep/criteria.hpp"
#include "ksep/oracle.hpp"
#include "ksep/threshold.hpp"

using namespace ksep;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<BasisState> labels(std::initializer_list<const char*> list) {
  std::vector<BasisState> out;
  for (const char* s : list) out.push_back(BasisState::from_string(s));
  return out;
}

Theorem3Basis paper_basis() { return build_k_alpha(labels({"0011", "0101", "0110", "1010"})); }

Theorem3Basis weight_basis(int n, int m) {
  std::vector<BasisState> out;
  for_each_weight_mask(n, m, [&](Mask x) { out.emplace_back(n, x); });
  return build_k_alpha(std::move(out));
}

NoiseFamily paper_family() {
  std::vector<Amplitude> amps;
  const Theorem3Basis v = paper_basis();
  for (const auto& s : v.states()) amps.push_back({s.bits(), 0.5});
  return NoiseFamily(PureState(4, std::move(amps)));
}

bool closed_form_defined(int n, int m, int k) {
  try {
    dicke_threshold_closed_form(n, m, k);
    return true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::not_detectable) throw;
    return false;
  }
}

Outcome exact_thresholds() {
  Outcome out;
  const auto start = Clock::now();
  const std::vector<std::tuple<int, int, int, Rational>> cases{
      {4, 2, 2, Rational(9, 17)}, {4, 2, 3, Rational(5, 13)}, {4, 2, 4, Rational(3, 11)},
      {5, 2, 5, Rational(5, 21)}, {5, 3, 3, Rational(5, 13)}};
  for (const auto& [n, m, k, want] : cases) {
    const Rational got = dicke_threshold_closed_form(n, m, k);
    out.expect(got == want, "(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + ") gave " +
                                to_string(got));
  }
  out.expect(seconds_since(start) < 1.0, "took over 1 s");
  return out;
}

Outcome theorem3_bisection() {
  Outcome out;
  const auto start = Clock::now();
  const NoiseFamily family = paper_family();
  const auto k3 = bisection_threshold(family, CriterionContext::theorem3(paper_basis(), 3), 1e-10);
  const auto k4 = bisection_threshold(family, CriterionContext::theorem3(paper_basis(), 4), 1e-10);
  out.expect(k3.a_star && std::abs(*k3.a_star - 7.0 / 19) <= 1e-9, "k=3 threshold off");
  out.expect(k4.a_star && std::abs(*k4.a_star - 0.2) <= 1e-9, "k=4 threshold off");
  out.expect(seconds_since(start) < 5.0, "took over 5 s");
  if (out.ok) out.detail = "7/19 and 1/5";
  return out;
}

Outcome closed_vs_bisection() {
  Outcome out;
  const auto start = Clock::now();
  int compared = 0;
  double worst = 0.0;
  for (int n = 3; n <= 8; ++n) {
    for (int m = 1; m <= n - 1; ++m) {
      const NoiseFamily family(dicke_state(n, m));
      for (int k = 2; k <= n; ++k) {
        if (!closed_form_defined(n, m, k)) continue;
        const ThresholdResult closed = dicke_threshold_result(n, m, k);
        const ThresholdResult bisect = bisection_threshold(family, CriterionContext::theorem2(n, k, m), 1e-10);
        const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + ")";
        ++compared;
        if (!closed.a_star) {
          out.expect(!bisect.a_star, tag + " closed form >= 1 but bisection found a root");
          continue;
        }
        out.expect(bisect.a_star.has_value(), tag + " bisection found no root");
        if (bisect.a_star) {
          const double diff = std::abs(*bisect.a_star - *closed.a_star);
          worst = std::max(worst, diff);
          out.expect(diff <= 1e-9, tag + " differs by " + std::to_string(diff));
        }
      }
    }
  }
  out.expect(seconds_since(start) < 120.0, "took over 2 min");
  if (out.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d tuples, worst gap %.3g", compared, worst);
    out.detail = buf;
  }
  return out;
}

Outcome equivalences() {
  Outcome out;
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = testing::random_hermitian(4, rng);
    for (int k = 2; k <= 4; ++k) {
      const double t1 = theorem1_value(rho, k).value;
      const double e1 = std::abs(theorem1_value_n4_expanded(rho, k) - t1);
      const double e2 = std::abs(theorem2_value(rho, k, 2).value - t1);
      worst = std::max({worst, e1, e2});
      out.expect(e1 <= 1e-12, "expanded form differs");
      out.expect(e2 <= 1e-12, "theorem-2 at m=2 differs");
    }
  }
  for (int n : {3, 4}) {
    for (int trial = 0; trial < 100; ++trial) {
      const DensityMatrix rho = testing::random_hermitian(n, rng);
      const testing::TwoCopy two(testing::to_dense(rho), n);
      for (Mask x = 0; x < (Mask{1} << n); ++x) {
        for (Mask y = 0; y < (Mask{1} << n); ++y) {
          if (std::popcount(x ^ y) != 2) continue;
          const int first = n - std::bit_width(x ^ y) + 1;
          const double e =
              std::abs(two.swap_term(x, y, first) - swap_term_value(rho, swap_term(BasisState(n, x), BasisState(n, y))));
          worst = std::max(worst, e);
          out.expect(e <= 1e-12, "swap contraction differs");
        }
      }
    }
  }
  if (out.ok) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst gap %.3g", worst);
    out.detail = buf;
  }
  return out;
}

Outcome soundness() {
  Outcome out;
  const auto start = Clock::now();
  double worst = -1e300;
  std::uint64_t seed = 1;
  for (int n = 3; n <= 6; ++n) {
    for (int k = 2; k <= n; ++k) {
      std::vector<CriterionContext> criteria{CriterionContext::theorem1(n, k)};
      for (int m = 1; m <= n - 1; ++m) {
        if (m != 2) criteria.push_back(CriterionContext::theorem2(n, k, m));
        criteria.push_back(CriterionContext::theorem3(weight_basis(n, m), k));
      }
      if (n == 4) criteria.push_back(CriterionContext::theorem3(paper_basis(), k));
      for (const auto& ctx : criteria) {
        const SoundnessReport report = soundness_scan(n, k, ctx, 10000, seed++);
        worst = std::max(worst, report.max_value);
        out.expect(report.mixed_trials == 1000, "wrong mixed trial count");
        out.expect(!report.violation, "violation for " + report.criterion + " at n=" + std::to_string(n) +
                                          ", k=" + std::to_string(k) + ": " + violation_json(report));
      }
    }
  }

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  double worst_null = 0.0;
  for (int n = 3; n <= 6; ++n) {
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Amplitude> amps;
      std::vector<std::pair<Complex, Complex>> qubits;
      for (int q = 0; q < n; ++q) {
        const double theta = angle(rng), phi = angle(rng);
        qubits.emplace_back(std::cos(theta), std::polar(std::sin(theta), phi));
      }
      for (Mask x = 0; x < (Mask{1} << n); ++x) {
        Complex v = 1.0;
        for (int p = 1; p <= n; ++p) {
          const auto& [zero, one] = qubits[static_cast<std::size_t>(p - 1)];
          v *= (x & position_bit(n, p)) ? one : zero;
        }
        amps.push_back({x, v});
      }
      const double value = theorem1_value(projector(PureState::normalized(n, std::move(amps))), n).value;
      worst_null = std::max(worst_null, std::abs(value));
    }
  }
  out.expect(worst_null <= 1e-10, "fully separable product gave |value| " + std::to_string(worst_null));
  const double elapsed = seconds_since(start);
  out.expect(elapsed < 300.0, "took over 5 min");
  if (out.ok) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "max value %.3g, product null %.3g, %.1f s", worst, worst_null, elapsed);
    out.detail = buf;
  }
  return out;
}

Outcome affinity() {
  Outcome out;
  const std::vector<std::array<int, 3>> families{{4, 2, 2}, {4, 2, 3}, {4, 2, 4}, {5, 2, 5}, {5, 3, 3},
                                                 {6, 3, 2}, {7, 2, 3}, {8, 4, 5}};
  const auto grid = uniform_grid(11);
  for (const auto& [n, m, k] : families) {
    const auto points = scan(NoiseFamily(dicke_state(n, m)), CriterionContext::theorem2(n, k, m), grid);
    double sa = 0, sv = 0, saa = 0, sav = 0;
    for (const auto& p : points) {
      sa += p.a;
      sv += p.value.value;
      saa += p.a * p.a;
      sav += p.a * p.value.value;
    }
    const double count = static_cast<double>(points.size());
    const double slope = (count * sav - sa * sv) / (count * saa - sa * sa);
    const double intercept = (sv - slope * sa) / count;
    double residual = 0;
    for (const auto& p : points) residual = std::max(residual, std::abs(p.value.value - (intercept + slope * p.a)));
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + ")";
    out.expect(residual < 1e-10, tag + " residual " + std::to_string(residual));
    const double root = -intercept / slope;
    const double exact = static_cast<double>(dicke_threshold_closed_form(n, m, k));
    out.expect(std::abs(root - exact) <= 1e-9, tag + " root " + std::to_string(root));
  }
  if (out.ok) out.detail = std::to_string(families.size()) + " families";
  return out;
}

Outcome combinatorics() {
  Outcome out;
  std::vector<std::vector<std::uint64_t>> s(11, std::vector<std::uint64_t>(11, 0));
  s[0][0] = 1;
  for (int i = 1; i <= 10; ++i)
    for (int j = 1; j <= i; ++j) s[i][j] = static_cast<std::uint64_t>(j) * s[i - 1][j] + s[i - 1][j - 1];
  for (int n = 1; n <= 10; ++n)
    for (int k = 1; k <= n; ++k)
      out.expect(enumerate_k_partitions(n, k).size() == s[n][k], "S(" + std::to_string(n) + "," + std::to_string(k) + ")");

  const Theorem3Basis v = paper_basis();
  for (const auto& [k, want] : std::vector<std::pair<int, int>>{{3, 1}, {4, 0}}) {
    const Nk3Result r = nk_theorem3(v, k);
    out.expect(r.nk == want, "nk_theorem3 at k=" + std::to_string(k));
    out.expect(r.witness.subset.size() == static_cast<std::size_t>(4 - k + 1) &&
                   subset_pair_count(v, r.witness.alpha, r.witness.subset) == r.nk && r.witness.count == r.nk,
               "invalid witness at k=" + std::to_string(k));
  }
  const std::vector<std::array<int, 3>> tuples{{4, 2, 2}, {4, 2, 3}, {4, 2, 4}, {5, 2, 2},
                                               {5, 2, 3}, {5, 2, 4}, {5, 2, 5}, {5, 3, 3}};
  for (const auto& [n, m, k] : tuples) {
    out.expect(nk_theorem3(weight_basis(n, m), k).nk == nk_theorem2(n, k, m),
               "weight basis (" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + ")");
  }
  return out;
}

Outcome scale() {
  Outcome out;
  const auto start = Clock::now();
  const NoiseFamily family(dicke_state(20, 2));
  const auto ctx = CriterionContext::theorem1(20, 2);
  const double a_star = static_cast<double>(dicke_threshold_closed_form(20, 2, 2));
  const double at_root = detect(family.realize(a_star), ctx).value;
  const double at_one = detect(family.realize(1.0), ctx).value;
  const double elapsed = seconds_since(start);
  out.expect(std::abs(at_root) <= 1e-9, "value at the closed-form root is " + std::to_string(at_root));
  out.expect(at_one > 0, "pure Dicke state not detected");
  out.expect(elapsed < 10.0, "took over 10 s");
  if (out.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.3f s", elapsed);
    out.detail = buf;
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks{
      {"exact closed-form thresholds", exact_thresholds},
      {"theorem-3 bisection thresholds", theorem3_bisection},
      {"closed form matches bisection, 3 <= n <= 8", closed_vs_bisection},
      {"equivalence suites", equivalences},
      {"soundness on random k-separable states", soundness},
      {"affinity of scans in a", affinity},
      {"partition and subset combinatorics", combinatorics},
      {"n = 20 Dicke noise evaluation", scale},
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome r;
    try {
      r = checks[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += !r.ok;
    std::printf("%s %zu %s%s%s\n", r.ok ? "PASS" : "FAIL", i + 1, checks[i].first, r.detail.empty() ? "" : ": ",
                r.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
