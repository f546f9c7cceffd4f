#include "ksep/criteria.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

namespace ksep {

namespace {

void check_k(int n, int k) {
  require(k >= 2 && k <= n, "k must satisfy 2 <= k <= n, got k=" + std::to_string(k) + ", n=" +
                                std::to_string(n));
}

void check_m(int n, int m) {
  require(m >= 1 && m <= n - 1, "m must satisfy 1 <= m <= n-1, got m=" + std::to_string(m) + ", n=" +
                                    std::to_string(n));
}

void check_width(const DensityMatrix& rho, int n) {
  require(rho.n_qubits() == n, "density matrix has " + std::to_string(rho.n_qubits()) +
                                   " qubits, criterion expects " + std::to_string(n));
}

// Diagonals may sit a rounding error below zero; the square-root terms see 0.
double sqrt_product(double d1, double d2) { return std::sqrt(std::max(d1, 0.0) * std::max(d2, 0.0)); }

CriterionValue theorem1_with_nk(const DensityMatrix& rho, int nk) {
  const int n = rho.n_qubits();
  double a_part = 0.0;
  for (int i = 1; i <= n; ++i) {
    const Mask bi = position_bit(n, i);
    const double d_i = rho.diagonal_at(bi);
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      const Mask bij = bi | position_bit(n, j);
      for (int jp = 1; jp <= n; ++jp) {
        if (jp == i || jp == j) continue;
        const Mask bijp = bi | position_bit(n, jp);
        a_part += std::abs(rho.element_at(bij, bijp)) - sqrt_product(d_i, rho.diagonal_at(bij | bijp));
      }
    }
  }
  double diag_sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) diag_sum += rho.diagonal_at(position_bit(n, i) | position_bit(n, j));
  }
  return make_criterion_value(a_part, nk * diag_sum);
}

CriterionValue theorem2_with_nk(const DensityMatrix& rho, int m, int nk) {
  const int n = rho.n_qubits();
  double a_part = 0.0;
  double diag_sum = 0.0;
  for_each_weight_mask(n, m, [&](Mask pattern) {
    diag_sum += rho.diagonal_at(pattern);
    for (int j = 1; j <= n; ++j) {
      const Mask bj = position_bit(n, j);
      if (!(pattern & bj)) continue;
      const double d_reduced = rho.diagonal_at(pattern ^ bj);
      for (int jp = 1; jp <= n; ++jp) {
        const Mask bjp = position_bit(n, jp);
        if (pattern & bjp) continue;
        const Mask moved = pattern ^ bj ^ bjp;
        a_part += std::abs(rho.element_at(pattern, moved)) -
                  sqrt_product(d_reduced, rho.diagonal_at(pattern | bjp));
      }
    }
  });
  return make_criterion_value(a_part, nk * diag_sum);
}

CriterionValue theorem3_with_nk(const DensityMatrix& rho, const Theorem3Basis& basis, int nk) {
  double a_part = 0.0;
  double diag_sum = 0.0;
  const auto& v = basis.states();
  for (std::size_t alpha = 0; alpha < v.size(); ++alpha) {
    diag_sum += rho.diagonal_at(v[alpha].bits());
    for (std::size_t beta : basis.neighbors(alpha)) {
      const SwapTermSpec spec = swap_term(v[alpha], v[beta]);
      a_part += std::abs(rho.element_at(v[alpha].bits(), v[beta].bits())) -
                sqrt_product(rho.diagonal_at(spec.reduced.bits()), rho.diagonal_at(spec.extended.bits()));
    }
  }
  return make_criterion_value(a_part, nk * diag_sum);
}

}  // namespace

// ---------------------------------------------------------------------------

int nk_theorem1(int n, int k) {
  check_k(n, k);
  return std::max(2 * (n - k - 1), n - k);
}

int nk_theorem2(int n, int k, int m) {
  check_k(n, k);
  check_m(n, m);
  int best = 0;
  for (int t = 1; t <= m; ++t) best = std::max(best, t * (n - k + 1 - t));
  return best;
}

Theorem3Basis::Theorem3Basis(std::vector<BasisState> states) : n_(0), states_(std::move(states)) {
  require(!states_.empty(), "theorem-3 basis must contain at least one state");
  n_ = states_.front().n_qubits();
  for (const auto& s : states_) require(s.n_qubits() == n_, "theorem-3 basis states must share a width");
  auto sorted = states_;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          "theorem-3 basis states must be distinct");

  neighbors_.resize(states_.size());
  for (std::size_t a = 0; a < states_.size(); ++a) {
    for (std::size_t b = 0; b < states_.size(); ++b) {
      if (std::popcount(states_[a].bits() ^ states_[b].bits()) == 2) neighbors_[a].push_back(b);
    }
  }
}

Theorem3Basis build_k_alpha(std::vector<BasisState> states) { return Theorem3Basis(std::move(states)); }

Nk3Result nk_theorem3(const Theorem3Basis& basis, int k) {
  const int n = basis.n_qubits();
  check_k(n, k);
  const int subset_size = n - k + 1;

  bool any_neighbors = false;
  for (std::size_t a = 0; a < basis.size(); ++a) any_neighbors = any_neighbors || !basis.neighbors(a).empty();
  if (!any_neighbors) return {0, NkWitness{}};

  require(binomial(n, subset_size) <= (std::uint64_t{1} << 32), "too many position subsets to search");

  const auto& v = basis.states();
  Nk3Result best{-1, {}};
  Mask best_subset = 0;
  std::vector<Mask> diffs;
  for (std::size_t alpha = 0; alpha < v.size(); ++alpha) {
    diffs.clear();
    for (std::size_t beta : basis.neighbors(alpha)) diffs.push_back(v[alpha].bits() ^ v[beta].bits());
    for_each_weight_mask(n, subset_size, [&](Mask subset) {
      int count = 0;
      for (Mask d : diffs) count += (d & ~subset) == 0;
      if (count > best.nk) {
        best.nk = count;
        best.witness.alpha = alpha;
        best.witness.count = count;
        best_subset = subset;
      }
    });
  }
  for (int p = 1; p <= n; ++p) {
    if (best_subset & position_bit(n, p)) best.witness.subset.push_back(p);
  }
  return best;
}

int subset_pair_count(const Theorem3Basis& basis, std::size_t alpha, std::span<const int> subset) {
  const int n = basis.n_qubits();
  require(alpha < basis.size(), "alpha index out of range");
  Mask mask = 0;
  for (int p : subset) {
    require(p >= 1 && p <= n, "subset position out of range");
    mask |= position_bit(n, p);
  }
  const auto& v = basis.states();
  int count = 0;
  for (std::size_t beta : basis.neighbors(alpha)) count += ((v[alpha].bits() ^ v[beta].bits()) & ~mask) == 0;
  return count;
}

// ---------------------------------------------------------------------------

SwapTermSpec swap_term(const BasisState& x, const BasisState& y) {
  require(x.n_qubits() == y.n_qubits(), "swap term needs kets of equal width");
  const Mask diff = x.bits() ^ y.bits();
  require(std::popcount(diff) == 2, "swap term needs kets differing in exactly two positions");
  // highest set bit of diff is the lowest-numbered (first) differing position
  const Mask first = std::bit_floor(diff);
  BasisState a(x.n_qubits(), x.bits() ^ first);
  BasisState b(y.n_qubits(), y.bits() ^ first);
  if (a.popcount() > b.popcount()) std::swap(a, b);
  return {a, b};
}

double swap_term_value(const DensityMatrix& rho, const SwapTermSpec& spec) {
  return rho.element(spec.reduced, spec.reduced).real() * rho.element(spec.extended, spec.extended).real();
}

const char* to_string(Verdict v) noexcept {
  return v == Verdict::k_nonseparable ? "k_nonseparable" : "inconclusive";
}

CriterionValue make_criterion_value(double a_part, double b_part) {
  CriterionValue out;
  out.a_part = a_part;
  out.b_part = b_part;
  out.value = a_part - b_part;
  const double eps = 1e-12 * std::max(1.0, std::abs(a_part) + std::abs(b_part));
  out.verdict = out.value > eps ? Verdict::k_nonseparable : Verdict::inconclusive;
  return out;
}

CriterionContext CriterionContext::theorem1(int n, int k) {
  require(n >= 3, "theorem-1 criterion needs at least 3 qubits");
  return CriterionContext(n, k, Theorem1Variant{}, nk_theorem1(n, k));
}

CriterionContext CriterionContext::theorem2(int n, int k, int m) {
  return CriterionContext(n, k, Theorem2Variant{m}, nk_theorem2(n, k, m));
}

CriterionContext CriterionContext::theorem3(Theorem3Basis basis, int k) {
  const int n = basis.n_qubits();
  const int nk = nk_theorem3(basis, k).nk;
  return CriterionContext(n, k, Theorem3Variant{std::move(basis)}, nk);
}

const char* CriterionContext::name() const noexcept {
  switch (variant_.index()) {
    case 0: return "t1";
    case 1: return "t2";
    default: return "t3";
  }
}

CriterionValue theorem1_value(const DensityMatrix& rho, int k) {
  require(rho.n_qubits() >= 3, "theorem-1 criterion needs at least 3 qubits");
  return theorem1_with_nk(rho, nk_theorem1(rho.n_qubits(), k));
}

double theorem1_value_n4_expanded(const DensityMatrix& rho, int k) {
  require(rho.n_qubits() == 4, "the expanded form is defined for 4 qubits only");
  const int nk = nk_theorem1(4, k);

  // {row, col, sqrt factor 1, sqrt factor 2}, 1-based matrix indices
  static constexpr std::array<std::array<int, 4>, 12> kTerms{{
      {4, 6, 2, 8},    {4, 7, 3, 8},    {4, 10, 2, 12},  {4, 11, 3, 12},
      {6, 7, 5, 8},    {6, 10, 2, 14},  {6, 13, 5, 14},  {7, 11, 3, 15},
      {7, 13, 5, 15},  {10, 11, 9, 12}, {10, 13, 9, 14}, {11, 13, 9, 15},
  }};
  static constexpr std::array<int, 6> kDiagonal{4, 6, 7, 10, 11, 13};

  auto at = [&](int r, int c) { return rho.element_at(static_cast<Mask>(r - 1), static_cast<Mask>(c - 1)); };
  double pairs = 0.0;
  for (const auto& t : kTerms) {
    pairs += std::abs(at(t[0], t[1])) - sqrt_product(at(t[2], t[2]).real(), at(t[3], t[3]).real());
  }
  double diag = 0.0;
  for (int d : kDiagonal) diag += at(d, d).real();
  return 2.0 * pairs - nk * diag;
}

CriterionValue theorem2_value(const DensityMatrix& rho, int k, int m) {
  const int n = rho.n_qubits();
  return theorem2_with_nk(rho, m, nk_theorem2(n, k, m));
}

CriterionValue theorem3_value(const DensityMatrix& rho, const Theorem3Basis& basis, int k) {
  check_width(rho, basis.n_qubits());
  return theorem3_with_nk(rho, basis, nk_theorem3(basis, k).nk);
}

CriterionValue detect(const DensityMatrix& rho, const CriterionContext& ctx) {
  check_width(rho, ctx.n_qubits());
  return std::visit(
      [&](const auto& variant) -> CriterionValue {
        using T = std::decay_t<decltype(variant)>;
        if constexpr (std::is_same_v<T, Theorem1Variant>) {
          return theorem1_with_nk(rho, ctx.nk());
        } else if constexpr (std::is_same_v<T, Theorem2Variant>) {
          return theorem2_with_nk(rho, variant.m, ctx.nk());
        } else {
          return theorem3_with_nk(rho, variant.basis, ctx.nk());
        }
      },
      ctx.variant());
}

}  // namespace ksep
