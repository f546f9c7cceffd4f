#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ksep/state.hpp"

namespace ksep {

// ---------------------------------------------------------------------------
// Combinatorial constants

/// max{2(n-k-1), n-k}; requires 2 <= k <= n.
int nk_theorem1(int n, int k);

/// max over t in {1..m} of t(n-k+1-t), floored at 0.
int nk_theorem2(int n, int k, int m);

/// Product basis V with its distance-2 neighbour lists K_alpha.
class Theorem3Basis {
 public:
  /// Throws on duplicates, mixed widths, or an empty list.
  explicit Theorem3Basis(std::vector<BasisState> states);

  int n_qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<BasisState>& states() const noexcept { return states_; }

  /// Indices beta (ascending) with Hamming distance exactly 2 from alpha.
  const std::vector<std::size_t>& neighbors(std::size_t alpha) const { return neighbors_.at(alpha); }

 private:
  int n_;
  std::vector<BasisState> states_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

Theorem3Basis build_k_alpha(std::vector<BasisState> states);

/// Attaining (alpha, subset) for the theorem-3 constant. `subset` holds
/// 1-based positions; empty together with count 0 when every K_alpha is empty.
struct NkWitness {
  std::size_t alpha = 0;
  std::vector<int> subset;
  int count = 0;
};

struct Nk3Result {
  int nk;
  NkWitness witness;
};

/// Exhaustive max over alpha and (n-k+1)-subsets S of the number of
/// beta in K_alpha whose two differing positions lie in S.
Nk3Result nk_theorem3(const Theorem3Basis& basis, int k);

/// Number of beta in K_alpha whose two differing positions both lie in
/// `subset` (1-based positions).
int subset_pair_count(const Theorem3Basis& basis, std::size_t alpha, std::span<const int> subset);

// ---------------------------------------------------------------------------
// Two-copy swap terms

/// The two diagonal entries that the swap-sandwiched two-copy term
/// <x (x) y| P rho(x)rho P |x (x) y> collapses to, for kets x, y that differ in
/// exactly two positions. With p the first differing position, the images
/// are x and y each with p flipped. For pattern moves these have weights
/// w-1 and w+1; `reduced` is the lighter one.
struct SwapTermSpec {
  BasisState reduced;
  BasisState extended;
};

SwapTermSpec swap_term(const BasisState& x, const BasisState& y);

/// diag(reduced) * diag(extended).
double swap_term_value(const DensityMatrix& rho, const SwapTermSpec& spec);

// ---------------------------------------------------------------------------
// Criterion evaluation

enum class Verdict { k_nonseparable, inconclusive };

const char* to_string(Verdict v) noexcept;

struct CriterionValue {
  double a_part = 0.0;
  double b_part = 0.0;
  double value = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Strictly positive beyond 1e-12 relative noise certifies non-k-separability.
CriterionValue make_criterion_value(double a_part, double b_part);

struct Theorem1Variant {};
struct Theorem2Variant {
  int m;
};
struct Theorem3Variant {
  Theorem3Basis basis;
};

using CriterionVariant = std::variant<Theorem1Variant, Theorem2Variant, Theorem3Variant>;

/// Everything an evaluation needs besides rho, with N_k precomputed.
class CriterionContext {
 public:
  static CriterionContext theorem1(int n, int k);
  static CriterionContext theorem2(int n, int k, int m);
  static CriterionContext theorem3(Theorem3Basis basis, int k);

  int n_qubits() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  int nk() const noexcept { return nk_; }
  const CriterionVariant& variant() const noexcept { return variant_; }

  /// "t1", "t2" or "t3".
  const char* name() const noexcept;

 private:
  CriterionContext(int n, int k, CriterionVariant variant, int nk)
      : n_(n), k_(k), variant_(std::move(variant)), nk_(nk) {}

  int n_;
  int k_;
  CriterionVariant variant_;
  int nk_;
};

CriterionValue theorem1_value(const DensityMatrix& rho, int k);

/// The literal twelve-pair four-qubit expansion, indexed by 1-based matrix
/// rows. Only for n = 4.
double theorem1_value_n4_expanded(const DensityMatrix& rho, int k);

CriterionValue theorem2_value(const DensityMatrix& rho, int k, int m);

CriterionValue theorem3_value(const DensityMatrix& rho, const Theorem3Basis& basis, int k);

CriterionValue detect(const DensityMatrix& rho, const CriterionContext& ctx);

}  // namespace ksep
