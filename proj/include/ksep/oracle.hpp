#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ksep/criteria.hpp"
#include "ksep/state.hpp"

namespace ksep {

/// Set partition of {1..n}. Canonical form: each block ascending, blocks
/// ordered by their smallest element.
class PartitionSpec {
 public:
  /// Validates disjointness and coverage, then canonicalizes.
  PartitionSpec(int n_qubits, std::vector<std::vector<int>> blocks);

  int n_qubits() const noexcept { return n_; }
  int k() const noexcept { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }

  /// "1|2|34"; positions are comma-separated inside a block once n >= 10.
  std::string to_string() const;

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;

 private:
  int n_;
  std::vector<std::vector<int>> blocks_;
};

/// All partitions of {1..n} into exactly k blocks, sorted by block list.
/// The count is the Stirling number of the second kind S(n,k).
std::vector<PartitionSpec> enumerate_k_partitions(int n, int k);

/// Deterministic 64-bit seed for (seed, stream, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Tensor product over blocks of independent uniformly random block states
/// (complex standard normal amplitudes, normalized). Dense in 2^n, n <= 20.
PureState random_product_pure(const PartitionSpec& partition, std::uint64_t seed);

/// Dirichlet(1,...,1)-weighted mixture of `terms` random product states,
/// each over its own uniformly drawn k-partition.
DensityMatrix random_k_separable_mixed(int n, int k, int terms, std::uint64_t seed);

/// Any sample value above this is a soundness violation.
inline constexpr double kViolationThreshold = 1e-9;

struct SoundnessViolation {
  DensityMatrix state;
  double value;
  bool mixed;
  std::uint64_t trial;
};

struct SoundnessReport {
  int n = 0;
  int k = 0;
  std::string criterion;
  int criterion_k = 0;
  std::size_t pure_trials = 0;
  std::size_t mixed_trials = 0;
  double max_value = 0.0;
  std::optional<SoundnessViolation> violation;  ///< worst offender, if any
};

/// Evaluates `criterion` on `trials` random k-separable pure states and
/// trials/10 random k-separable mixtures. Requires criterion.k() <= k, since
/// a k-separable state is also k'-separable for every k' <= k.
SoundnessReport soundness_scan(int n, int k, const CriterionContext& criterion, int trials, std::uint64_t seed);

/// {"criterion":..., "k":..., "value":...} describing the worst violation.
std::string violation_json(const SoundnessReport& report);

}  // namespace ksep
