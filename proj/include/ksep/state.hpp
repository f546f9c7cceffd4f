#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "ksep/basis.hpp"

namespace ksep {

using Complex = std::complex<double>;

namespace tolerance {
inline constexpr double prune = 1e-15;
inline constexpr double norm = 1e-12;
inline constexpr double trace = 1e-10;
inline constexpr double diagonal = 1e-12;
}  // namespace tolerance

struct Amplitude {
  Mask bits;
  Complex value;
};

/// Sparse N-qubit ket. Amplitudes are kept sorted by basis bits; magnitudes
/// below `tolerance::prune` are dropped.
class PureState {
 public:
  /// Validates unit norm (within tolerance::norm) and distinct keys.
  PureState(int n_qubits, std::vector<Amplitude> amplitudes);

  /// Rescales to unit norm before validating.
  static PureState normalized(int n_qubits, std::vector<Amplitude> amplitudes);

  int n_qubits() const noexcept { return n_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::size_t support_size() const noexcept { return amps_.size(); }

  Complex amplitude(const BasisState& state) const;
  Complex amplitude_at(Mask bits) const noexcept;

  double norm_squared() const noexcept;

 private:
  PureState() = default;
  static std::vector<Amplitude> canonicalize(int n_qubits, std::vector<Amplitude> amplitudes);

  int n_ = 0;
  std::vector<Amplitude> amps_;
};

/// Upper-triangle entry (row <= col) of a density matrix.
struct MatrixEntry {
  Mask row;
  Mask col;
  Complex value;
};

struct WeightedState {
  double weight;
  PureState state;
};

/// Sparse Hermitian operator on 2^N dimensions.
///
/// The operator is held as the sum of three parts, none of which is ever
/// expanded to the dense dimension:
///   explicit upper-triangle entries (lower triangle implied by Hermiticity),
///   nonnegatively weighted projectors |psi><psi|, and
///   a multiple of the identity.
/// The identity part is what lets white-noise mixtures at N ~ 20+ be queried
/// without enumerating a 2^N diagonal.
class DensityMatrix {
 public:
  /// Explicit form. Requires row <= col, no duplicates, real and nonnegative
  /// diagonal, and unit trace.
  static DensityMatrix from_entries(int n_qubits, std::vector<MatrixEntry> entries);

  /// sum_i w_i |psi_i><psi_i| + identity_weight * I, unit trace required.
  static DensityMatrix mixture(int n_qubits, std::vector<WeightedState> components,
                               double identity_weight = 0.0);

  int n_qubits() const noexcept { return n_; }

  /// <row|rho|col>; throws on width mismatch.
  Complex element(const BasisState& row, const BasisState& col) const;

  /// Unchecked variant for evaluator inner loops.
  Complex element_at(Mask row, Mask col) const noexcept;
  double diagonal_at(Mask bits) const noexcept { return element_at(bits, bits).real(); }

  double trace() const noexcept;

  std::span<const MatrixEntry> explicit_entries() const noexcept { return entries_; }
  std::span<const WeightedState> components() const noexcept { return components_; }
  double identity_weight() const noexcept { return identity_weight_; }

  /// Every nonzero upper-triangle entry of the full operator, sorted by
  /// (row, col). Expands the identity part, so refuses N > 20 when it is set.
  std::vector<MatrixEntry> materialize() const;

 private:
  DensityMatrix() = default;
  void check_trace() const;

  int n_ = 0;
  std::vector<MatrixEntry> entries_;
  std::vector<WeightedState> components_;
  double identity_weight_ = 0.0;
};

/// a |psi><psi| + (1 - a) I / 2^N for a supplied per evaluation.
class NoiseFamily {
 public:
  explicit NoiseFamily(PureState base) : base_(std::move(base)) {}

  int n_qubits() const noexcept { return base_.n_qubits(); }
  const PureState& base() const noexcept { return base_; }

  DensityMatrix realize(double a) const;

 private:
  PureState base_;
};

/// |D_m^N> = C(N,m)^{-1/2} sum over weight-m kets.
PureState dicke_state(int n, int m);

DensityMatrix white_noise_mix(const PureState& psi, double a);

Complex element(const DensityMatrix& rho, const BasisState& row, const BasisState& col);

/// Pure projector |psi><psi| as a density matrix.
DensityMatrix projector(const PureState& psi);

}  // namespace ksep
