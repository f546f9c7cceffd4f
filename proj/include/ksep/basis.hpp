#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ksep/error.hpp"

namespace ksep {

using Mask = std::uint64_t;

/// Widest register a 64-bit mask can index with `1 << n` still defined.
inline constexpr int kMaxQubits = 63;

/// Mask bit for 1-based qubit `position`; qubit 1 is the most significant.
constexpr Mask position_bit(int n_qubits, int position) {
  return Mask{1} << (n_qubits - position);
}

constexpr Mask full_mask(int n_qubits) {
  return (Mask{1} << n_qubits) - 1;
}

std::uint64_t binomial(int n, int k);

/// Visits every n-bit mask of popcount `weight` in ascending numeric order.
template <typename Visitor>
void for_each_weight_mask(int n_qubits, int weight, Visitor&& visit) {
  if (weight < 0 || weight > n_qubits) return;
  if (weight == 0) {
    visit(Mask{0});
    return;
  }
  const Mask limit = Mask{1} << n_qubits;
  Mask v = (Mask{1} << weight) - 1;
  while (v < limit) {
    visit(v);
    // Gosper's hack: next larger integer with the same popcount.
    const Mask c = v & (~v + 1);
    const Mask r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
}

/// Computational basis ket |i_1 ... i_N> stored as a bitmask.
class BasisState {
 public:
  BasisState(int n_qubits, Mask bits);

  static BasisState from_string(std::string_view bitstring);

  int n_qubits() const noexcept { return n_; }
  Mask bits() const noexcept { return bits_; }

  bool is_set(int position) const;
  BasisState flipped(int position) const;
  int popcount() const noexcept { return std::popcount(bits_); }

  /// 1-based row/column index of this ket in a dense matrix.
  std::uint64_t matrix_index() const noexcept { return bits_ + 1; }

  std::string to_string() const;

  friend bool operator==(const BasisState&, const BasisState&) = default;
  friend auto operator<=>(const BasisState&, const BasisState&) = default;

 private:
  int n_;
  Mask bits_;
};

/// |phi_{i_1,...,i_m}>: ones at the listed positions, zeros elsewhere.
class ExcitationPattern {
 public:
  ExcitationPattern(int n_qubits, std::vector<int> excited);

  int n_qubits() const noexcept { return n_; }
  const std::vector<int>& excited() const noexcept { return excited_; }

 private:
  int n_;
  std::vector<int> excited_;
};

BasisState pattern_to_basis(const ExcitationPattern& pattern);
ExcitationPattern basis_to_pattern(const BasisState& state);

}  // namespace ksep
