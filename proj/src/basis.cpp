#include "ksep/basis.hpp"

#include <algorithm>

namespace ksep {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::non_hermitian: return "non_hermitian";
    case ErrorKind::negative_diagonal: return "negative_diagonal";
    case ErrorKind::trace: return "trace";
    case ErrorKind::norm: return "norm";
    case ErrorKind::not_detectable: return "not_detectable";
    case ErrorKind::non_monotone: return "non_monotone";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __extension__ using Wide = unsigned __int128;
  Wide result = 1;
  for (int i = 1; i <= k; ++i) {
    // exact at every step: result * (n-k+i) is divisible by i
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(result);
}

BasisState::BasisState(int n_qubits, Mask bits) : n_(n_qubits), bits_(bits) {
  require(n_qubits >= 1 && n_qubits <= kMaxQubits,
          "qubit count must be in [1, 63], got " + std::to_string(n_qubits));
  require(bits <= full_mask(n_qubits), "basis bits exceed register width");
}

BasisState BasisState::from_string(std::string_view bitstring) {
  const int n = static_cast<int>(bitstring.size());
  if (n < 1 || n > kMaxQubits) {
    fail(ErrorKind::syntax, "bit string length must be in [1, 63]");
  }
  Mask bits = 0;
  for (char c : bitstring) {
    if (c != '0' && c != '1') {
      fail(ErrorKind::syntax, "bit string may contain only 0/1: '" + std::string(bitstring) + "'");
    }
    bits = (bits << 1) | static_cast<Mask>(c - '0');
  }
  return BasisState(n, bits);
}

bool BasisState::is_set(int position) const {
  require(position >= 1 && position <= n_, "qubit position out of range");
  return (bits_ & position_bit(n_, position)) != 0;
}

BasisState BasisState::flipped(int position) const {
  require(position >= 1 && position <= n_, "qubit position out of range");
  return BasisState(n_, bits_ ^ position_bit(n_, position));
}

std::string BasisState::to_string() const {
  std::string out(static_cast<std::size_t>(n_), '0');
  for (int p = 1; p <= n_; ++p) {
    if (bits_ & position_bit(n_, p)) out[static_cast<std::size_t>(p - 1)] = '1';
  }
  return out;
}

ExcitationPattern::ExcitationPattern(int n_qubits, std::vector<int> excited)
    : n_(n_qubits), excited_(std::move(excited)) {
  require(n_qubits >= 1 && n_qubits <= kMaxQubits, "qubit count must be in [1, 63]");
  std::sort(excited_.begin(), excited_.end());
  require(std::adjacent_find(excited_.begin(), excited_.end()) == excited_.end(),
          "excitation positions must be distinct");
  for (int p : excited_) {
    require(p >= 1 && p <= n_qubits, "excitation position out of range");
  }
}

BasisState pattern_to_basis(const ExcitationPattern& pattern) {
  Mask bits = 0;
  for (int p : pattern.excited()) bits |= position_bit(pattern.n_qubits(), p);
  return BasisState(pattern.n_qubits(), bits);
}

ExcitationPattern basis_to_pattern(const BasisState& state) {
  std::vector<int> excited;
  for (int p = 1; p <= state.n_qubits(); ++p) {
    if (state.is_set(p)) excited.push_back(p);
  }
  return ExcitationPattern(state.n_qubits(), std::move(excited));
}

}  // namespace ksep
