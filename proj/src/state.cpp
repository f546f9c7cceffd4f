#include "ksep/state.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace ksep {

namespace {

void check_width(int n_qubits) {
  require(n_qubits >= 1 && n_qubits <= kMaxQubits,
          "qubit count must be in [1, 63], got " + std::to_string(n_qubits));
}

bool entry_less(const MatrixEntry& e, Mask row, Mask col) {
  return e.row < row || (e.row == row && e.col < col);
}

}  // namespace

// ---------------------------------------------------------------------------
// PureState

std::vector<Amplitude> PureState::canonicalize(int n_qubits, std::vector<Amplitude> amplitudes) {
  check_width(n_qubits);
  const Mask limit = full_mask(n_qubits);
  for (const auto& a : amplitudes) {
    require(a.bits <= limit, "amplitude key exceeds register width");
    require(std::isfinite(a.value.real()) && std::isfinite(a.value.imag()),
            "amplitude must be finite");
  }
  std::sort(amplitudes.begin(), amplitudes.end(),
            [](const Amplitude& x, const Amplitude& y) { return x.bits < y.bits; });
  auto dup = std::adjacent_find(amplitudes.begin(), amplitudes.end(),
                                [](const Amplitude& x, const Amplitude& y) { return x.bits == y.bits; });
  require(dup == amplitudes.end(), "duplicate basis state in amplitude list");
  std::erase_if(amplitudes, [](const Amplitude& a) { return std::abs(a.value) < tolerance::prune; });
  return amplitudes;
}

PureState::PureState(int n_qubits, std::vector<Amplitude> amplitudes)
    : n_(n_qubits), amps_(canonicalize(n_qubits, std::move(amplitudes))) {
  const double norm2 = norm_squared();
  if (std::abs(norm2 - 1.0) > tolerance::norm) {
    fail(ErrorKind::norm, "pure state norm^2 is " + std::to_string(norm2) + ", expected 1");
  }
}

PureState PureState::normalized(int n_qubits, std::vector<Amplitude> amplitudes) {
  PureState out;
  out.n_ = n_qubits;
  out.amps_ = canonicalize(n_qubits, std::move(amplitudes));
  const double norm2 = out.norm_squared();
  if (!(norm2 > 0.0)) fail(ErrorKind::norm, "cannot normalize the zero vector");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : out.amps_) a.value *= scale;
  return out;
}

Complex PureState::amplitude(const BasisState& state) const {
  require(state.n_qubits() == n_, "basis state width does not match pure state");
  return amplitude_at(state.bits());
}

Complex PureState::amplitude_at(Mask bits) const noexcept {
  auto it = std::lower_bound(amps_.begin(), amps_.end(), bits,
                             [](const Amplitude& a, Mask b) { return a.bits < b; });
  if (it != amps_.end() && it->bits == bits) return it->value;
  return {};
}

double PureState::norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a.value);
  return sum;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::from_entries(int n_qubits, std::vector<MatrixEntry> entries) {
  check_width(n_qubits);
  const Mask limit = full_mask(n_qubits);
  for (auto& e : entries) {
    require(e.row <= limit && e.col <= limit, "matrix entry key exceeds register width");
    require(std::isfinite(e.value.real()) && std::isfinite(e.value.imag()),
            "matrix entry must be finite");
    if (e.row > e.col) {
      fail(ErrorKind::non_hermitian,
           "entry (" + BasisState(n_qubits, e.row).to_string() + ", " +
               BasisState(n_qubits, e.col).to_string() +
               ") lies below the diagonal; only row <= col may be given");
    }
    if (e.row == e.col) {
      if (std::abs(e.value.imag()) > tolerance::diagonal) {
        fail(ErrorKind::non_hermitian, "diagonal entry " + BasisState(n_qubits, e.row).to_string() +
                                           " has imaginary part " + std::to_string(e.value.imag()));
      }
      if (e.value.real() < -tolerance::diagonal) {
        fail(ErrorKind::negative_diagonal, "diagonal entry " + BasisState(n_qubits, e.row).to_string() +
                                               " is negative: " + std::to_string(e.value.real()));
      }
      e.value = Complex(e.value.real(), 0.0);
    }
  }
  std::sort(entries.begin(), entries.end(), [](const MatrixEntry& x, const MatrixEntry& y) {
    return entry_less(x, y.row, y.col);
  });
  auto dup = std::adjacent_find(entries.begin(), entries.end(), [](const MatrixEntry& x, const MatrixEntry& y) {
    return x.row == y.row && x.col == y.col;
  });
  if (dup != entries.end()) {
    fail(ErrorKind::parameter, "duplicate matrix entry (" + BasisState(n_qubits, dup->row).to_string() + ", " +
                                   BasisState(n_qubits, dup->col).to_string() + ")");
  }
  std::erase_if(entries, [](const MatrixEntry& e) { return std::abs(e.value) < tolerance::prune; });

  DensityMatrix rho;
  rho.n_ = n_qubits;
  rho.entries_ = std::move(entries);
  rho.check_trace();
  return rho;
}

DensityMatrix DensityMatrix::mixture(int n_qubits, std::vector<WeightedState> components,
                                     double identity_weight) {
  check_width(n_qubits);
  require(std::isfinite(identity_weight) && identity_weight >= 0.0, "identity weight must be >= 0");
  for (const auto& c : components) {
    require(c.state.n_qubits() == n_qubits, "mixture component width mismatch");
    require(std::isfinite(c.weight) && c.weight >= 0.0, "mixture weights must be >= 0");
  }
  std::erase_if(components, [](const WeightedState& c) { return c.weight == 0.0; });

  DensityMatrix rho;
  rho.n_ = n_qubits;
  rho.components_ = std::move(components);
  rho.identity_weight_ = identity_weight;
  rho.check_trace();
  return rho;
}

void DensityMatrix::check_trace() const {
  const double t = trace();
  if (!(std::abs(t - 1.0) <= tolerance::trace)) {
    fail(ErrorKind::trace, "trace is " + std::to_string(t) + ", expected 1");
  }
}

Complex DensityMatrix::element(const BasisState& row, const BasisState& col) const {
  if (row.n_qubits() != n_ || col.n_qubits() != n_) {
    fail(ErrorKind::parameter, "basis width " + std::to_string(row.n_qubits()) + "/" +
                                   std::to_string(col.n_qubits()) + " does not match density matrix width " +
                                   std::to_string(n_));
  }
  return element_at(row.bits(), col.bits());
}

Complex DensityMatrix::element_at(Mask row, Mask col) const noexcept {
  if (row > col) return std::conj(element_at(col, row));

  Complex value{};
  if (!entries_.empty()) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                               [](const MatrixEntry& e, const std::pair<Mask, Mask>& key) {
                                 return entry_less(e, key.first, key.second);
                               });
    if (it != entries_.end() && it->row == row && it->col == col) value += it->value;
  }
  for (const auto& c : components_) {
    const Complex x = c.state.amplitude_at(row);
    if (x == Complex{}) continue;
    value += c.weight * x * std::conj(c.state.amplitude_at(col));
  }
  if (row == col) value = Complex(value.real() + identity_weight_, 0.0);
  return value;
}

double DensityMatrix::trace() const noexcept {
  double t = 0.0;
  for (const auto& e : entries_) {
    if (e.row == e.col) t += e.value.real();
  }
  for (const auto& c : components_) t += c.weight * c.state.norm_squared();
  t += identity_weight_ * std::ldexp(1.0, n_);
  return t;
}

std::vector<MatrixEntry> DensityMatrix::materialize() const {
  if (identity_weight_ != 0.0) {
    require(n_ <= 20, "refusing to expand an identity component beyond 20 qubits");
  }
  std::map<std::pair<Mask, Mask>, Complex> acc;
  for (const auto& e : entries_) acc[{e.row, e.col}] += e.value;
  for (const auto& c : components_) {
    const auto amps = c.state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
      for (std::size_t j = i; j < amps.size(); ++j) {
        acc[{amps[i].bits, amps[j].bits}] += c.weight * amps[i].value * std::conj(amps[j].value);
      }
    }
  }
  if (identity_weight_ != 0.0) {
    const Mask dim = Mask{1} << n_;
    for (Mask x = 0; x < dim; ++x) acc[{x, x}] += identity_weight_;
  }
  std::vector<MatrixEntry> out;
  out.reserve(acc.size());
  for (const auto& [key, value] : acc) {
    if (std::abs(value) < tolerance::prune) continue;
    const Complex v = key.first == key.second ? Complex(value.real(), 0.0) : value;
    out.push_back({key.first, key.second, v});
  }
  return out;
}

// ---------------------------------------------------------------------------

DensityMatrix NoiseFamily::realize(double a) const { return white_noise_mix(base_, a); }

PureState dicke_state(int n, int m) {
  check_width(n);
  require(m >= 1 && m <= n - 1, "Dicke excitation count must satisfy 1 <= m <= n-1, got m=" +
                                    std::to_string(m) + ", n=" + std::to_string(n));
  const auto count = binomial(n, m);
  require(count <= (std::uint64_t{1} << 26), "Dicke support too large to store");
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  std::vector<Amplitude> amps;
  amps.reserve(count);
  for_each_weight_mask(n, m, [&](Mask bits) { amps.push_back({bits, Complex(amp, 0.0)}); });
  return PureState(n, std::move(amps));
}

DensityMatrix white_noise_mix(const PureState& psi, double a) {
  require(std::isfinite(a) && a >= 0.0 && a <= 1.0, "noise parameter a must lie in [0, 1]");
  const int n = psi.n_qubits();
  return DensityMatrix::mixture(n, {{a, psi}}, (1.0 - a) * std::ldexp(1.0, -n));
}

DensityMatrix projector(const PureState& psi) { return DensityMatrix::mixture(psi.n_qubits(), {{1.0, psi}}); }

Complex element(const DensityMatrix& rho, const BasisState& row, const BasisState& col) {
  return rho.element(row, col);
}

}  // namespace ksep
