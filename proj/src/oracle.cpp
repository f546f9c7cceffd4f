#include "ksep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <limits>
#include <random>

#include <nlohmann/json.hpp>

namespace ksep {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

void extend_partitions(int n, int k, int position, int used, std::vector<int>& labels,
                       std::vector<PartitionSpec>& out) {
  if (position == n) {
    if (used != k) return;
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
    for (int p = 0; p < n; ++p) blocks[static_cast<std::size_t>(labels[p])].push_back(p + 1);
    out.emplace_back(n, std::move(blocks));
    return;
  }
  // not enough positions left to open the missing blocks
  if (k - used > n - position) return;
  const int top = std::min(used, k - 1);
  for (int label = 0; label <= top; ++label) {
    labels[static_cast<std::size_t>(position)] = label;
    extend_partitions(n, k, position + 1, std::max(used, label + 1), labels, out);
  }
}

}  // namespace

PartitionSpec::PartitionSpec(int n_qubits, std::vector<std::vector<int>> blocks)
    : n_(n_qubits), blocks_(std::move(blocks)) {
  require(n_qubits >= 1 && n_qubits <= kMaxQubits, "qubit count must be in [1, 63]");
  std::vector<int> seen(static_cast<std::size_t>(n_qubits) + 1, 0);
  for (auto& block : blocks_) {
    require(!block.empty(), "partition blocks must be nonempty");
    std::sort(block.begin(), block.end());
    for (int p : block) {
      require(p >= 1 && p <= n_qubits, "partition position out of range");
      require(seen[static_cast<std::size_t>(p)]++ == 0, "partition blocks must be disjoint");
    }
  }
  for (int p = 1; p <= n_qubits; ++p) require(seen[static_cast<std::size_t>(p)] == 1, "partition must cover every qubit");
  std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::string PartitionSpec::to_string() const {
  std::string out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out += '|';
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i && n_ >= 10) out += ',';
      out += std::to_string(blocks_[b][i]);
    }
  }
  return out;
}

std::vector<PartitionSpec> enumerate_k_partitions(int n, int k) {
  require(n >= 1 && n <= 16, "partition enumeration supports 1 <= n <= 16");
  require(k >= 1 && k <= n, "k must satisfy 1 <= k <= n");
  std::vector<PartitionSpec> out;
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  extend_partitions(n, k, 0, 0, labels, out);
  std::sort(out.begin(), out.end(),
            [](const PartitionSpec& a, const PartitionSpec& b) { return a.blocks() < b.blocks(); });
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),   static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index),  static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

PureState random_product_pure(const PartitionSpec& partition, std::uint64_t seed) {
  const int n = partition.n_qubits();
  require(n <= 20, "random product states are dense; n must be <= 20");
  auto engine = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<std::vector<Complex>> factors;
  for (const auto& block : partition.blocks()) {
    std::vector<Complex> amps(std::size_t{1} << block.size());
    double norm2 = 0.0;
    for (auto& a : amps) {
      const double re = normal(engine);
      const double im = normal(engine);
      a = Complex(re, im);
      norm2 += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= scale;
    factors.push_back(std::move(amps));
  }

  const Mask dim = Mask{1} << n;
  std::vector<Amplitude> amplitudes;
  amplitudes.reserve(dim);
  for (Mask x = 0; x < dim; ++x) {
    Complex value(1.0, 0.0);
    for (std::size_t b = 0; b < factors.size(); ++b) {
      std::size_t local = 0;
      for (int p : partition.blocks()[b]) local = (local << 1) | ((x & position_bit(n, p)) != 0);
      value *= factors[b][local];
    }
    amplitudes.push_back({x, value});
  }
  return PureState::normalized(n, std::move(amplitudes));
}

DensityMatrix random_k_separable_mixed(int n, int k, int terms, std::uint64_t seed) {
  require(terms >= 1, "mixture needs at least one term");
  const auto partitions = enumerate_k_partitions(n, k);
  auto engine = make_engine(seed);
  std::exponential_distribution<double> exponential(1.0);
  std::uniform_int_distribution<std::size_t> pick(0, partitions.size() - 1);

  std::vector<WeightedState> components;
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const double w = exponential(engine);
    const auto& partition = partitions[pick(engine)];
    components.push_back({w, random_product_pure(partition, derive_seed(seed, 1, static_cast<std::uint64_t>(t)))});
    total += w;
  }
  for (auto& c : components) c.weight /= total;
  return DensityMatrix::mixture(n, std::move(components));
}

SoundnessReport soundness_scan(int n, int k, const CriterionContext& criterion, int trials, std::uint64_t seed) {
  require(trials >= 1, "soundness scan needs at least one trial");
  require(criterion.n_qubits() == n, "criterion width does not match n");
  require(criterion.k() <= k, "criterion k must not exceed the sampled separability k");
  const auto partitions = enumerate_k_partitions(n, k);

  SoundnessReport report;
  report.n = n;
  report.k = k;
  report.criterion = criterion.name();
  report.criterion_k = criterion.k();
  report.max_value = -std::numeric_limits<double>::infinity();

  auto record = [&](DensityMatrix rho, bool mixed, std::uint64_t trial) {
    const double value = detect(rho, criterion).value;
    if (value > report.max_value) {
      report.max_value = value;
      if (value > kViolationThreshold) report.violation = SoundnessViolation{std::move(rho), value, mixed, trial};
    }
  };

  for (int t = 0; t < trials; ++t) {
    const auto trial = static_cast<std::uint64_t>(t);
    auto engine = make_engine(derive_seed(seed, 2, trial));
    std::uniform_int_distribution<std::size_t> pick(0, partitions.size() - 1);
    const auto& partition = partitions[pick(engine)];
    record(projector(random_product_pure(partition, derive_seed(seed, 0, trial))), false, trial);
    ++report.pure_trials;
  }

  const int mixed_trials = trials / 10;
  for (int t = 0; t < mixed_trials; ++t) {
    const auto trial = static_cast<std::uint64_t>(t);
    auto engine = make_engine(derive_seed(seed, 3, trial));
    std::uniform_int_distribution<int> terms(2, 6);
    record(random_k_separable_mixed(n, k, terms(engine), derive_seed(seed, 4, trial)), true, trial);
    ++report.mixed_trials;
  }
  return report;
}

std::string violation_json(const SoundnessReport& report) {
  nlohmann::json doc = nlohmann::json::object();
  doc["criterion"] = report.criterion;
  doc["k"] = report.criterion_k;
  doc["value"] = report.violation ? report.violation->value : report.max_value;
  return doc.dump();
}

}  // namespace ksep
