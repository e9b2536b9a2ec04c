#include "qpt/statevector.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "qpt/kernels.hpp"

namespace qpt {

std::string to_bitstring(std::uint64_t value, int width) {
  std::string bits(static_cast<std::size_t>(width), '0');
  for (int b = 0; b < width; ++b) {
    if ((value >> b) & 1) bits[static_cast<std::size_t>(width - 1 - b)] = '1';
  }
  return bits;
}

std::uint64_t from_bitstring(std::string_view bits) {
  std::uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bad bitstring: " + std::string(bits));
    value = (value << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

Gate Gate::mcx(std::vector<int> controls, int target) {
  return {GateKind::MCX, std::move(controls), target};
}

Gate Gate::mcz(std::vector<int> qubits) {
  if (qubits.empty()) throw std::invalid_argument("MCZ needs at least one qubit");
  const int target = qubits.back();
  qubits.pop_back();
  return {GateKind::MCZ, std::move(qubits), target};
}

std::vector<int> Gate::qubits() const {
  std::vector<int> all = controls;
  all.push_back(target);
  return all;
}

void Gate::validate(int n_qubits) const {
  auto all = qubits();
  for (int q : all) {
    if (q < 0 || q >= n_qubits) {
      throw std::out_of_range("gate qubit " + std::to_string(q) +
                              " out of range for " + std::to_string(n_qubits) +
                              " qubits");
    }
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw std::invalid_argument("gate qubits must be distinct");
  }
  if ((kind == GateKind::H || kind == GateKind::X || kind == GateKind::Z) &&
      !controls.empty()) {
    throw std::invalid_argument("H/X/Z take no controls");
  }
}

QubitLayout::QubitLayout(std::vector<RegisterSpan> registers)
    : registers_(std::move(registers)) {
  int next = 0;
  for (const auto& reg : registers_) {
    if (reg.count < 1) throw std::invalid_argument("register " + reg.name + " is empty");
    if (reg.first != next) {
      throw std::invalid_argument("registers must tile qubits contiguously from 0");
    }
    for (const auto& other : registers_) {
      if (&other != &reg && other.name == reg.name) {
        throw std::invalid_argument("duplicate register name " + reg.name);
      }
    }
    next += reg.count;
  }
  total_qubits_ = next;
}

bool QubitLayout::has_register(std::string_view name) const {
  for (const auto& reg : registers_) {
    if (reg.name == name) return true;
  }
  return false;
}

const RegisterSpan& QubitLayout::find(std::string_view name) const {
  for (const auto& reg : registers_) {
    if (reg.name == name) return reg;
  }
  throw std::invalid_argument("unknown register: " + std::string(name));
}

std::uint64_t QubitLayout::extract(std::uint64_t basis, const RegisterSpan& reg) const {
  std::uint64_t value = 0;
  for (int b = 0; b < reg.count; ++b) {
    value |= ((basis >> (reg.first + b)) & 1) << b;
  }
  return value;
}

std::uint64_t QubitLayout::extract(std::uint64_t basis, std::string_view name) const {
  return extract(basis, find(name));
}

std::string QubitLayout::key(std::uint64_t basis) const {
  std::string out;
  for (const auto& reg : registers_) {
    if (!out.empty()) out += ' ';
    out += to_bitstring(extract(basis, reg), reg.count);
  }
  return out;
}

std::string QubitLayout::key(std::uint64_t basis,
                             std::span<const std::string> names) const {
  std::string out;
  for (const auto& reg : select(names)) {
    if (!out.empty()) out += ' ';
    out += to_bitstring(extract(basis, reg), reg.count);
  }
  return out;
}

std::uint64_t QubitLayout::parse_key(std::string_view key) const {
  std::string flat;
  flat.reserve(key.size());
  for (char c : key) {
    if (c == ' ') continue;
    flat.push_back(c);
  }
  if (static_cast<int>(flat.size()) != total_qubits_) {
    throw std::invalid_argument("key '" + std::string(key) + "' does not cover " +
                                std::to_string(total_qubits_) + " qubits");
  }
  // flat is MSB-first over the whole layout only if registers are rendered in
  // layout order; rebuild the basis index register by register.
  std::uint64_t basis = 0;
  std::size_t pos = 0;
  for (const auto& reg : registers_) {
    const std::uint64_t value =
        from_bitstring(flat.substr(pos, static_cast<std::size_t>(reg.count)));
    basis |= value << reg.first;
    pos += static_cast<std::size_t>(reg.count);
  }
  return basis;
}

std::vector<RegisterSpan> QubitLayout::select(std::span<const std::string> names) const {
  for (const auto& name : names) find(name);  // layout error on unknown names
  std::vector<RegisterSpan> picked;
  for (const auto& reg : registers_) {
    if (std::find(names.begin(), names.end(), reg.name) != names.end()) {
      picked.push_back(reg);
    }
  }
  return picked;
}

double Histogram::total() const {
  double sum = 0.0;
  for (const auto& [key, p] : entries) sum += p;
  return sum;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::length_error("n_qubits must be in [1, " +
                            std::to_string(kMaxQubits) + "], got " +
                            std::to_string(n_qubits));
  }
  amplitudes_.assign(std::uint64_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amplitudes_[0] = Amplitude{1.0, 0.0};
}

double StateVector::norm_sq() const {
  double sum = 0.0;
  for (const Amplitude& a : amplitudes_) sum += std::norm(a);
  return sum;
}

void StateVector::apply(const Gate& gate) {
  gate.validate(n_qubits_);
  kernels::apply_gate(amplitudes_, gate);
}

void StateVector::apply(std::span<const Gate> gates) {
  for (const Gate& gate : gates) apply(gate);
}

Histogram probabilities(const StateVector& state) {
  Histogram hist;
  const auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p < kHistogramEpsilon) continue;
    hist.entries.emplace(to_bitstring(i, state.n_qubits()), p);
  }
  return hist;
}

Histogram probabilities(const StateVector& state, const QubitLayout& layout) {
  if (layout.total_qubits() != state.n_qubits()) {
    throw std::invalid_argument("layout covers " +
                                std::to_string(layout.total_qubits()) +
                                " qubits, state has " +
                                std::to_string(state.n_qubits()));
  }
  Histogram hist;
  for (const auto& reg : layout.registers()) hist.labels.push_back(reg.name);
  const auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p < kHistogramEpsilon) continue;
    hist.entries.emplace(layout.key(i), p);
  }
  return hist;
}

Histogram marginal(const Histogram& hist, const QubitLayout& layout,
                   std::span<const std::string> keep) {
  const auto kept = layout.select(keep);
  Histogram out;
  for (const auto& reg : kept) out.labels.push_back(reg.name);
  std::vector<std::string> kept_names;
  for (const auto& reg : kept) kept_names.push_back(reg.name);
  for (const auto& [key, p] : hist.entries) {
    const std::uint64_t basis = layout.parse_key(key);
    out.entries[layout.key(basis, kept_names)] += p;
  }
  return out;
}

std::map<std::string, std::uint64_t> sample(const Histogram& hist,
                                            std::uint64_t shots,
                                            std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  if (hist.entries.empty()) throw std::invalid_argument("cannot sample an empty histogram");

  std::vector<const std::string*> keys;
  std::vector<double> cumulative;
  keys.reserve(hist.entries.size());
  cumulative.reserve(hist.entries.size());
  double running = 0.0;
  for (const auto& [key, p] : hist.entries) {
    running += p;
    keys.push_back(&key);
    cumulative.push_back(running);
  }

  std::mt19937_64 rng(seed);
  std::map<std::string, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    // Top 53 bits -> uniform double in [0, 1); pinned across platforms,
    // unlike std::uniform_real_distribution.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * running;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx = std::min(
        static_cast<std::size_t>(it - cumulative.begin()), keys.size() - 1);
    ++counts[*keys[idx]];
  }
  return counts;
}

}  // namespace qpt
