#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpt {

using Amplitude = std::complex<double>;

// Probabilities smaller than this are dropped from histograms (floating-point
// dust from cancelled amplitudes, not real measurement outcomes).
inline constexpr double kHistogramEpsilon = 1e-12;

std::string to_bitstring(std::uint64_t value, int width);
std::uint64_t from_bitstring(std::string_view bits);

enum class GateKind { H, X, Z, MCX, MCZ };

// One primitive gate. `controls` is empty for H/X/Z. An MCZ is symmetric in
// all its qubits; by convention the last listed qubit is stored as the target.
// MCX/MCZ with zero controls degenerate to X/Z.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<int> controls;
  int target = 0;

  static Gate h(int qubit) { return {GateKind::H, {}, qubit}; }
  static Gate x(int qubit) { return {GateKind::X, {}, qubit}; }
  static Gate z(int qubit) { return {GateKind::Z, {}, qubit}; }
  static Gate mcx(std::vector<int> controls, int target);
  static Gate mcz(std::vector<int> qubits);

  // Every qubit the gate touches, controls first.
  std::vector<int> qubits() const;
  // Throws std::out_of_range / std::invalid_argument on bad indices.
  void validate(int n_qubits) const;

  bool operator==(const Gate&) const = default;
};

struct RegisterSpan {
  std::string name;
  int first = 0;
  int count = 0;

  bool operator==(const RegisterSpan&) const = default;
};

// Named, contiguous qubit registers. Qubit 0 is the global least-significant
// bit; within a register the first qubit is the register's LSB. Registers are
// disjoint and cover qubits [0, total_qubits) exactly, in layout order.
class QubitLayout {
 public:
  QubitLayout() = default;
  explicit QubitLayout(std::vector<RegisterSpan> registers);

  int total_qubits() const { return total_qubits_; }
  const std::vector<RegisterSpan>& registers() const { return registers_; }
  bool has_register(std::string_view name) const;
  const RegisterSpan& find(std::string_view name) const;

  // Value held by a register in the given basis state.
  std::uint64_t extract(std::uint64_t basis, const RegisterSpan& reg) const;
  std::uint64_t extract(std::uint64_t basis, std::string_view name) const;

  // Histogram key: per-register bits, MSB first, space separated, layout
  // order. `names` restricts to a subset (rendered in layout order).
  std::string key(std::uint64_t basis) const;
  std::string key(std::uint64_t basis, std::span<const std::string> names) const;

  // Inverse of key(): accepts grouped or ungrouped bitstrings over all qubits.
  std::uint64_t parse_key(std::string_view key) const;

  // The subset of registers() whose names appear in `names`, layout order.
  std::vector<RegisterSpan> select(std::span<const std::string> names) const;

  bool operator==(const QubitLayout&) const = default;

 private:
  std::vector<RegisterSpan> registers_;
  int total_qubits_ = 0;
};

// Measurement distribution. Keys are bitstrings, rendered MSB-first per
// register field and space-separated in layout order; `labels` names the
// fields (empty means one unnamed field spanning all qubits).
struct Histogram {
  std::vector<std::string> labels;
  std::map<std::string, double> entries;

  double total() const;
};

// Dense exact state vector over n qubits, |0...0> initially.
class StateVector {
 public:
  static constexpr int kMaxQubits = 24;

  explicit StateVector(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t size() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  Amplitude amplitude(std::uint64_t basis) const { return amplitudes_.at(basis); }
  double norm_sq() const;

  void apply(const Gate& gate);
  void apply(std::span<const Gate> gates);

 private:
  int n_qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

Histogram probabilities(const StateVector& state);
Histogram probabilities(const StateVector& state, const QubitLayout& layout);

// Sums out every register not listed in `keep`. Keys of `hist` must cover all
// layout qubits. Unknown register names throw std::invalid_argument.
Histogram marginal(const Histogram& hist, const QubitLayout& layout,
                   std::span<const std::string> keep);

// Seeded multinomial draw from the exact distribution; deterministic for a
// fixed seed (the generator and the uniform-double mapping are both pinned).
std::map<std::string, std::uint64_t> sample(const Histogram& hist,
                                            std::uint64_t shots,
                                            std::uint64_t seed);

}  // namespace qpt
