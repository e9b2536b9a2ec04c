#pragma once

// Test-only helpers, independent of the state-vector kernels they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "qpt/statevector.hpp"

namespace qpt_test {

// A computational basis state with a +/-1 phase. The arithmetic and oracle
// circuits use only X/MCX/Z/MCZ, which map basis states to basis states, so
// they can be checked exhaustively without touching the simulator.
struct BasisState {
  std::uint64_t index = 0;
  int sign = +1;
};

inline BasisState apply_classical(const std::vector<qpt::Gate>& gates,
                                  std::uint64_t start) {
  BasisState s{start, +1};
  for (const auto& g : gates) {
    switch (g.kind) {
      case qpt::GateKind::X:
        s.index ^= std::uint64_t{1} << g.target;
        break;
      case qpt::GateKind::Z:
        if ((s.index >> g.target) & 1) s.sign = -s.sign;
        break;
      case qpt::GateKind::MCX: {
        bool all = true;
        for (int c : g.controls) all = all && ((s.index >> c) & 1);
        if (all) s.index ^= std::uint64_t{1} << g.target;
        break;
      }
      case qpt::GateKind::MCZ: {
        bool all = (s.index >> g.target) & 1;
        for (int c : g.controls) all = all && ((s.index >> c) & 1);
        if (all) s.sign = -s.sign;
        break;
      }
      case qpt::GateKind::H:
        throw std::logic_error("H is not basis-preserving");
    }
  }
  return s;
}

inline qpt::Gate random_gate(std::mt19937_64& rng, int n_qubits) {
  std::uniform_int_distribution<int> kind_dist(0, 4);
  std::uniform_int_distribution<int> qubit_dist(0, n_qubits - 1);
  const int kind = kind_dist(rng);
  if (kind < 3) {
    const int q = qubit_dist(rng);
    return kind == 0 ? qpt::Gate::h(q) : kind == 1 ? qpt::Gate::x(q) : qpt::Gate::z(q);
  }
  std::vector<int> pool(static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) pool[static_cast<std::size_t>(q)] = q;
  std::shuffle(pool.begin(), pool.end(), rng);
  const int width = 1 + std::uniform_int_distribution<int>(0, std::min(3, n_qubits - 1))(rng);
  std::vector<int> qubits(pool.begin(), pool.begin() + width);
  if (kind == 3) {
    const int target = qubits.back();
    qubits.pop_back();
    return qpt::Gate::mcx(qubits, target);
  }
  return qpt::Gate::mcz(qubits);
}

inline std::vector<qpt::Gate> random_gates(std::mt19937_64& rng, int n_qubits,
                                           int count) {
  std::vector<qpt::Gate> gates;
  gates.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) gates.push_back(random_gate(rng, n_qubits));
  return gates;
}

inline double max_amp_diff(std::span<const qpt::Amplitude> a,
                           std::span<const qpt::Amplitude> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

// sin^2((2k+1) asin(sqrt(l/N))): success probability after k iterations.
inline double analytic_success(int n_search, std::uint64_t l, int k) {
  const double n_space = static_cast<double>(std::uint64_t{1} << n_search);
  const double theta = std::asin(std::sqrt(static_cast<double>(l) / n_space));
  const double s = std::sin((2.0 * k + 1.0) * theta);
  return s * s;
}

}  // namespace qpt_test
