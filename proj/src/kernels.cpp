#include "qpt/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace qpt {
namespace {

// Below this many amplitudes the fork/join overhead outweighs the loop.
constexpr std::uint64_t kParallelMin = std::uint64_t{1} << 14;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::uint64_t control_mask_of(const Gate& gate) {
  std::uint64_t mask = 0;
  for (int q : gate.controls) mask |= std::uint64_t{1} << q;
  return mask;
}

}  // namespace

namespace kernels {

void apply_h(std::span<Amplitude> amps, int qubit) {
  const std::int64_t pairs = static_cast<std::int64_t>(amps.size() / 2);
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  const std::uint64_t low = mask - 1;
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelMin)
  for (std::int64_t p = 0; p < pairs; ++p) {
    const std::uint64_t u = static_cast<std::uint64_t>(p);
    const std::uint64_t i0 = ((u & ~low) << 1) | (u & low);
    const std::uint64_t i1 = i0 | mask;
    const Amplitude a = amps[i0];
    const Amplitude b = amps[i1];
    amps[i0] = (a + b) * kInvSqrt2;
    amps[i1] = (a - b) * kInvSqrt2;
  }
}

void apply_x(std::span<Amplitude> amps, int qubit) {
  const std::int64_t pairs = static_cast<std::int64_t>(amps.size() / 2);
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  const std::uint64_t low = mask - 1;
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelMin)
  for (std::int64_t p = 0; p < pairs; ++p) {
    const std::uint64_t u = static_cast<std::uint64_t>(p);
    const std::uint64_t i0 = ((u & ~low) << 1) | (u & low);
    std::swap(amps[i0], amps[i0 | mask]);
  }
}

void apply_z(std::span<Amplitude> amps, int qubit) {
  const std::int64_t n = static_cast<std::int64_t>(amps.size());
  const std::uint64_t mask = std::uint64_t{1} << qubit;
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelMin)
  for (std::int64_t i = 0; i < n; ++i) {
    if (static_cast<std::uint64_t>(i) & mask) amps[i] = -amps[i];
  }
}

void apply_mcx(std::span<Amplitude> amps, std::uint64_t control_mask,
               std::uint64_t target_mask) {
  const std::int64_t n = static_cast<std::int64_t>(amps.size());
  // Each i with controls set and target clear owns the swap with i|target.
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelMin)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t u = static_cast<std::uint64_t>(i);
    if ((u & control_mask) == control_mask && (u & target_mask) == 0) {
      std::swap(amps[u], amps[u | target_mask]);
    }
  }
}

void apply_mcz(std::span<Amplitude> amps, std::uint64_t qubit_mask) {
  const std::int64_t n = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelMin)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t u = static_cast<std::uint64_t>(i);
    if ((u & qubit_mask) == qubit_mask) amps[u] = -amps[u];
  }
}

void apply_gate(std::span<Amplitude> amps, const Gate& gate) {
  switch (gate.kind) {
    case GateKind::H:
      apply_h(amps, gate.target);
      return;
    case GateKind::X:
      apply_x(amps, gate.target);
      return;
    case GateKind::Z:
      apply_z(amps, gate.target);
      return;
    case GateKind::MCX:
      apply_mcx(amps, control_mask_of(gate), std::uint64_t{1} << gate.target);
      return;
    case GateKind::MCZ:
      apply_mcz(amps, control_mask_of(gate) | (std::uint64_t{1} << gate.target));
      return;
  }
}

}  // namespace kernels

namespace ref {

// Out-of-place, one rule per basis state. Kept deliberately naive.

void apply_h(std::span<Amplitude> amps, int qubit) {
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  std::vector<Amplitude> in(amps.begin(), amps.end());
  for (std::uint64_t i = 0; i < in.size(); ++i) {
    amps[i] = (i & mask) ? (in[i ^ mask] - in[i]) * kInvSqrt2
                         : (in[i] + in[i ^ mask]) * kInvSqrt2;
  }
}

void apply_x(std::span<Amplitude> amps, int qubit) {
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  std::vector<Amplitude> in(amps.begin(), amps.end());
  for (std::uint64_t i = 0; i < in.size(); ++i) amps[i] = in[i ^ mask];
}

void apply_z(std::span<Amplitude> amps, int qubit) {
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (i & mask) amps[i] = -amps[i];
  }
}

void apply_mcx(std::span<Amplitude> amps, std::uint64_t control_mask,
               std::uint64_t target_mask) {
  std::vector<Amplitude> in(amps.begin(), amps.end());
  for (std::uint64_t i = 0; i < in.size(); ++i) {
    amps[i] = ((i & control_mask) == control_mask) ? in[i ^ target_mask] : in[i];
  }
}

void apply_mcz(std::span<Amplitude> amps, std::uint64_t qubit_mask) {
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & qubit_mask) == qubit_mask) amps[i] = -amps[i];
  }
}

void apply_gate(std::span<Amplitude> amps, const Gate& gate) {
  switch (gate.kind) {
    case GateKind::H:
      apply_h(amps, gate.target);
      return;
    case GateKind::X:
      apply_x(amps, gate.target);
      return;
    case GateKind::Z:
      apply_z(amps, gate.target);
      return;
    case GateKind::MCX:
      apply_mcx(amps, control_mask_of(gate), std::uint64_t{1} << gate.target);
      return;
    case GateKind::MCZ:
      apply_mcz(amps, control_mask_of(gate) | (std::uint64_t{1} << gate.target));
      return;
  }
}

}  // namespace ref
}  // namespace qpt
