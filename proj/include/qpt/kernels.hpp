#pragma once

#include <cstdint>
#include <span>

#include "qpt/statevector.hpp"

// Gate kernels over a raw amplitude array of length 2^n.
//
// qpt::kernels is the production path: in-place, OpenMP-parallel over the
// amplitude pairs once the state is large enough. Every loop writes each
// amplitude from exactly one iteration, so results are bit-for-bit identical
// regardless of thread count.
//
// qpt::ref is the serial reference: out-of-place, one whole-array pass per
// gate, written for obviousness rather than speed. Tests check the production
// kernels against it; tools/bench.cpp compares their throughput.

namespace qpt::kernels {

void apply_h(std::span<Amplitude> amps, int qubit);
void apply_x(std::span<Amplitude> amps, int qubit);
void apply_z(std::span<Amplitude> amps, int qubit);
void apply_mcx(std::span<Amplitude> amps, std::uint64_t control_mask,
               std::uint64_t target_mask);
void apply_mcz(std::span<Amplitude> amps, std::uint64_t qubit_mask);

void apply_gate(std::span<Amplitude> amps, const Gate& gate);

}  // namespace qpt::kernels

namespace qpt::ref {

void apply_h(std::span<Amplitude> amps, int qubit);
void apply_x(std::span<Amplitude> amps, int qubit);
void apply_z(std::span<Amplitude> amps, int qubit);
void apply_mcx(std::span<Amplitude> amps, std::uint64_t control_mask,
               std::uint64_t target_mask);
void apply_mcz(std::span<Amplitude> amps, std::uint64_t qubit_mask);

void apply_gate(std::span<Amplitude> amps, const Gate& gate);

}  // namespace qpt::ref
