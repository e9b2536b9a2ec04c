#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qpt/problem.hpp"
#include "qpt/statevector.hpp"

namespace qpt {

// An ordered gate list plus the layout it addresses.
struct GateSequence {
  QubitLayout layout;
  std::vector<Gate> gates;

  void append(Gate gate);
  void append(const GateSequence& other);
  // Gates in reverse order. Every gate in the set {H, X, Z, MCX, MCZ} is its
  // own inverse, so this is the inverse sequence.
  GateSequence inverted() const;
};

// Registers, layout order: I (n_inputs qubits), w1..wn (weight_bits each),
// sum (sum_bits), carry (sum_bits - 1 ripple ancillas; omitted when zero).
QubitLayout allocate_layout(const ProblemSpec& spec);

// Register names searched over: weights only, or inputs + weights when joint.
std::vector<std::string> search_registers(const ProblemSpec& spec, bool joint);

// acc += src when the control qubit is 1, as a ripple-carry network of MCX
// gates. src and control are preserved; carry ancillas return to 0. Overflow
// past acc's top bit is silently dropped (mod 2^width); layouts produced by
// allocate_layout size acc so that never happens.
GateSequence build_controlled_adder(const QubitLayout& layout, int control_qubit,
                                    std::string_view src_register,
                                    std::string_view acc_register);

// Phase -1 exactly on basis states where acc == ac: X on each acc qubit whose
// ac bit is 0, MCZ across acc, X undone. Self-inverse.
GateSequence build_equality_comparator(const QubitLayout& layout,
                                       std::string_view acc_register, int ac);

// Phase -1 exactly on basis states where acc >= ac (an equality comparator per
// value in [ac, 2^sum_bits)).
GateSequence build_geq_comparator(const QubitLayout& layout,
                                  std::string_view acc_register, int ac);

// Full oracle: controlled adders accumulating sum_k I_k * w_k, the comparator
// for spec.predicate, then the adders uncomputed in reverse. Net effect is a
// pure phase flip on basis states satisfying the predicate; sum and carry
// ancillas end at 0.
GateSequence build_perceptron_oracle(const ProblemSpec& spec,
                                     const QubitLayout& layout);

// Gate-list text format. One gate per line (`H 2`, `X 0`, `Z 5`,
// `MCX 0 2 -> 6`, `MCZ 6 7 8`), preceded by a header documenting register
// assignment, e.g. `# layout: I=[0,1] w1=[2,3] sum=[4,5] carry=[6]`.
std::string format_gate_sequence(const GateSequence& sequence);
GateSequence parse_gate_sequence(std::string_view text);

}  // namespace qpt
