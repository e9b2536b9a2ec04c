#pragma once

#include <cstdint>
#include <string>

namespace qpt {

// Activation predicate on the weighted sum: sum == ac or sum >= ac.
enum class Predicate { Equal, Geq };

std::string predicate_name(Predicate predicate);

// Widths and threshold defining one training problem. Inputs are single bits;
// each weight is an unsigned weight_bits-wide integer; `ac` is the activation
// threshold the weighted sum is compared against.
struct ProblemSpec {
  int n_inputs = 2;
  int weight_bits = 2;
  int ac = 0;
  Predicate predicate = Predicate::Equal;

  // Sum-register width: just enough bits for n_inputs * (2^weight_bits - 1),
  // so accumulation never overflows.
  int sum_bits() const;
  int max_sum() const;
  int search_qubits(bool joint) const;
  // Inputs + weights + sum + carry ancillas.
  int total_qubits() const;

  // Throws std::invalid_argument when widths are non-positive or ac does not
  // fit the sum register.
  void validate() const;

  bool operator==(const ProblemSpec&) const = default;
};

}  // namespace qpt
