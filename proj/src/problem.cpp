#include "qpt/problem.hpp"

#include <bit>
#include <stdexcept>

namespace qpt {

std::string predicate_name(Predicate predicate) {
  return predicate == Predicate::Equal ? "equal" : "geq";
}

int ProblemSpec::max_sum() const {
  return n_inputs * ((1 << weight_bits) - 1);
}

int ProblemSpec::sum_bits() const {
  return std::bit_width(static_cast<unsigned>(max_sum()));
}

int ProblemSpec::search_qubits(bool joint) const {
  return n_inputs * weight_bits + (joint ? n_inputs : 0);
}

int ProblemSpec::total_qubits() const {
  const int s = sum_bits();
  return n_inputs + n_inputs * weight_bits + s + (s - 1);
}

void ProblemSpec::validate() const {
  if (n_inputs < 1) throw std::invalid_argument("n_inputs must be >= 1");
  if (weight_bits < 1) throw std::invalid_argument("weight_bits must be >= 1");
  // Anything wider cannot fit the simulator regardless of the other widths.
  if (n_inputs > 24) throw std::invalid_argument("n_inputs too large");
  if (weight_bits > 24) throw std::invalid_argument("weight_bits too large");
  if (ac < 0) throw std::invalid_argument("ac must be non-negative");
  if (ac >= (1 << sum_bits())) {
    throw std::invalid_argument(
        "ac = " + std::to_string(ac) + " does not fit the " +
        std::to_string(sum_bits()) + "-bit sum register");
  }
}

}  // namespace qpt
