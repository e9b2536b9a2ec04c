#include "qpt/perceptron.hpp"

#include <algorithm>
#include <stdexcept>

#include "qpt/statevector.hpp"

namespace qpt {

int neuron_input(std::span<const int> inputs, std::span<const int> weights) {
  if (inputs.size() != weights.size()) {
    throw std::invalid_argument("inputs and weights must have equal length");
  }
  int sum = 0;
  for (std::size_t k = 0; k < inputs.size(); ++k) sum += inputs[k] * weights[k];
  return sum;
}

int activate(int h_input, int ac, Predicate predicate) {
  if (predicate == Predicate::Geq) return h_input >= ac ? 1 : 0;
  return h_input == ac ? 1 : 0;
}

std::string Assignment::weight_bits_string(int weight_bits) const {
  std::string out;
  for (int w : weights) {
    if (!out.empty()) out += ' ';
    out += to_bitstring(static_cast<std::uint64_t>(w), weight_bits);
  }
  return out;
}

bool SolutionSet::contains(const Assignment& a) const {
  return std::find(assignments.begin(), assignments.end(), a) != assignments.end();
}

namespace {

bool assignment_less(const Assignment& lhs, const Assignment& rhs) {
  if (lhs.inputs != rhs.inputs) return lhs.inputs < rhs.inputs;
  return lhs.weights < rhs.weights;
}

}  // namespace

SolutionSet enumerate_solutions(const ProblemSpec& spec,
                                const std::optional<std::vector<int>>& inputs) {
  spec.validate();
  if (inputs) {
    if (static_cast<int>(inputs->size()) != spec.n_inputs) {
      throw std::invalid_argument("expected " + std::to_string(spec.n_inputs) +
                                  " input bits");
    }
    for (int bit : *inputs) {
      if (bit != 0 && bit != 1) throw std::invalid_argument("input bits must be 0 or 1");
    }
  }

  const int n = spec.n_inputs;
  const std::uint64_t weight_patterns = std::uint64_t{1} << (n * spec.weight_bits);
  const std::uint64_t input_patterns = inputs ? 1 : (std::uint64_t{1} << n);
  const int weight_mask = (1 << spec.weight_bits) - 1;

  SolutionSet set;
  for (std::uint64_t ip = 0; ip < input_patterns; ++ip) {
    Assignment a;
    a.inputs.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      a.inputs[static_cast<std::size_t>(k)] =
          inputs ? (*inputs)[static_cast<std::size_t>(k)]
                 : static_cast<int>((ip >> k) & 1);
    }
    for (std::uint64_t wp = 0; wp < weight_patterns; ++wp) {
      a.weights.assign(static_cast<std::size_t>(n), 0);
      for (int k = 0; k < n; ++k) {
        a.weights[static_cast<std::size_t>(k)] =
            static_cast<int>(wp >> (k * spec.weight_bits)) & weight_mask;
      }
      if (activate(neuron_input(a.inputs, a.weights), spec.ac, spec.predicate)) {
        set.assignments.push_back(a);
      }
    }
  }
  std::sort(set.assignments.begin(), set.assignments.end(), assignment_less);
  return set;
}

}  // namespace qpt
