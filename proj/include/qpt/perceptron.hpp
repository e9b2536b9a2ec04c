#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpt/problem.hpp"

namespace qpt {

// Weighted sum feeding the hidden neuron: sum_k I_k * w_k.
int neuron_input(std::span<const int> inputs, std::span<const int> weights);

// Threshold activation: 1 iff the predicate holds for h_input against ac.
int activate(int h_input, int ac, Predicate predicate);

// One satisfying assignment: a bit per input and a value per weight.
struct Assignment {
  std::vector<int> inputs;
  std::vector<int> weights;

  std::string weight_bits_string(int weight_bits) const;

  bool operator==(const Assignment&) const = default;
};

struct SolutionSet {
  std::vector<Assignment> assignments;

  bool contains(const Assignment& a) const;
  std::size_t size() const { return assignments.size(); }
  bool empty() const { return assignments.empty(); }
};

// JOINT mode: enumerate input bits as well as weights.
inline constexpr std::nullopt_t kJointInputs = std::nullopt;

// Brute-force ground truth: every weight assignment (and every input pattern,
// when `inputs` is nullopt) tested against the activation predicate. Sorted
// inputs-major, then weights, ascending; its size is the l fed to the
// iteration planner.
SolutionSet enumerate_solutions(const ProblemSpec& spec,
                                const std::optional<std::vector<int>>& inputs);

}  // namespace qpt
