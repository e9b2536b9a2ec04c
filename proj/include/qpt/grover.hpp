#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpt/perceptron.hpp"
#include "qpt/problem.hpp"
#include "qpt/qarith.hpp"
#include "qpt/statevector.hpp"

namespace qpt {

inline constexpr int kAutoIterations = -1;

// Iteration count for n search qubits and l expected solutions:
// max(1, floor((pi/4) * sqrt(2^n / l))). Throws for l == 0 (unknown solution
// counts go through tune_iterations instead) and l > 2^n.
int grover_iterations(int n_search_qubits, std::uint64_t solution_count);

// n: search-register qubits. l: solution count used for planning (0 when the
// iteration count was forced or tuned). iterations: count actually executed.
struct GroverPlan {
  int n = 0;
  std::uint64_t l = 0;
  int iterations = 0;
};

// Reflection about the uniform superposition of the search registers
// (2|s><s| - I up to global phase): H, X, MCZ, X, H across the search qubits.
GateSequence build_diffusion(const QubitLayout& layout,
                             std::span<const std::string> search);

// State preparation for one run: X on the fixed input bits (weights mode),
// then H across the search registers.
GateSequence build_state_prep(const ProblemSpec& spec, bool joint,
                              const std::vector<int>& fixed_inputs);

// One Grover iteration: perceptron oracle followed by the diffusion.
GateSequence build_grover_iteration(const ProblemSpec& spec, bool joint);

struct RunResult {
  ProblemSpec spec;
  bool joint = false;
  std::vector<int> fixed_inputs;  // weights mode only
  QubitLayout layout;
  GroverPlan plan;
  Histogram full_distribution;   // all registers
  Histogram search_marginal;     // search registers only
  SolutionSet verified_solutions;
  // Total probability mass on outcomes that pass the classical predicate.
  double verified_mass = 0.0;
  // verified_mass no better than twice the uniform floor.
  bool no_solutions_detected = false;
};

// Fixed inputs prepared with X gates, weights put in superposition, then
// [oracle; diffusion] the planned number of times. kAutoIterations plans via
// grover_iterations with l from classical enumeration and falls back to
// tune_iterations when the enumerated l is 0.
RunResult run_weight_search(const ProblemSpec& spec,
                            const std::vector<int>& inputs,
                            int iterations = kAutoIterations);

// Inputs and weights both searched (H across I and every w register).
RunResult run_joint_search(const ProblemSpec& spec,
                           int iterations = kAutoIterations);

// Distribution over the weight registers only, inputs summed out. Requires a
// joint-search result.
Histogram weight_marginal(const RunResult& result);

struct TuneResult {
  int best_k = 1;
  double hit_rate = 0.0;
  bool no_solutions_detected = false;
  std::vector<double> verified_mass_per_k;  // index k-1
  RunResult best_run;
};

// Unknown-l schedule: evaluate k = max_k down to 1, measuring the probability
// mass on classically verified solutions, and keep the maximizer (ties broken
// toward smaller k).
TuneResult tune_iterations(const ProblemSpec& spec,
                           const std::optional<std::vector<int>>& inputs,
                           int max_k);

}  // namespace qpt
