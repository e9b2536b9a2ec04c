#include "qpt/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpt {
namespace {

struct Circuit {
  QubitLayout layout;
  std::vector<std::string> search;
  int n_search = 0;
  GateSequence prep;       // X on fixed input bits, H on search registers
  GateSequence iteration;  // oracle followed by diffusion
};

Circuit build_circuit(const ProblemSpec& spec, bool joint,
                      const std::vector<int>& fixed_inputs) {
  spec.validate();
  if (!joint) {
    if (static_cast<int>(fixed_inputs.size()) != spec.n_inputs) {
      throw std::invalid_argument("expected " + std::to_string(spec.n_inputs) +
                                  " input bits");
    }
    for (int bit : fixed_inputs) {
      if (bit != 0 && bit != 1) throw std::invalid_argument("input bits must be 0 or 1");
    }
  }
  if (spec.total_qubits() > StateVector::kMaxQubits) {
    throw std::length_error("problem needs " + std::to_string(spec.total_qubits()) +
                            " qubits, simulator caps at " +
                            std::to_string(StateVector::kMaxQubits) +
                            "; reduce n_inputs or weight_bits");
  }

  Circuit c;
  c.layout = allocate_layout(spec);
  c.search = search_registers(spec, joint);
  c.n_search = spec.search_qubits(joint);
  c.prep = build_state_prep(spec, joint, fixed_inputs);
  c.iteration = build_grover_iteration(spec, joint);
  return c;
}

Assignment decode_assignment(const ProblemSpec& spec, const QubitLayout& layout,
                             std::uint64_t basis, bool joint,
                             const std::vector<int>& fixed_inputs) {
  Assignment a;
  a.inputs.resize(static_cast<std::size_t>(spec.n_inputs));
  const std::uint64_t input_value = layout.extract(basis, "I");
  for (int k = 0; k < spec.n_inputs; ++k) {
    a.inputs[static_cast<std::size_t>(k)] =
        joint ? static_cast<int>((input_value >> k) & 1)
              : fixed_inputs[static_cast<std::size_t>(k)];
  }
  for (int k = 1; k <= spec.n_inputs; ++k) {
    a.weights.push_back(
        static_cast<int>(layout.extract(basis, "w" + std::to_string(k))));
  }
  return a;
}

RunResult run_fixed_iterations(const ProblemSpec& spec, bool joint,
                               const std::vector<int>& fixed_inputs,
                               GroverPlan plan) {
  Circuit circuit = build_circuit(spec, joint, fixed_inputs);

  StateVector state(circuit.layout.total_qubits());
  state.apply(circuit.prep.gates);
  for (int k = 0; k < plan.iterations; ++k) state.apply(circuit.iteration.gates);

  RunResult result;
  result.spec = spec;
  result.joint = joint;
  result.fixed_inputs = joint ? std::vector<int>{} : fixed_inputs;
  result.layout = circuit.layout;
  result.plan = plan;
  result.full_distribution = probabilities(state, circuit.layout);
  result.search_marginal = marginal(result.full_distribution, circuit.layout,
                                    circuit.search);

  // Every outcome above the uniform floor is a candidate; only classically
  // verified candidates are reported as solutions.
  const double uniform = 1.0 / static_cast<double>(std::uint64_t{1} << circuit.n_search);
  double verified_mass = 0.0;
  QubitLayout search_layout;
  {
    std::vector<RegisterSpan> regs;
    int next = 0;
    for (const auto& reg : circuit.layout.select(circuit.search)) {
      regs.push_back({reg.name, next, reg.count});
      next += reg.count;
    }
    search_layout = QubitLayout(std::move(regs));
  }
  for (const auto& [key, p] : result.search_marginal.entries) {
    const std::uint64_t basis = search_layout.parse_key(key);
    // Re-embed the search bits at their original positions for decoding.
    std::uint64_t full = 0;
    for (const auto& reg : search_layout.registers()) {
      full |= search_layout.extract(basis, reg)
              << circuit.layout.find(reg.name).first;
    }
    Assignment a = decode_assignment(spec, circuit.layout, full, joint, fixed_inputs);
    if (!activate(neuron_input(a.inputs, a.weights), spec.ac, spec.predicate)) continue;
    verified_mass += p;
    if (p > uniform) result.verified_solutions.assignments.push_back(a);
  }
  std::sort(result.verified_solutions.assignments.begin(),
            result.verified_solutions.assignments.end(),
            [](const Assignment& lhs, const Assignment& rhs) {
              if (lhs.inputs != rhs.inputs) return lhs.inputs < rhs.inputs;
              return lhs.weights < rhs.weights;
            });
  result.verified_mass = verified_mass;
  result.no_solutions_detected = verified_mass < 2.0 * uniform;
  return result;
}

RunResult run_search(const ProblemSpec& spec, bool joint,
                     const std::vector<int>& fixed_inputs, int iterations) {
  spec.validate();
  if (iterations != kAutoIterations && iterations < 0) {
    throw std::invalid_argument("iterations must be >= 0 or auto");
  }
  if (iterations != kAutoIterations) {
    return run_fixed_iterations(
        spec, joint, fixed_inputs,
        GroverPlan{spec.search_qubits(joint), 0, iterations});
  }

  const auto inputs_opt =
      joint ? std::optional<std::vector<int>>{} : std::optional{fixed_inputs};
  const std::uint64_t l = enumerate_solutions(spec, inputs_opt).size();
  const int n = spec.search_qubits(joint);
  if (l == 0) {
    // Nothing to plan with; fall back to the unknown-l schedule, which will
    // report the (uniform) distribution honestly.
    return tune_iterations(spec, inputs_opt, grover_iterations(n, 1)).best_run;
  }
  return run_fixed_iterations(spec, joint, fixed_inputs,
                              GroverPlan{n, l, grover_iterations(n, l)});
}

}  // namespace

int grover_iterations(int n_search_qubits, std::uint64_t solution_count) {
  if (n_search_qubits < 1 || n_search_qubits > 63) {
    throw std::invalid_argument("search register size out of range");
  }
  if (solution_count == 0) {
    throw std::invalid_argument(
        "solution count 0: iteration count undefined, use tune_iterations");
  }
  const std::uint64_t space = std::uint64_t{1} << n_search_qubits;
  if (solution_count > space) {
    throw std::invalid_argument("solution count exceeds the search space");
  }
  const double ratio = static_cast<double>(space) / static_cast<double>(solution_count);
  const int planned = static_cast<int>(
      std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
  return std::max(1, planned);
}

GateSequence build_state_prep(const ProblemSpec& spec, bool joint,
                              const std::vector<int>& fixed_inputs) {
  const QubitLayout layout = allocate_layout(spec);
  GateSequence prep{layout, {}};
  if (!joint) {
    if (static_cast<int>(fixed_inputs.size()) != spec.n_inputs) {
      throw std::invalid_argument("expected " + std::to_string(spec.n_inputs) +
                                  " input bits");
    }
    const RegisterSpan& inputs = layout.find("I");
    for (int k = 0; k < spec.n_inputs; ++k) {
      if (fixed_inputs[static_cast<std::size_t>(k)]) prep.append(Gate::x(inputs.first + k));
    }
  }
  for (const auto& name : search_registers(spec, joint)) {
    const RegisterSpan& reg = layout.find(name);
    for (int i = 0; i < reg.count; ++i) prep.append(Gate::h(reg.first + i));
  }
  return prep;
}

GateSequence build_grover_iteration(const ProblemSpec& spec, bool joint) {
  const QubitLayout layout = allocate_layout(spec);
  GateSequence iteration = build_perceptron_oracle(spec, layout);
  iteration.append(build_diffusion(layout, search_registers(spec, joint)));
  return iteration;
}

GateSequence build_diffusion(const QubitLayout& layout,
                             std::span<const std::string> search) {
  if (search.empty()) throw std::invalid_argument("diffusion needs search registers");
  std::vector<int> qubits;
  for (const auto& reg : layout.select(search)) {
    for (int i = 0; i < reg.count; ++i) qubits.push_back(reg.first + i);
  }
  if (layout.select(search).size() != search.size()) {
    throw std::invalid_argument("duplicate search register names");
  }
  GateSequence seq{layout, {}};
  for (int q : qubits) seq.append(Gate::h(q));
  for (int q : qubits) seq.append(Gate::x(q));
  seq.append(Gate::mcz(qubits));
  for (int q : qubits) seq.append(Gate::x(q));
  for (int q : qubits) seq.append(Gate::h(q));
  return seq;
}

RunResult run_weight_search(const ProblemSpec& spec, const std::vector<int>& inputs,
                            int iterations) {
  return run_search(spec, /*joint=*/false, inputs, iterations);
}

RunResult run_joint_search(const ProblemSpec& spec, int iterations) {
  return run_search(spec, /*joint=*/true, {}, iterations);
}

Histogram weight_marginal(const RunResult& result) {
  if (!result.joint) {
    throw std::invalid_argument("weight marginal requires a joint-search result");
  }
  return marginal(result.full_distribution, result.layout,
                  search_registers(result.spec, /*joint=*/false));
}

TuneResult tune_iterations(const ProblemSpec& spec,
                           const std::optional<std::vector<int>>& inputs,
                           int max_k) {
  spec.validate();
  if (max_k < 1) throw std::invalid_argument("max_k must be >= 1");
  const bool joint = !inputs.has_value();
  const std::vector<int> fixed = inputs.value_or(std::vector<int>{});
  const int n = spec.search_qubits(joint);
  const double uniform = 1.0 / static_cast<double>(std::uint64_t{1} << n);

  TuneResult tune;
  tune.verified_mass_per_k.assign(static_cast<std::size_t>(max_k), 0.0);
  double best_mass = -1.0;
  for (int k = max_k; k >= 1; --k) {
    RunResult run = run_fixed_iterations(spec, joint, fixed, GroverPlan{n, 0, k});
    const double mass = run.verified_mass;
    tune.verified_mass_per_k[static_cast<std::size_t>(k - 1)] = mass;
    // >= so that ties go to the smaller k (we scan downward).
    if (mass >= best_mass) {
      best_mass = mass;
      tune.best_k = k;
      tune.best_run = std::move(run);
    }
  }
  tune.hit_rate = best_mass;
  tune.no_solutions_detected = best_mass < 2.0 * uniform;
  tune.best_run.no_solutions_detected = tune.no_solutions_detected;
  return tune;
}

}  // namespace qpt
