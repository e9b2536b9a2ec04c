// Acceptance suite: one pass/fail line per criterion, non-zero exit if any
// criterion fails. Run directly or through ctest (-R acceptance).

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "helpers.hpp"
#include "qpt/cli.hpp"
#include "qpt/grover.hpp"
#include "qpt/perceptron.hpp"
#include "qpt/qarith.hpp"
#include "qpt/statevector.hpp"

using namespace qpt;
using qpt_test::analytic_success;
using qpt_test::apply_classical;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<void()>& body) {
  try {
    body();
    std::printf("[PASS] criterion %2d: %s\n", number, name.c_str());
  } catch (const std::exception& e) {
    ++failures;
    std::printf("[FAIL] criterion %2d: %s\n       %s\n", number, name.c_str(), e.what());
  }
}

void require(bool condition, const std::string& message) {
  if (!condition) throw std::runtime_error(message);
}

void require_close(double got, double want, double tol, const std::string& what) {
  if (std::abs(got - want) > tol) {
    throw std::runtime_error(what + ": got " + std::to_string(got) + ", want " +
                             std::to_string(want) + " +/- " + std::to_string(tol));
  }
}

std::vector<std::vector<int>> weight_lists(const SolutionSet& set) {
  std::vector<std::vector<int>> out;
  for (const auto& a : set.assignments) out.push_back(a.weights);
  return out;
}

struct CliResult {
  int status = -1;
  std::string output;
};

CliResult run_cli(const std::string& flags, const std::string& redirect = "2>&1") {
  const std::string command = std::string(QPT_CLI_PATH) + " " + flags + " " + redirect;
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  require(pipe != nullptr, "popen failed");
  char buf[512];
  while (fgets(buf, sizeof(buf), pipe) != nullptr) result.output += buf;
  const int status = pclose(pipe);
  result.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void check_table_1() {
  const ProblemSpec spec{2, 2, 3, Predicate::Equal};
  require(weight_lists(enumerate_solutions(spec, std::vector<int>{1, 0})) ==
              std::vector<std::vector<int>>{{3, 0}, {3, 1}, {3, 2}, {3, 3}},
          "I=(1,0) weight sets");
  require(weight_lists(enumerate_solutions(spec, std::vector<int>{0, 1})) ==
              std::vector<std::vector<int>>{{0, 3}, {1, 3}, {2, 3}, {3, 3}},
          "I=(0,1) weight sets");
  require(weight_lists(enumerate_solutions(spec, std::vector<int>{1, 1})) ==
              std::vector<std::vector<int>>{{0, 3}, {1, 2}, {2, 1}, {3, 0}},
          "I=(1,1) weight sets");

  const RunResult run = run_weight_search(spec, {1, 1});
  require(run.plan.iterations == 1, "AUTO iterations should be 1");
  for (const char* key : {"11 00", "01 10", "10 01", "00 11"}) {
    require_close(run.search_marginal.entries.at(key), 0.25, 1e-9,
                  std::string("probability of ") + key);
  }
  for (const auto& [key, p] : run.search_marginal.entries) {
    const bool solution = key == std::string("11 00") || key == std::string("01 10") ||
                          key == std::string("10 01") || key == std::string("00 11");
    if (!solution) require(p < 1e-9, "non-solution outcome above 1e-9: " + key);
  }
}

void check_table_2() {
  const ProblemSpec spec{2, 2, 5, Predicate::Equal};
  require(weight_lists(enumerate_solutions(spec, std::vector<int>{1, 1})) ==
              std::vector<std::vector<int>>{{2, 3}, {3, 2}},
          "I=(1,1) weight sets for Ac=5");

  const RunResult run = run_weight_search(spec, {1, 1});
  require(run.plan.iterations == 2, "AUTO iterations should be 2");
  require_close(run.search_marginal.entries.at("10 11"), 0.4727, 1e-3, "p(10 11)");
  require_close(run.search_marginal.entries.at("11 10"), 0.4727, 1e-3, "p(11 10)");
  require_close(run.verified_mass, analytic_success(4, 2, 2), 1e-9,
                "total solution mass vs sin^2(5 asin(sqrt(2/16)))");
}

void check_zero_solution_honesty() {
  const auto check_flagged = [](int ac, std::vector<int> inputs) {
    const ProblemSpec spec{2, 2, ac, Predicate::Equal};
    const RunResult run = run_weight_search(spec, inputs);
    require(run.no_solutions_detected, "expected the no-solutions flag");
    require(run.verified_solutions.empty(), "expected no verified solutions");
    require(run.search_marginal.entries.size() == 16, "expected all 16 outcomes");
    for (const auto& [key, p] : run.search_marginal.entries) {
      require_close(p, 1.0 / 16.0, 1e-9, "uniform mass at " + key);
    }
  };
  check_flagged(5, {0, 0});
  check_flagged(5, {1, 0});
  check_flagged(5, {0, 1});
  check_flagged(3, {0, 0});
}

void check_joint_search() {
  const ProblemSpec spec{2, 2, 3, Predicate::Equal};
  const RunResult run = run_joint_search(spec);
  require(run.plan.l == 12, "joint plan l");
  require(run.plan.iterations == 1, "joint plan iterations");
  const double mass = analytic_success(6, 12, 1);
  require_close(run.verified_mass, mass, 1e-9, "joint solution mass");
  require(run.verified_solutions.size() == 12, "12 joint solutions");
  int hits = 0;
  for (const auto& [key, p] : run.search_marginal.entries) {
    if (p > 1.0 / 64.0) {
      require_close(p, mass / 12.0, 1e-9, "equal-weighted solution " + key);
      ++hits;
    }
  }
  require(hits == 12, "12 amplified outcomes");
}

void check_planner() {
  require(grover_iterations(4, 4) == 1, "grover_iterations(4,4)");
  require(grover_iterations(4, 2) == 2, "grover_iterations(4,2)");
  require(grover_iterations(6, 12) == 1, "grover_iterations(6,12)");
}

void check_oracle_equivalence() {
  for (const Predicate predicate : {Predicate::Equal, Predicate::Geq}) {
    for (int ac = 0; ac < 8; ++ac) {
      const ProblemSpec spec{2, 2, ac, predicate};
      const QubitLayout layout = allocate_layout(spec);
      const GateSequence oracle = build_perceptron_oracle(spec, layout);
      for (std::uint64_t basis = 0; basis < (1ull << 6); ++basis) {
        const auto out = apply_classical(oracle.gates, basis);
        require(out.index == basis, "oracle must be diagonal (ancillas clean)");
        const std::vector<int> inputs = {static_cast<int>(basis & 1),
                                         static_cast<int>((basis >> 1) & 1)};
        const std::vector<int> weights = {
            static_cast<int>(layout.extract(basis, "w1")),
            static_cast<int>(layout.extract(basis, "w2"))};
        const int marked = activate(neuron_input(inputs, weights), ac, predicate);
        require(out.sign == (marked ? -1 : +1),
                "phase mismatch at basis " + std::to_string(basis) + ", ac " +
                    std::to_string(ac));
      }
    }
  }
}

void check_reversible_arithmetic() {
  for (int m = 1; m <= 3; ++m) {
    const ProblemSpec spec{2, m, 0, Predicate::Equal};
    const QubitLayout layout = allocate_layout(spec);
    const GateSequence adder = build_controlled_adder(layout, 0, "w1", "sum");
    const RegisterSpan w1 = layout.find("w1");
    const RegisterSpan sum = layout.find("sum");
    for (int ctrl = 0; ctrl <= 1; ++ctrl) {
      for (int src = 0; src < (1 << m); ++src) {
        for (int acc = 0; acc + src < (1 << sum.count); ++acc) {
          const std::uint64_t in = static_cast<std::uint64_t>(ctrl) |
                                   (static_cast<std::uint64_t>(src) << w1.first) |
                                   (static_cast<std::uint64_t>(acc) << sum.first);
          const auto out = apply_classical(adder.gates, in);
          const int expected = ctrl ? acc + src : acc;
          const std::uint64_t want = static_cast<std::uint64_t>(ctrl) |
                                     (static_cast<std::uint64_t>(src) << w1.first) |
                                     (static_cast<std::uint64_t>(expected) << sum.first);
          require(out.sign == +1 && out.index == want,
                  "adder mismatch: m=" + std::to_string(m) + " ctrl=" +
                      std::to_string(ctrl) + " src=" + std::to_string(src) +
                      " acc=" + std::to_string(acc));
        }
      }
    }
  }

  // Ancillas return to zero after every full oracle (diagonal action checked
  // exhaustively above); oracle twice is the identity on the simulator.
  const ProblemSpec spec{2, 2, 5, Predicate::Equal};
  const QubitLayout layout = allocate_layout(spec);
  const GateSequence oracle = build_perceptron_oracle(spec, layout);
  std::mt19937_64 rng(57);
  StateVector state(layout.total_qubits());
  for (const Gate& gate : qpt_test::random_gates(rng, 6, 40)) state.apply(gate);
  const std::vector<Amplitude> before(state.amplitudes().begin(),
                                      state.amplitudes().end());
  state.apply(oracle.gates);
  state.apply(oracle.gates);
  require(qpt_test::max_amp_diff(state.amplitudes(), before) < 1e-12,
          "oracle twice must be the identity within 1e-12");
}

void check_tuning() {
  const TuneResult t3 =
      tune_iterations(ProblemSpec{2, 2, 3, Predicate::Equal}, std::vector<int>{1, 1}, 3);
  require(t3.best_k == 1, "best_k for Ac=3");
  require_close(t3.hit_rate, 1.0, 1e-9, "hit rate for Ac=3");

  const TuneResult t5 =
      tune_iterations(ProblemSpec{2, 2, 5, Predicate::Equal}, std::vector<int>{1, 1}, 4);
  require(t5.best_k == 2, "best_k for Ac=5");
  require_close(t5.hit_rate, 0.9453, 1e-3, "hit rate for Ac=5");
}

void check_simulator_hygiene() {
  std::mt19937_64 rng(2026);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 8);
    StateVector state(n);
    for (const Gate& gate : qpt_test::random_gates(rng, n, 20)) state.apply(gate);
    require(std::abs(state.norm_sq() - 1.0) < 1e-9,
            "norm drifted on sequence " + std::to_string(rep));
  }

  const RunResult run =
      run_weight_search(ProblemSpec{2, 2, 5, Predicate::Equal}, {1, 1});
  const std::uint64_t shots = 20000;
  const auto counts = sample(run.search_marginal, shots, 77);
  const auto again = sample(run.search_marginal, shots, 77);
  require(counts == again, "seeded sampling must be reproducible");
  for (const auto& [key, p] : run.search_marginal.entries) {
    const double mean = static_cast<double>(shots) * p;
    const double sigma = std::sqrt(static_cast<double>(shots) * p * (1.0 - p));
    const auto it = counts.find(key);
    const double got = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    require(std::abs(got - mean) <= 5.0 * sigma + 1e-9,
            "sample count outside 5 sigma for " + key);
  }
}

void check_cli_contract() {
  // Dump replay on the acceptance instances.
  const auto replay_matches = [](Config config) {
    const bool joint = config.mode == RunMode::Joint;
    const Report report = execute(config);
    const GateSequence replayed = parse_gate_sequence(dump_circuit(config));
    StateVector state(replayed.layout.total_qubits());
    state.apply(replayed.gates);
    const Histogram marg = marginal(probabilities(state, replayed.layout),
                                    replayed.layout,
                                    search_registers(config.problem(), joint));
    require(marg.entries.size() == report.distribution.size(),
            "replayed support differs");
    for (const auto& entry : report.distribution) {
      require(std::abs(marg.entries.at(entry.bits) - entry.probability) < 1e-12,
              "replayed probability differs at " + entry.bits);
    }
  };
  Config table1;
  table1.ac = 3;
  table1.mode = RunMode::Weights;
  table1.inputs = std::vector<int>{1, 1};
  replay_matches(table1);
  Config table2 = table1;
  table2.ac = 5;
  replay_matches(table2);
  Config joint;
  joint.ac = 3;
  joint.mode = RunMode::Joint;
  replay_matches(joint);

  // JSON round-trips and is byte-stable in exact mode.
  const std::string json_a = emit(execute(table2), OutputFormat::Json);
  const std::string json_b = emit(execute(table2), OutputFormat::Json);
  require(json_a == json_b, "JSON must be byte-identical for the same config");
  const auto parsed = nlohmann::json::parse(json_a);
  require(parsed["plan"]["iterations"] == 2, "JSON plan round-trip");
  double sum = 0.0;
  for (const auto& entry : parsed["distribution"]) sum += entry["prob"].get<double>();
  require(std::abs(sum - 1.0) < 1e-6, "JSON probabilities must sum to 1");

  // Exit codes: 0 success, 1 usage error, 2 runtime/size error.
  require(run_cli("--ac 3 --mode weights --inputs 1,1 --format json").status == 0,
          "success should exit 0");
  require(run_cli("--mode weights").status == 1, "usage errors should exit 1");
  require(run_cli("--ac 3 --mode weights --inputs 1,1 --bogus").status == 1,
          "unknown flags should exit 1");
  require(run_cli("--ac 3 --mode joint --n-inputs 4 --weight-bits 4").status == 2,
          "simulator-cap errors should exit 2");

  // Usage errors go to stderr, results to stdout.
  require(run_cli("--mode weights", "2>/dev/null").output.empty(),
          "usage errors must not print to stdout");
  require(run_cli("--ac 3 --mode weights --inputs 1,1", "1>/dev/null").output.empty(),
          "results must not print to stderr");
}

}  // namespace

int main() {
  criterion(1, "threshold-3 solution sets and amplified distribution", check_table_1);
  criterion(2, "threshold-5 solution sets and amplified distribution", check_table_2);
  criterion(3, "zero-solution runs stay uniform and are flagged", check_zero_solution_honesty);
  criterion(4, "joint search: l=12 plan and equal-weighted solutions", check_joint_search);
  criterion(5, "iteration planner values", check_planner);
  criterion(6, "oracle phase equals the classical predicate (exhaustive)", check_oracle_equivalence);
  criterion(7, "reversible arithmetic: adder, uncompute, self-inverse", check_reversible_arithmetic);
  criterion(8, "tuning schedule recovers the best iteration counts", check_tuning);
  criterion(9, "simulator hygiene: norms and seeded sampling", check_simulator_hygiene);
  criterion(10, "CLI contract: dump replay, JSON, exit codes", check_cli_contract);

  if (failures == 0) {
    std::printf("all 10 acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
