#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpt/grover.hpp"
#include "qpt/problem.hpp"

namespace qpt {

// Flag/semantic errors that should exit with status 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --help / -h; carries the text to print on stdout.
struct HelpRequested {
  std::string text;
};

enum class RunMode { Weights, Joint, Tune };
enum class OutputFormat { Text, Csv, Json };

struct Config {
  int ac = 0;
  int n_inputs = 2;
  int weight_bits = 2;
  Predicate predicate = Predicate::Equal;
  RunMode mode = RunMode::Weights;
  std::optional<std::vector<int>> inputs;  // required for weights mode
  int iterations = kAutoIterations;
  int max_k = 0;  // tune mode; 0 resolves to grover_iterations(n, 1)
  std::uint64_t shots = 0;  // 0 = exact distribution
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Text;
  bool dump_circuit = false;

  ProblemSpec problem() const;
};

struct DistributionEntry {
  std::string bits;                   // search-register key
  std::vector<std::uint64_t> values;  // decoded per register, layout order
  double probability = 0.0;
  bool verified = false;
};

struct TuneSummary {
  int max_k = 1;
  int best_k = 1;
  double hit_rate = 0.0;
  std::vector<double> verified_mass_per_k;
};

struct Report {
  Config config;
  GroverPlan plan;
  std::vector<std::string> search_labels;
  std::vector<int> resolved_inputs;  // weights/tune-with-inputs modes
  std::vector<DistributionEntry> distribution;
  SolutionSet solutions;
  bool no_solutions_detected = false;
  std::optional<Histogram> weight_marg;              // joint mode
  std::optional<std::map<std::string, std::uint64_t>> samples;  // shots > 0
  std::optional<TuneSummary> tune;                   // tune mode
  int sum_bits = 0;
};

// Throws UsageError on bad flags or inconsistent combinations; throws
// HelpRequested for --help.
Config parse_config(const std::vector<std::string>& args);

Report execute(const Config& config);

std::string emit(const Report& report, OutputFormat format);

// Layout header plus the full gate list (state prep, then [oracle; diffusion]
// x iterations) in the gate-list text format. Replaying the dump reproduces
// the report's distribution.
std::string dump_circuit(const Config& config);

}  // namespace qpt
