#include "qpt/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qpt/perceptron.hpp"
#include "qpt/qarith.hpp"
#include "qpt/statevector.hpp"

namespace qpt {
namespace {

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", p);
  return buf;
}

std::vector<int> parse_bit_list(const std::string& csv) {
  std::vector<int> bits;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "0") {
      bits.push_back(0);
    } else if (item == "1") {
      bits.push_back(1);
    } else {
      throw UsageError("--inputs: bits must be 0 or 1, got '" + item + "'");
    }
  }
  if (bits.empty()) throw UsageError("--inputs: empty bit list");
  return bits;
}

std::string mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::Weights: return "weights";
    case RunMode::Joint: return "joint";
    case RunMode::Tune: return "tune";
  }
  return "?";
}

std::string format_name(OutputFormat format) {
  switch (format) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
  }
  return "?";
}

// Decode one search-marginal key into per-register values and the assignment
// it denotes.
struct DecodedEntry {
  std::vector<std::uint64_t> values;
  Assignment assignment;
};

DecodedEntry decode_entry(const ProblemSpec& spec, bool joint,
                          const std::vector<int>& fixed_inputs,
                          const std::vector<std::string>& labels,
                          const std::string& key) {
  DecodedEntry decoded;
  std::vector<std::string> fields;
  std::istringstream in(key);
  std::string field;
  while (in >> field) fields.push_back(field);
  if (fields.size() != labels.size()) {
    throw std::invalid_argument("key '" + key + "' does not match labels");
  }
  decoded.assignment.inputs = fixed_inputs;
  decoded.assignment.weights.assign(static_cast<std::size_t>(spec.n_inputs), 0);
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const std::uint64_t value = from_bitstring(fields[f]);
    decoded.values.push_back(value);
    if (labels[f] == "I") {
      decoded.assignment.inputs.resize(static_cast<std::size_t>(spec.n_inputs));
      for (int k = 0; k < spec.n_inputs; ++k) {
        decoded.assignment.inputs[static_cast<std::size_t>(k)] =
            static_cast<int>((value >> k) & 1);
      }
    } else {
      const int index = std::stoi(labels[f].substr(1));
      decoded.assignment.weights[static_cast<std::size_t>(index - 1)] =
          static_cast<int>(value);
    }
  }
  (void)joint;
  return decoded;
}

void fill_from_run(Report& report, const RunResult& run) {
  report.plan = run.plan;
  report.search_labels = run.search_marginal.labels;
  report.resolved_inputs = run.fixed_inputs;
  report.solutions = run.verified_solutions;
  report.no_solutions_detected = run.no_solutions_detected;
  report.sum_bits = run.spec.sum_bits();
  for (const auto& [key, p] : run.search_marginal.entries) {
    DecodedEntry decoded = decode_entry(run.spec, run.joint, run.fixed_inputs,
                                        report.search_labels, key);
    DistributionEntry entry;
    entry.bits = key;
    entry.values = std::move(decoded.values);
    entry.probability = p;
    entry.verified = activate(neuron_input(decoded.assignment.inputs,
                                           decoded.assignment.weights),
                              run.spec.ac, run.spec.predicate) != 0;
    report.distribution.push_back(std::move(entry));
  }
}

int resolve_auto_iterations(const ProblemSpec& spec, bool joint,
                            const std::optional<std::vector<int>>& inputs) {
  const int n = spec.search_qubits(joint);
  const std::uint64_t l = enumerate_solutions(spec, inputs).size();
  if (l > 0) return grover_iterations(n, l);
  return tune_iterations(spec, inputs, grover_iterations(n, 1)).best_k;
}

}  // namespace

ProblemSpec Config::problem() const {
  return ProblemSpec{n_inputs, weight_bits, ac, predicate};
}

Config parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Perceptron weight search via Grover amplitude amplification "
               "on an exact state-vector simulator"};
  app.name("qpt");

  Config config;
  std::string predicate = "equal";
  std::string mode;
  std::string inputs_csv;
  std::string iterations = "auto";
  std::string format = "text";
  int max_k = 0;

  app.add_option("--ac", config.ac, "Activation threshold")->required();
  app.add_option("--n-inputs", config.n_inputs, "Number of input neurons")
      ->capture_default_str();
  app.add_option("--weight-bits", config.weight_bits, "Bits per synapse weight")
      ->capture_default_str();
  app.add_option("--predicate", predicate, "Activation predicate")
      ->check(CLI::IsMember({"equal", "geq"}))
      ->capture_default_str();
  app.add_option("--mode", mode, "weights: search w for fixed I; joint: search I and w; tune: sweep iteration counts")
      ->check(CLI::IsMember({"weights", "joint", "tune"}))
      ->required();
  auto* inputs_opt = app.add_option("--inputs", inputs_csv,
                                    "Fixed input bits, comma separated (e.g. 1,1)");
  auto* iterations_opt = app.add_option("--iterations", iterations,
                                        "Grover iterations: auto or a count")
                             ->capture_default_str();
  auto* max_k_opt = app.add_option("--max-k", max_k,
                                   "tune mode: largest iteration count tried "
                                   "(0 = plan for a single solution)");
  app.add_option("--shots", config.shots,
                 "Sampled measurement shots (0 = exact distribution)")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Sampling seed")->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  app.add_flag("--dump-circuit", config.dump_circuit,
               "Print the gate list instead of running it");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  config.predicate = predicate == "geq" ? Predicate::Geq : Predicate::Equal;
  config.mode = mode == "weights" ? RunMode::Weights
              : mode == "joint"   ? RunMode::Joint
                                  : RunMode::Tune;
  config.format = format == "csv"    ? OutputFormat::Csv
                : format == "json"   ? OutputFormat::Json
                                     : OutputFormat::Text;

  if (inputs_opt->count() > 0) config.inputs = parse_bit_list(inputs_csv);

  if (iterations == "auto") {
    config.iterations = kAutoIterations;
  } else {
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(iterations.data(), iterations.data() + iterations.size(), value);
    if (ec != std::errc{} || ptr != iterations.data() + iterations.size() || value < 0) {
      throw UsageError("--iterations: expected 'auto' or a non-negative count, got '" +
                       iterations + "'");
    }
    config.iterations = value;
  }

  switch (config.mode) {
    case RunMode::Weights:
      if (!config.inputs) throw UsageError("--inputs is required in weights mode");
      break;
    case RunMode::Joint:
      if (config.inputs) throw UsageError("--inputs is not valid in joint mode");
      break;
    case RunMode::Tune:
      break;
  }
  if (config.inputs &&
      static_cast<int>(config.inputs->size()) != config.n_inputs) {
    throw UsageError("--inputs: expected " + std::to_string(config.n_inputs) +
                     " bits, got " + std::to_string(config.inputs->size()));
  }
  if (max_k_opt->count() > 0) {
    if (config.mode != RunMode::Tune) throw UsageError("--max-k is only valid in tune mode");
    if (max_k < 0) throw UsageError("--max-k must be >= 0");
    config.max_k = max_k;
  }
  if (iterations_opt->count() > 0 && config.mode == RunMode::Tune) {
    throw UsageError("--iterations is not valid in tune mode; use --max-k");
  }

  try {
    config.problem().validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid problem: ") + e.what());
  }
  return config;
}

Report execute(const Config& config) {
  const ProblemSpec spec = config.problem();
  Report report;
  report.config = config;
  report.sum_bits = spec.sum_bits();

  Histogram sampled_from;
  switch (config.mode) {
    case RunMode::Weights: {
      if (!config.inputs) throw UsageError("--inputs is required in weights mode");
      RunResult run = run_weight_search(spec, *config.inputs, config.iterations);
      sampled_from = run.search_marginal;
      fill_from_run(report, run);
      break;
    }
    case RunMode::Joint: {
      RunResult run = run_joint_search(spec, config.iterations);
      sampled_from = run.search_marginal;
      report.weight_marg = weight_marginal(run);
      fill_from_run(report, run);
      break;
    }
    case RunMode::Tune: {
      const bool joint = !config.inputs.has_value();
      const int max_k = config.max_k > 0
                            ? config.max_k
                            : grover_iterations(spec.search_qubits(joint), 1);
      TuneResult tune = tune_iterations(spec, config.inputs, max_k);
      sampled_from = tune.best_run.search_marginal;
      if (joint) report.weight_marg = weight_marginal(tune.best_run);
      fill_from_run(report, tune.best_run);
      report.tune = TuneSummary{max_k, tune.best_k, tune.hit_rate,
                                tune.verified_mass_per_k};
      break;
    }
  }
  if (config.shots > 0) {
    report.samples = sample(sampled_from, config.shots, config.seed);
  }
  return report;
}

namespace {

std::string emit_text(const Report& report) {
  const ProblemSpec spec = report.config.problem();
  std::ostringstream out;
  out << "mode: " << mode_name(report.config.mode)
      << "  predicate: " << predicate_name(spec.predicate) << "  Ac: "
      << to_bitstring(static_cast<std::uint64_t>(spec.ac), report.sum_bits)
      << " (" << spec.ac << ")\n";
  if (!report.resolved_inputs.empty()) {
    out << "inputs:";
    for (std::size_t k = 0; k < report.resolved_inputs.size(); ++k) {
      out << " I" << k + 1 << "=" << report.resolved_inputs[k];
    }
    out << '\n';
  }
  if (report.tune) {
    out << "tune: max_k=" << report.tune->max_k << " best_k=" << report.tune->best_k
        << " hit_rate=" << format_probability(report.tune->hit_rate) << '\n';
    for (std::size_t k = 0; k < report.tune->verified_mass_per_k.size(); ++k) {
      out << "  k=" << k + 1 << " verified_mass="
          << format_probability(report.tune->verified_mass_per_k[k]) << '\n';
    }
  }
  out << "plan: n=" << report.plan.n << " l=" << report.plan.l
      << " iterations=" << report.plan.iterations << '\n';
  if (report.no_solutions_detected) out << "no solutions detected\n";
  out << '\n';

  // Columns mirror the training tables: weights, input bits, Ac, then the
  // simulated probability and the classical check.
  std::vector<std::string> header;
  std::vector<std::size_t> weight_fields;
  std::size_t input_field = report.search_labels.size();
  for (std::size_t f = 0; f < report.search_labels.size(); ++f) {
    if (report.search_labels[f] == "I") {
      input_field = f;
    } else {
      weight_fields.push_back(f);
    }
  }
  for (std::size_t f : weight_fields) header.push_back(report.search_labels[f]);
  for (int k = 1; k <= spec.n_inputs; ++k) header.push_back("I" + std::to_string(k));
  header.push_back("Ac");
  header.push_back("probability");
  header.push_back("verified");

  std::vector<std::vector<std::string>> rows;
  const std::string ac_bits =
      to_bitstring(static_cast<std::uint64_t>(spec.ac), report.sum_bits);
  for (const auto& entry : report.distribution) {
    std::vector<std::string> row;
    for (std::size_t f : weight_fields) {
      row.push_back(to_bitstring(entry.values[f], spec.weight_bits));
    }
    for (int k = 0; k < spec.n_inputs; ++k) {
      const int bit = input_field < entry.values.size()
                          ? static_cast<int>((entry.values[input_field] >> k) & 1)
                          : report.resolved_inputs[static_cast<std::size_t>(k)];
      row.push_back(std::to_string(bit));
    }
    row.push_back(ac_bits);
    row.push_back(format_probability(entry.probability));
    row.push_back(entry.verified ? "yes" : "no");
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> widths;
  for (const auto& h : header) widths.push_back(h.size());
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  const auto print_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      out << row[c];
      if (c + 1 < row.size()) {
        out << std::string(widths[c] - row[c].size(), ' ');
      }
    }
    out << '\n';
  };
  print_row(header);
  for (const auto& row : rows) print_row(row);

  out << "\nverified solutions (" << report.solutions.size() << "):\n";
  for (const auto& a : report.solutions.assignments) {
    out << " ";
    if (report.resolved_inputs.empty()) {
      for (std::size_t k = 0; k < a.inputs.size(); ++k) {
        out << " I" << k + 1 << "=" << a.inputs[k];
      }
    }
    for (std::size_t k = 0; k < a.weights.size(); ++k) {
      out << " w" << k + 1 << "="
          << to_bitstring(static_cast<std::uint64_t>(a.weights[k]), spec.weight_bits)
          << "(" << a.weights[k] << ")";
    }
    out << '\n';
  }

  if (report.weight_marg) {
    out << "\nweight marginal:\n";
    for (const auto& [key, p] : report.weight_marg->entries) {
      out << "  " << key << "  " << format_probability(p) << '\n';
    }
  }
  if (report.samples) {
    out << "\nsamples (shots=" << report.config.shots
        << ", seed=" << report.config.seed << "):\n";
    for (const auto& [key, count] : *report.samples) {
      out << "  " << key << "  " << count << '\n';
    }
  }
  return out.str();
}

std::string emit_csv(const Report& report) {
  std::ostringstream out;
  for (const auto& label : report.search_labels) out << label << ',';
  out << "value,probability,verified\n";
  for (const auto& entry : report.distribution) {
    std::string bits = entry.bits;
    std::replace(bits.begin(), bits.end(), ' ', ',');
    out << bits << ',';
    for (std::size_t v = 0; v < entry.values.size(); ++v) {
      if (v) out << ' ';
      out << entry.values[v];
    }
    out << ',' << format_probability(entry.probability) << ','
        << (entry.verified ? "true" : "false") << '\n';
  }
  return out.str();
}

nlohmann::json config_json(const Config& config) {
  nlohmann::json j{
      {"ac", config.ac},
      {"n_inputs", config.n_inputs},
      {"weight_bits", config.weight_bits},
      {"predicate", predicate_name(config.predicate)},
      {"mode", mode_name(config.mode)},
      {"shots", config.shots},
      {"seed", config.seed},
      {"format", format_name(config.format)},
  };
  if (config.iterations == kAutoIterations) {
    j["iterations"] = "auto";
  } else {
    j["iterations"] = config.iterations;
  }
  if (config.inputs) j["inputs"] = *config.inputs;
  if (config.mode == RunMode::Tune) j["max_k"] = config.max_k;
  return j;
}

std::string emit_json(const Report& report) {
  nlohmann::json j;
  j["config"] = config_json(report.config);
  j["plan"] = {{"n", report.plan.n},
               {"l", report.plan.l},
               {"iterations", report.plan.iterations}};
  j["distribution"] = nlohmann::json::array();
  for (const auto& entry : report.distribution) {
    j["distribution"].push_back({{"bits", entry.bits},
                                 {"values", entry.values},
                                 {"prob", entry.probability},
                                 {"verified", entry.verified}});
  }
  j["solutions"] = nlohmann::json::array();
  const ProblemSpec spec = report.config.problem();
  for (const auto& a : report.solutions.assignments) {
    j["solutions"].push_back({{"inputs", a.inputs},
                              {"weights", a.weights},
                              {"bits", a.weight_bits_string(spec.weight_bits)}});
  }
  j["no_solutions_detected"] = report.no_solutions_detected;
  if (report.weight_marg) {
    nlohmann::json marg = nlohmann::json::object();
    for (const auto& [key, p] : report.weight_marg->entries) marg[key] = p;
    j["weight_marginal"] = std::move(marg);
  }
  if (report.samples) {
    nlohmann::json samples = nlohmann::json::object();
    for (const auto& [key, count] : *report.samples) samples[key] = count;
    j["samples"] = std::move(samples);
  }
  if (report.tune) {
    j["tune"] = {{"max_k", report.tune->max_k},
                 {"best_k", report.tune->best_k},
                 {"hit_rate", report.tune->hit_rate},
                 {"verified_mass_per_k", report.tune->verified_mass_per_k}};
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::string emit(const Report& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Text:
      return emit_text(report);
    case OutputFormat::Csv:
      return emit_csv(report);
    case OutputFormat::Json:
      return emit_json(report);
  }
  return {};
}

std::string dump_circuit(const Config& config) {
  if (config.mode == RunMode::Tune) {
    throw UsageError("--dump-circuit is not available in tune mode");
  }
  const ProblemSpec spec = config.problem();
  if (spec.total_qubits() > StateVector::kMaxQubits) {
    throw std::length_error("problem needs " + std::to_string(spec.total_qubits()) +
                            " qubits, simulator caps at " +
                            std::to_string(StateVector::kMaxQubits) +
                            "; reduce n_inputs or weight_bits");
  }
  const bool joint = config.mode == RunMode::Joint;
  const std::optional<std::vector<int>> inputs_opt =
      joint ? std::optional<std::vector<int>>{} : config.inputs;

  int iterations = config.iterations;
  if (iterations == kAutoIterations) {
    iterations = resolve_auto_iterations(spec, joint, inputs_opt);
  }

  GateSequence circuit =
      build_state_prep(spec, joint, config.inputs.value_or(std::vector<int>{}));
  const GateSequence iteration = build_grover_iteration(spec, joint);
  for (int k = 0; k < iterations; ++k) circuit.append(iteration);
  return format_gate_sequence(circuit);
}

}  // namespace qpt
