// Times the production (OpenMP) gate kernels against the serial reference on
// identical gate lists, and cross-checks that both paths produce the same
// amplitudes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "qpt/grover.hpp"
#include "qpt/kernels.hpp"
#include "qpt/qarith.hpp"
#include "qpt/statevector.hpp"

namespace {

using qpt::Amplitude;
using qpt::Gate;

using ApplyFn = void (*)(std::span<Amplitude>, const Gate&);

std::vector<Amplitude> uniform_state(int n_qubits) {
  const std::uint64_t size = std::uint64_t{1} << n_qubits;
  const double amp = 1.0 / std::sqrt(static_cast<double>(size));
  return std::vector<Amplitude>(size, Amplitude{amp, 0.0});
}

double run_ms(const std::vector<Amplitude>& base, const std::vector<Gate>& gates,
              ApplyFn apply, int reps, std::vector<Amplitude>& out) {
  double total = 0.0;
  for (int r = 0; r < reps; ++r) {
    out = base;
    const auto start = std::chrono::steady_clock::now();
    for (const Gate& gate : gates) apply(out, gate);
    const auto stop = std::chrono::steady_clock::now();
    total += std::chrono::duration<double, std::milli>(stop - start).count();
  }
  return total / reps;
}

double max_abs_diff(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

void bench_case(const std::string& name, int n_qubits,
                const std::vector<Gate>& gates, int reps) {
  const auto base = uniform_state(n_qubits);
  std::vector<Amplitude> got_ref, got_par;
  const double ref_ms = run_ms(base, gates, &qpt::ref::apply_gate, reps, got_ref);
  const double par_ms = run_ms(base, gates, &qpt::kernels::apply_gate, reps, got_par);
  std::printf("%-28s %6d %9zu %12.2f %12.2f %9.2fx %10.1e\n", name.c_str(),
              n_qubits, gates.size(), ref_ms, par_ms, ref_ms / par_ms,
              max_abs_diff(got_ref, got_par));
}

}  // namespace

int main(int argc, char** argv) {
  int n_qubits = 20;
  int reps = 3;
  CLI::App app{"Gate-kernel benchmark: serial reference vs parallel kernels"};
  app.add_option("--qubits", n_qubits, "State size for the raw-kernel cases")
      ->check(CLI::Range(4, qpt::StateVector::kMaxQubits))
      ->capture_default_str();
  app.add_option("--reps", reps, "Repetitions per case")
      ->check(CLI::Range(1, 100))
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);
  std::printf("%-28s %6s %9s %12s %12s %9s %10s\n", "case", "qubits", "gates",
              "serial ms", "parallel ms", "speedup", "max|diff|");

  std::vector<Gate> h_sweep, x_sweep, z_sweep, mcz_all, mcx_chain;
  std::vector<int> all_qubits;
  for (int q = 0; q < n_qubits; ++q) {
    h_sweep.push_back(Gate::h(q));
    x_sweep.push_back(Gate::x(q));
    z_sweep.push_back(Gate::z(q));
    all_qubits.push_back(q);
  }
  for (int r = 0; r < n_qubits; ++r) mcz_all.push_back(Gate::mcz(all_qubits));
  for (int t = 2; t < n_qubits; ++t) {
    mcx_chain.push_back(Gate::mcx({t - 2, t - 1}, t));
  }

  bench_case("H sweep", n_qubits, h_sweep, reps);
  bench_case("X sweep", n_qubits, x_sweep, reps);
  bench_case("Z sweep", n_qubits, z_sweep, reps);
  bench_case("MCZ all qubits", n_qubits, mcz_all, reps);
  bench_case("MCX 2-control chain", n_qubits, mcx_chain, reps);

  // A full search iteration on a 19-qubit problem (4-bit weights).
  const qpt::ProblemSpec spec{2, 4, 9, qpt::Predicate::Equal};
  std::vector<Gate> iteration =
      qpt::build_state_prep(spec, /*joint=*/true, {}).gates;
  const auto step = qpt::build_grover_iteration(spec, /*joint=*/true).gates;
  iteration.insert(iteration.end(), step.begin(), step.end());
  bench_case("oracle + diffusion", spec.total_qubits(), iteration, reps);

  return 0;
}
