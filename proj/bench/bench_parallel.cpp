// OpenMP kernels against their serial references.

#include <random>

#include <benchmark/benchmark.h>

#include "hehucc/pauli.hpp"
#include "hehucc/scan.hpp"

using namespace hehucc;

namespace {

PauliSum random_sum(int qubits, int terms) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> coeff;
  PauliSum ps(qubits);
  for (int t = 0; t < terms; ++t) {
    std::string s;
    for (int q = 0; q < qubits; ++q) s += "IXYZ"[letter(rng)];
    ps += PauliSum::term(s, coeff(rng));
  }
  return ps;
}

const ScanConfig& scan_config() {
  static const ScanConfig cfg = [] {
    ScanConfig c;
    c.basis = load_basis_library(default_basis_path());
    c.vqe.mode = ParamMode::full6;
    return c;
  }();
  return cfg;
}

template <Eigen::MatrixXcd (*Expand)(const PauliSum&)>
void BM_pauli_to_matrix(benchmark::State& state) {
  const PauliSum ps = random_sum(static_cast<int>(state.range(0)), 64);
  for (auto _ : state) benchmark::DoNotOptimize(Expand(ps));
}

template <std::vector<SurfacePoint> (*Scan)(std::span<const double>, const ScanConfig&)>
void BM_dissociation_scan(benchmark::State& state) {
  const auto grid = linear_grid(0.5, 4.5, 4.0 / (state.range(0) - 1));
  for (auto _ : state) benchmark::DoNotOptimize(Scan(grid, scan_config()));
}

template <std::vector<FoldedPoint> (*Scan)(const QuditHamiltonian&, std::span<const double>, const ScanConfig&)>
void BM_folded_scan(benchmark::State& state) {
  const auto h = build_heh_problem(1.7, scan_config().basis).hamiltonian;
  const auto lambdas = linear_grid(-4.0, 1.0, 5.0 / (state.range(0) - 1));
  for (auto _ : state) benchmark::DoNotOptimize(Scan(h, lambdas, scan_config()));
}

}  // namespace

BENCHMARK(BM_pauli_to_matrix<pauli_to_matrix>)->Name("pauli_to_matrix/omp")->DenseRange(6, 10, 2);
BENCHMARK(BM_pauli_to_matrix<reference::pauli_to_matrix>)->Name("pauli_to_matrix/serial")->DenseRange(6, 10, 2);
BENCHMARK(BM_dissociation_scan<dissociation_scan>)->Name("dissociation_scan/omp")->Arg(21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dissociation_scan<reference::dissociation_scan>)
    ->Name("dissociation_scan/serial")
    ->Arg(21)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_folded_scan<folded_scan>)->Name("folded_scan/omp")->Arg(41)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_folded_scan<reference::folded_scan>)->Name("folded_scan/serial")->Arg(41)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
