#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hehucc/errors.hpp"
#include "hehucc/scan.hpp"
#include "hehucc/vqe.hpp"
#include "test_support.hpp"

using namespace hehucc;

namespace {

struct R17 {
  MolecularProblem problem = testing_support::heh(1.7);
  Eigensystem es = exact_eigensystem(problem.hamiltonian);
};

const R17& r17() {
  static const R17 r;
  return r;
}

ScanConfig scan_config(const VqeOptions& vqe = {}) {
  ScanConfig cfg;
  cfg.basis = testing_support::sto3g();
  cfg.vqe = vqe;
  return cfg;
}

VqeOptions folded_options() {
  VqeOptions o;
  o.mode = ParamMode::full6;
  o.prep = Preparation::exact;
  NelderMeadConfig nm = vqe_optimizer_defaults(false);
  nm.f_tolerance = 1e-14;
  o.optimizer = nm;
  o.convergence_restarts = 20;
  return o;
}

void check_accepted_non_increasing(const VqeResult& r) {
  double best = INFINITY;
  for (const auto& e : r.trace) {
    CHECK(e.fidelity >= 0.0);
    CHECK(e.fidelity <= 1.0);
    if (!e.accepted) continue;
    CHECK(e.energy <= best);
    best = e.energy;
  }
}

}  // namespace

TEST_CASE("exact_eigensystem examples") {
  Eigen::Matrix4cd d = Eigen::Matrix4cd::Zero();
  d.diagonal() << 3.0, -1.0, 2.0, 0.5;
  const auto e = exact_eigensystem(d);
  CHECK(e.values == Eigen::Vector4d(-1.0, 0.5, 2.0, 3.0));

  const auto& h = r17().problem.hamiltonian.matrix;
  const auto& es = r17().es;
  Eigen::Matrix4cd rebuilt = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) rebuilt += es.values[i] * es.vectors.col(i) * es.vectors.col(i).adjoint();
  CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((es.vectors.adjoint() * es.vectors - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(es.values[i - 1] <= es.values[i]);

  Eigen::Matrix4cd bad = Eigen::Matrix4cd::Zero();
  bad(0, 3) = 1.0;
  CHECK_THROWS_AS(exact_eigensystem(bad), PreconditionError);
}

TEST_CASE("reduced2 exact-mode VQE at R = 1.7 reaches the exact ground energy") {
  const auto& r = r17();
  VqeOptions o;
  const auto res = vqe_ground(r.problem.hamiltonian, o);
  CHECK(res.converged);
  CHECK(res.exact_ground == r.es.values[0]);
  CHECK(std::abs(res.energy - r.es.values[0]) < 1e-6);
  CHECK(res.energy >= r.es.values[0] - 1e-10);
  CHECK(res.fidelity >= 0.999);
  CHECK(res.restarts == 0);
  CHECK(res.final_prep == Preparation::trotter);
  CHECK(res.settings_per_evaluation == 0);
  CHECK(res.iterations == static_cast<int>(res.trace.size()));
  check_accepted_non_increasing(res);
  for (const auto& e : res.trace) CHECK(e.energy >= r.es.values[0] - 1e-10);
  // The reported state is the one the energy belongs to.
  CHECK(std::abs(exact_expectation(res.state, r.problem.hamiltonian.matrix) - res.energy) < 1e-12);
}

TEST_CASE("full6 converges within 300 iterations and needs more than reduced2") {
  const auto& r = r17();
  VqeOptions full;
  full.mode = ParamMode::full6;
  const auto a = vqe_ground(r.problem.hamiltonian, full);
  const auto b = vqe_ground(r.problem.hamiltonian, VqeOptions{});
  MESSAGE("iterations at R=1.7: full6 " << a.iterations << ", reduced2 " << b.iterations);
  CHECK(a.converged);
  CHECK(a.restarts == 0);
  CHECK(a.iterations <= 300);
  CHECK(b.iterations < a.iterations);
  check_accepted_non_increasing(a);
  // Same singlet minimum from both parameterizations.
  CHECK(std::abs(a.energy - b.energy) < 1e-6);
  CHECK(std::abs(a.energy - r.es.values[0]) < 1e-6);
}

TEST_CASE("qudit and qubit backends give the same optimized energy") {
  const auto& r = r17();
  VqeOptions qudit;
  VqeOptions qubits;
  qubits.backend = Backend::qubits;
  qubits.qubit_hamiltonian = pauli_to_matrix(jw_transform(r.problem.ints));
  const auto a = vqe_ground(r.problem.hamiltonian, qudit);
  const auto b = vqe_ground(r.problem.hamiltonian, qubits);
  CHECK(std::abs(a.energy - b.energy) < 1e-8);
  CHECK(std::abs(a.fidelity - b.fidelity) < 1e-8);

  VqeOptions missing;
  missing.backend = Backend::qubits;
  CHECK_THROWS_AS(vqe_ground(r.problem.hamiltonian, missing), PreconditionError);
}

TEST_CASE("exact-prep polish and option validation") {
  const auto& r = r17();
  VqeOptions o;
  o.start = {0.01, -0.01};
  o.polish_exact = true;
  const auto res = vqe_ground(r.problem.hamiltonian, o);
  CHECK(res.final_prep == Preparation::exact);
  CHECK(std::abs(res.energy - r.es.values[0]) < 1e-6);
  CHECK(res.fidelity >= 0.999);
  CHECK(std::abs(exact_expectation(ucc_state_exact(res.best), r.problem.hamiltonian.matrix) - res.energy) < 1e-12);

  VqeOptions wrong_start;
  wrong_start.start = {0.1};
  CHECK_THROWS_AS(vqe_ground(r.problem.hamiltonian, wrong_start), PreconditionError);
  VqeOptions zero_steps;
  zero_steps.trotter_steps = 0;
  CHECK_THROWS_AS(vqe_ground(r.problem.hamiltonian, zero_steps), PreconditionError);
}

TEST_CASE("restart after the iteration cap") {
  const auto& r = r17();
  VqeOptions o;
  o.mode = ParamMode::full6;
  NelderMeadConfig nm = vqe_optimizer_defaults(false);
  nm.max_iterations = 10;
  o.optimizer = nm;
  const auto res = vqe_ground(r.problem.hamiltonian, o);
  CHECK(res.restarts == 1);
  CHECK(res.iterations == 20);
  CHECK_FALSE(res.converged);

  o.restart = false;
  const auto once = vqe_ground(r.problem.hamiltonian, o);
  CHECK(once.restarts == 0);
  CHECK(once.iterations == 10);
}

TEST_CASE("restarts after convergence rescue stalled folded searches") {
  const auto& r = r17();
  const auto& e = r.es.values;
  VqeOptions plain = folded_options();
  plain.convergence_restarts = 0;
  const VqeOptions rescued = folded_options();
  int stalled = 0;
  for (double lambda = -3.0; lambda <= 0.0; lambda += 0.1) {
    CAPTURE(lambda);
    const auto h = fold(r.problem.hamiltonian, lambda);
    const double target = (e.array() - lambda).square().minCoeff();
    const auto a = vqe_ground(h, plain);
    const auto b = vqe_ground(h, rescued);
    if (a.energy - target > 1e-9) ++stalled;
    CHECK(b.energy <= a.energy);
    CHECK(std::abs(b.energy - target) < 1e-9);
    check_accepted_non_increasing(b);
  }
  MESSAGE("single-run searches that stalled above the minimum: " << stalled);
}

TEST_CASE("variational bound over random amplitudes, fields and folds") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (double R : {0.8, 1.7, 4.0}) {
    const auto p = testing_support::heh(R);
    std::vector<QuditHamiltonian> hs{p.hamiltonian};
    for (double f : {-0.1, 0.05}) hs.push_back(field_dress(p.hamiltonian, p.ints, p.geometry, Vec3(0, 0, f)));
    hs.push_back(fold(p.hamiltonian, -2.0));
    for (const auto& h : hs) {
      const double e0 = exact_eigensystem(h).values[0];
      for (int k = 0; k < 200; ++k) {
        const auto t = ClusterAmplitudes::full({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)});
        CHECK(exact_expectation(ucc_state_trotter(t), h.matrix) >= e0 - 1e-10);
        CHECK(exact_expectation(ucc_state_exact(t), h.matrix) >= e0 - 1e-10);
      }
    }
  }
}

TEST_CASE("shot-mode VQE is deterministic and lands near the ground state") {
  const auto& r = r17();
  VqeOptions o;
  o.shots = ShotPlan{1000, 21, false};
  o.terms = r.problem.terms;
  const auto a = vqe_ground(r.problem.hamiltonian, o);
  const auto b = vqe_ground(r.problem.hamiltonian, o);
  CHECK(a.energy == b.energy);
  CHECK(a.std_error == b.std_error);
  CHECK(a.best.to_vector() == b.best.to_vector());
  CHECK(a.settings_per_evaluation == 16);
  CHECK(a.std_error > 0.0);
  CHECK(std::abs(a.energy - r.es.values[0]) < 5.0 * a.std_error);
  CHECK(a.fidelity >= 0.95);

  o.estimator = EnergyEstimator::tomography;
  const auto t = vqe_ground(r.problem.hamiltonian, o);
  CHECK(t.settings_per_evaluation == kTomographySettings);
  CHECK(std::abs(t.energy - r.es.values[0]) < 5.0 * t.std_error);

  VqeOptions elementwise;
  elementwise.shots = ShotPlan{1000, 21, false};
  const auto e = vqe_ground(r.problem.hamiltonian, elementwise);
  CHECK(e.settings_per_evaluation == static_cast<int>(decompose_terms(elementwise_terms(r.problem.hamiltonian.matrix)).observables.size()));
}

TEST_CASE("elementwise_terms sum to the matrix") {
  const auto& h = r17().problem.hamiltonian.matrix;
  Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
  for (const auto& t : elementwise_terms(h)) {
    CHECK(is_hermitian(t));
    sum += t;
  }
  CHECK((sum - h).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("perturbative field energies") {
  const auto& r = r17();
  const auto& p = r.problem;
  const Eigen::Matrix4cd v = field_operator(p.ints, p.geometry, Vec3::UnitZ());
  const std::vector<double> eps{0.0, 1e-3, 2e-3, 0.01, 0.05};
  const auto c = perturbative_field_energies(p.hamiltonian, v, eps);
  CHECK(c.first_order[0] == r.es.values[0]);
  CHECK(c.second_order[0] == r.es.values[0]);

  const double slope = (c.first_order[1] - c.first_order[0]) / eps[1];
  for (std::size_t i = 1; i < eps.size(); ++i) {
    CHECK(std::abs(c.first_order[i] - (c.first_order[0] + slope * eps[i])) < 1e-13);
    CHECK(c.second_order[i] <= c.first_order[i]);  // second-order shift of a ground state is never positive
  }

  std::vector<double> grid, err;
  for (int k = 0; k <= 8; ++k) grid.push_back(1e-3 * std::pow(100.0, k / 8.0));
  const auto curves = perturbative_field_energies(p.hamiltonian, v, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto dressed = field_dress(p.hamiltonian, p.ints, p.geometry, Vec3(0, 0, grid[i]));
    err.push_back(std::abs(exact_eigensystem(dressed).values[0] - curves.second_order[i]));
  }
  const double fitted = testing_support::loglog_slope(grid, err);
  MESSAGE("log-log slope of the second-order residual: " << fitted);
  CHECK(fitted >= 2.7);

  QuditHamiltonian degenerate;
  degenerate.matrix.diagonal() << -1.0, -1.0, 0.0, 1.0;
  CHECK_THROWS_AS(perturbative_field_energies(degenerate, v, eps), DegeneracyError);
}

TEST_CASE("dissociation scan: parallel equals serial, bound holds, failures are marked") {
  const std::vector<double> grid{-1.0, 0.9, 1.7, 3.0};
  const auto cfg = scan_config();
  const auto par = dissociation_scan(grid, cfg);
  const auto ser = reference::dissociation_scan(grid, cfg);
  REQUIRE(par.size() == grid.size());
  CHECK_FALSE(par[0].ok);
  CHECK_FALSE(par[0].error.empty());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CAPTURE(grid[i]);
    CHECK(par[i].ok == ser[i].ok);
    CHECK(par[i].e_vqe == ser[i].e_vqe);
    CHECK(par[i].iterations == ser[i].iterations);
    if (!par[i].ok) continue;
    CHECK(par[i].bond_length == grid[i]);
    CHECK(par[i].e_vqe >= par[i].e_exact - 1e-10);
    CHECK(std::abs(par[i].e_vqe - par[i].e_exact) < 1e-6);
    CHECK(par[i].vqe(EnergyConvention::total) - par[i].vqe(EnergyConvention::electronic) ==
          doctest::Approx(par[i].nuclear_repulsion).epsilon(1e-14));
    CHECK(par[i].nuclear_repulsion == doctest::Approx(2.0 / grid[i]).epsilon(1e-14));
  }

  VqeOptions shots;
  shots.shots = ShotPlan{200, 0, false};
  auto noisy = scan_config(shots);
  noisy.seed = 5;
  const std::vector<double> two{1.2, 2.0};
  const auto np = dissociation_scan(two, noisy);
  const auto ns = reference::dissociation_scan(two, noisy);
  for (std::size_t i = 0; i < two.size(); ++i) {
    CHECK(np[i].e_vqe == ns[i].e_vqe);
    CHECK(np[i].std_error == ns[i].std_error);
  }
  CHECK(np[0].e_vqe != np[1].e_vqe);
}

TEST_CASE("large-R plateau") {
  const std::vector<double> grid{5.5, 6.0};
  const auto pts = dissociation_scan(grid, scan_config());
  REQUIRE(pts[0].ok);
  REQUIRE(pts[1].ok);
  CHECK(std::abs(pts[1].e_vqe - pts[0].e_vqe) < 0.01);
  CHECK(std::abs(pts[1].e_exact - pts[0].e_exact) < 0.01);
}

TEST_CASE("field scan") {
  const auto cfg = scan_config();
  const std::vector<double> strengths{0.0, -0.05, 0.05, 0.1, 0.15, 0.2};
  const auto par = field_scan(1.7, strengths, cfg);
  const auto ser = reference::field_scan(1.7, strengths, cfg);
  for (std::size_t i = 0; i < strengths.size(); ++i) {
    CAPTURE(strengths[i]);
    REQUIRE(par[i].ok);
    CHECK(par[i].e_vqe == ser[i].e_vqe);
    CHECK(par[i].e_vqe >= par[i].e_exact - 1e-10);
    CHECK(std::abs(par[i].e_vqe - par[i].e_exact) < 1e-6);
  }
  const auto surface = dissociation_scan(std::vector<double>{1.7}, cfg);
  CHECK(std::abs(par[0].e_exact - surface[0].e_exact) < 1e-12);
  CHECK(std::abs(par[0].e_vqe - surface[0].e_vqe) < 1e-9);
  CHECK(par[0].e_first_order == par[0].e_exact);

  // A polar molecule: the sign of the field matters.
  CHECK(std::abs(par[1].e_exact - par[2].e_exact) > 1e-4);

  // Beyond the onset the energy keeps falling as the field grows.
  for (std::size_t i = 3; i < strengths.size(); ++i) CHECK(par[i].e_exact < par[i - 1].e_exact);

  CHECK_THROWS_AS(field_scan(1.7, strengths, cfg, Vec3(0, 0, 2)), PreconditionError);
}

TEST_CASE("folded scan recovers eigenvalues") {
  const auto& r = r17();
  const auto cfg = scan_config(folded_options());
  const auto& e = r.es.values;
  std::vector<double> lambdas;
  for (int i = 0; i < 4; ++i) lambdas.push_back(e[i]);
  lambdas.push_back(0.5 * (e[0] + e[1]) - 0.1);
  lambdas.push_back(e[3] + 0.03);
  lambdas.push_back(NAN);

  const auto par = folded_scan(r.problem.hamiltonian, lambdas, cfg);
  const auto ser = reference::folded_scan(r.problem.hamiltonian, lambdas, cfg);
  for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
    CAPTURE(lambdas[i]);
    REQUIRE(par[i].ok);
    CHECK(par[i].min_value == ser[i].min_value);
    CHECK(par[i].min_value >= par[i].exact_min - 1e-10);
    CHECK(std::abs(par[i].min_value - par[i].exact_min) < 1e-8);
    CHECK(par[i].fidelity >= 1.0 - 1e-8);
    double nearest = e[0];
    for (int k = 1; k < 4; ++k)
      if (std::abs(e[k] - lambdas[i]) < std::abs(nearest - lambdas[i])) nearest = e[k];
    const double recovered =
        std::abs(par[i].e_plus - nearest) < std::abs(par[i].e_minus - nearest) ? par[i].e_plus : par[i].e_minus;
    CHECK(std::abs(recovered - nearest) < 1e-6);
  }
  for (int i = 0; i < 4; ++i) CHECK(par[i].min_value < 1e-8);
  CHECK_FALSE(par.back().ok);
}

TEST_CASE("linear_grid") {
  const auto g = linear_grid(0.5, 4.0, 0.1);
  CHECK(g.size() == 36);
  CHECK(g.front() == 0.5);
  CHECK(std::abs(g.back() - 4.0) < 1e-12);
  CHECK(linear_grid(1.0, 1.0, 0.5) == std::vector<double>{1.0});
  CHECK(linear_grid(0.0, 1.0, 0.3).size() == 4);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 0.1), PreconditionError);
  CHECK_THROWS_AS(linear_grid(0.0, NAN, 0.1), PreconditionError);
}
