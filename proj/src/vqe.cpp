#include "hehucc/vqe.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "hehucc/errors.hpp"

namespace hehucc {

namespace {

constexpr std::uint64_t kFinalMeasurementStream = std::uint64_t{1} << 40;

Eigen::VectorXcd qubit_state(const ClusterAmplitudes& t, const VqeOptions& o) {
  if (o.prep == Preparation::trotter) return ucc_state_qubits(t, o.trotter_steps);
  PauliSum generator(kQubits);
  for (const auto& g : cluster_generators_qubits(t)) generator += g;
  const Eigen::MatrixXcd u = (cplx{0.0, -1.0} * pauli_to_matrix(generator)).exp();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
  psi[kSectorBasis[0].occupation] = 1.0;
  return u * psi;
}

class EnergyEvaluator {
 public:
  EnergyEvaluator(const QuditHamiltonian& h, const VqeOptions& o) : h_(h), o_(o) {
    if (o.backend == Backend::qubits && (o.qubit_hamiltonian.rows() != 16 || o.qubit_hamiltonian.cols() != 16))
      throw PreconditionError("qubit backend needs the 16x16 Hamiltonian");
    if (o.shots && o.estimator == EnergyEstimator::term_by_term) {
      terms_ = o.terms.empty() ? elementwise_terms(h.matrix) : o.terms;
      settings_ = static_cast<int>(decompose_terms(terms_).observables.size());
    } else if (o.shots) {
      settings_ = kTomographySettings;
    }
  }

  int settings() const { return settings_; }

  Estimate operator()(const ClusterAmplitudes& t, std::uint64_t stream) const {
    if (o_.backend == Backend::qubits && !o_.shots) {
      const Eigen::VectorXcd psi = qubit_state(t, o_);
      return {psi.dot(o_.qubit_hamiltonian * psi).real(), 0.0};
    }
    const QuditState psi = prepare_state(t, o_);
    if (!o_.shots) return {exact_expectation(psi, h_.matrix), 0.0};
    ShotPlan plan = *o_.shots;
    plan.seed = derive_seed(plan.seed, stream);
    if (o_.estimator == EnergyEstimator::tomography) return tomography_energy(tomography(psi, plan), h_.matrix);
    const TermEnergy e = term_by_term_energy(psi, h_.matrix, terms_, plan);
    return {e.energy, e.std_error};
  }

 private:
  const QuditHamiltonian& h_;
  const VqeOptions& o_;
  std::vector<Eigen::Matrix4cd> terms_;
  int settings_ = 0;
};

}  // namespace

std::string_view to_string(Preparation p) { return p == Preparation::trotter ? "trotter" : "exact"; }
std::string_view to_string(Backend b) { return b == Backend::qudit ? "qudit" : "qubits"; }
std::string_view to_string(EnergyEstimator e) {
  return e == EnergyEstimator::term_by_term ? "term_by_term" : "tomography";
}

Eigensystem exact_eigensystem(const Eigen::Matrix4cd& h) {
  if (!is_hermitian(h, 1e-10)) throw PreconditionError("exact_eigensystem needs a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

NelderMeadConfig vqe_optimizer_defaults(bool shot_mode) {
  NelderMeadConfig cfg;
  cfg.initial_scale = 0.1;
  cfg.f_tolerance = shot_mode ? 1e-3 : 1e-8;
  cfg.max_iterations = 300;
  return cfg;
}

QuditState prepare_state(const ClusterAmplitudes& t, const VqeOptions& o) {
  if (o.backend == Backend::qubits) return {project_sector_state(qubit_state(t, o))};
  return o.prep == Preparation::trotter ? ucc_state_trotter(t, o.trotter_steps) : ucc_state_exact(t);
}

std::vector<Eigen::Matrix4cd> elementwise_terms(const Eigen::Matrix4cd& h) {
  std::vector<Eigen::Matrix4cd> terms;
  Eigen::Matrix4cd diag = Eigen::Matrix4cd::Zero();
  diag.diagonal() = h.diagonal();
  terms.push_back(diag);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(h(i, j)) == 0.0) continue;
      Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
      t(i, j) = h(i, j);
      t(j, i) = h(j, i);
      terms.push_back(t);
    }
  return terms;
}

VqeResult vqe_ground(const QuditHamiltonian& h, const VqeOptions& options) {
  const auto spectrum = exact_eigensystem(h);
  const Eigen::Vector4cd ground = spectrum.vectors.col(0);
  if (options.trotter_steps < 1) throw PreconditionError("Trotter step count must be >= 1");
  const std::size_t n_params = parameter_count(options.mode);
  std::vector<double> x0 = options.start.empty() ? std::vector<double>(n_params, 0.0) : options.start;
  if (x0.size() != n_params) throw PreconditionError("start vector has the wrong number of parameters");

  VqeOptions active = options;
  const NelderMeadConfig cfg = options.optimizer.value_or(vqe_optimizer_defaults(options.shots.has_value()));

  VqeResult result;
  result.exact_ground = spectrum.values[0];
  std::uint64_t stream = 0;

  auto fidelity_at = [&](const std::vector<double>& x) {
    const QuditState psi = prepare_state(ClusterAmplitudes::from_vector(x, options.mode), active);
    return std::min(1.0, std::norm(ground.dot(psi.amplitudes)));
  };

  auto run = [&](const std::vector<double>& start, const NelderMeadConfig& c) {
    const EnergyEvaluator evaluate(h, active);
    result.settings_per_evaluation = evaluate.settings();
    auto objective = [&](std::span<const double> x) {
      return evaluate(ClusterAmplitudes::from_vector(x, options.mode), stream++).value;
    };
    NelderMeadResult nm = nelder_mead(objective, start, c);
    const int base = result.iterations;
    for (const auto& e : nm.trace)
      result.trace.push_back({base + e.iteration, e.f, e.improved, fidelity_at(e.x)});
    result.iterations += nm.iterations;
    result.evaluations += nm.evaluations;
    return nm;
  };

  NelderMeadResult nm = run(x0, cfg);
  if (!nm.converged && options.restart) {
    ++result.restarts;
    nm = run(nm.x, cfg);
  }
  for (int k = 0; k < options.convergence_restarts; ++k) {
    ++result.restarts;
    NelderMeadResult again = run(nm.x, cfg);
    const bool improved = again.f < nm.f - cfg.f_tolerance;
    if (again.f <= nm.f) nm = std::move(again);
    if (!improved) break;
  }
  if (options.polish_exact && options.prep == Preparation::trotter) {
    active.prep = Preparation::exact;
    NelderMeadConfig polish = cfg;
    polish.initial_step.clear();
    polish.initial_scale = 0.01;
    nm = run(nm.x, polish);
  }

  result.converged = nm.converged;
  result.final_prep = active.prep;
  result.best = ClusterAmplitudes::from_vector(nm.x, options.mode);
  result.state = prepare_state(result.best, active);
  result.optimizer_energy = nm.f;
  result.fidelity = std::min(1.0, std::norm(ground.dot(result.state.amplitudes)));
  if (options.shots) {
    const Estimate final = EnergyEvaluator(h, active)(result.best, kFinalMeasurementStream);
    result.energy = final.value;
    result.std_error = final.std_error;
  } else {
    result.energy = nm.f;
  }
  return result;
}

PerturbativeCurves perturbative_field_energies(const QuditHamiltonian& h0, const Eigen::Matrix4cd& v,
                                               std::span<const double> strengths) {
  if (!is_hermitian(v, 1e-10)) throw PreconditionError("perturbation must be Hermitian");
  const auto es = exact_eigensystem(h0);
  if (es.values[1] - es.values[0] < 1e-8) throw DegeneracyError("ground state of H0 is degenerate");
  const Eigen::Vector4cd g = es.vectors.col(0);
  const double first = g.dot(v * g).real();
  double second = 0.0;
  for (int n = 1; n < 4; ++n) second += std::norm(es.vectors.col(n).dot(v * g)) / (es.values[0] - es.values[n]);

  PerturbativeCurves out;
  for (double e : strengths) {
    out.first_order.push_back(es.values[0] + e * first);
    out.second_order.push_back(es.values[0] + e * first + e * e * second);
  }
  return out;
}

}  // namespace hehucc
