#include "hehucc/measurement.hpp"

#include <cmath>
#include <random>

#include "hehucc/errors.hpp"
#include "hehucc/hamiltonian.hpp"

namespace hehucc {

namespace {

void require_hermitian(const Eigen::Matrix4cd& o) {
  if (!is_hermitian(o, 1e-10)) throw PreconditionError("observable is not Hermitian");
}

double real_checked(cplx v) {
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
    throw PreconditionError("expectation value has a non-negligible imaginary part");
  return v.real();
}

// Multinomial outcome counts by sequential binomial draws.
Estimate sample_outcomes(const Eigen::Vector4d& eigenvalues, Eigen::Vector4d probs, std::uint64_t shots,
                         std::uint64_t seed) {
  if (shots < 1) throw PreconditionError("shot count must be >= 1");
  probs = probs.cwiseMax(0.0);
  probs /= probs.sum();
  std::mt19937_64 rng(seed);
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t remaining = shots;
  double mass = 1.0;
  for (int i = 0; i < 3 && remaining > 0; ++i) {
    const double p = mass > 0.0 ? std::clamp(probs[i] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::uint64_t> draw(remaining, p);
    counts[i] = draw(rng);
    remaining -= counts[i];
    mass -= probs[i];
  }
  counts[3] = remaining;

  const auto n = static_cast<double>(shots);
  double mean = 0.0;
  for (int i = 0; i < 4; ++i) mean += counts[i] * eigenvalues[i];
  mean /= n;
  double ss = 0.0;
  for (int i = 0; i < 4; ++i) ss += counts[i] * (eigenvalues[i] - mean) * (eigenvalues[i] - mean);
  const double variance = shots > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(variance / n)};
}

template <class Probe>
Estimate sample_in_eigenbasis(const Eigen::Matrix4cd& observable, std::uint64_t shots, std::uint64_t seed,
                              Probe&& probability) {
  require_hermitian(observable);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(observable);
  Eigen::Vector4d probs;
  for (int i = 0; i < 4; ++i) probs[i] = probability(es.eigenvectors().col(i));
  return sample_outcomes(es.eigenvalues(), probs, shots, seed);
}

Eigen::Matrix4cd off_diagonal(const Eigen::Matrix4cd& m) {
  Eigen::Matrix4cd o = m;
  o.diagonal().setZero();
  return o;
}

template <class State>
Tomogram tomography_impl(const State& state, const ShotPlan& plan) {
  const auto& basis = gell_mann_basis();
  Tomogram t;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < kTomographySettings; ++k) {
    if (plan.exact)
      t.generator_means[k] = {exact_expectation(state, basis[k]), 0.0};
    else
      t.generator_means[k] =
          sampled_expectation(state, basis[k], plan.shots_per_setting, derive_seed(plan.seed, static_cast<std::uint64_t>(k)));
  }
  Eigen::Matrix4cd rho = 0.25 * Eigen::Matrix4cd::Identity();
  for (int k = 0; k < kTomographySettings; ++k) rho += 0.5 * t.generator_means[k].value * basis[k];
  t.rho.matrix = rho;
  return t;
}

}  // namespace

DensityMatrix DensityMatrix::pure(const QuditState& psi) {
  return {psi.amplitudes * psi.amplitudes.adjoint()};
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(matrix);
  return es.eigenvalues()[0];
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double exact_expectation(const QuditState& psi, const Eigen::Matrix4cd& observable) {
  require_hermitian(observable);
  return real_checked(psi.amplitudes.dot(observable * psi.amplitudes));
}

double exact_expectation(const DensityMatrix& rho, const Eigen::Matrix4cd& observable) {
  require_hermitian(observable);
  return real_checked((rho.matrix * observable).trace());
}

Estimate sampled_expectation(const QuditState& psi, const Eigen::Matrix4cd& observable, std::uint64_t shots,
                             std::uint64_t seed) {
  return sample_in_eigenbasis(observable, shots, seed,
                              [&](const Eigen::Vector4cd& v) { return std::norm(v.dot(psi.amplitudes)); });
}

Estimate sampled_expectation(const DensityMatrix& rho, const Eigen::Matrix4cd& observable, std::uint64_t shots,
                             std::uint64_t seed) {
  return sample_in_eigenbasis(observable, shots, seed,
                              [&](const Eigen::Vector4cd& v) { return v.dot(rho.matrix * v).real(); });
}

MeasurementSettings decompose_terms(const std::vector<Eigen::Matrix4cd>& terms) {
  MeasurementSettings out;
  auto nonzero = [](const Eigen::Matrix4cd& m) { return m.cwiseAbs().maxCoeff() > 1e-12; };
  for (const auto& t : terms) {
    require_hermitian(t);
    Eigen::Matrix4cd diag = Eigen::Matrix4cd::Zero();
    diag.diagonal() = t.diagonal().real().cast<cplx>();
    const double shift = diag.trace().real() / 4.0;
    out.constant += shift;
    diag -= shift * Eigen::Matrix4cd::Identity();
    const Eigen::Matrix4cd off = off_diagonal(t);
    const Eigen::Matrix4cd symmetric = off.real().cast<cplx>();
    const Eigen::Matrix4cd antisymmetric = cplx{0.0, 1.0} * off.imag().cast<cplx>();
    for (const auto& m : {diag, symmetric, antisymmetric})
      if (nonzero(m)) out.observables.push_back(m);
  }
  return out;
}

TermEnergy term_by_term_energy(const QuditState& psi, const Eigen::Matrix4cd& hamiltonian,
                               const std::vector<Eigen::Matrix4cd>& terms, const ShotPlan& plan) {
  Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
  for (const auto& t : terms) sum += t;
  const double mismatch = (sum - hamiltonian).cwiseAbs().maxCoeff();
  if (mismatch > 1e-10)
    throw DecompositionError("measurement terms do not sum to the Hamiltonian (max deviation " +
                             std::to_string(mismatch) + ")");

  const MeasurementSettings settings = decompose_terms(terms);
  const int n = static_cast<int>(settings.observables.size());
  std::vector<Estimate> estimates(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    if (plan.exact)
      estimates[k] = {exact_expectation(psi, settings.observables[k]), 0.0};
    else
      estimates[k] = sampled_expectation(psi, settings.observables[k], plan.shots_per_setting,
                                         derive_seed(plan.seed, static_cast<std::uint64_t>(k)));
  }
  TermEnergy out;
  out.energy = settings.constant;
  double var = 0.0;
  for (const auto& e : estimates) {
    out.energy += e.value;
    var += e.std_error * e.std_error;
  }
  out.std_error = std::sqrt(var);
  out.settings_used = n;
  return out;
}

const std::array<Eigen::Matrix4cd, kTomographySettings>& gell_mann_basis() {
  static const auto basis = [] {
    std::array<Eigen::Matrix4cd, kTomographySettings> g;
    int k = 0;
    for (int j = 0; j < 4; ++j)
      for (int l = j + 1; l < 4; ++l) {
        g[k].setZero();
        g[k](j, l) = g[k](l, j) = 1.0;
        ++k;
      }
    for (int j = 0; j < 4; ++j)
      for (int l = j + 1; l < 4; ++l) {
        g[k].setZero();
        g[k](j, l) = cplx{0.0, -1.0};
        g[k](l, j) = cplx{0.0, 1.0};
        ++k;
      }
    for (int l = 1; l < 4; ++l) {
      g[k].setZero();
      const double f = std::sqrt(2.0 / (l * (l + 1.0)));
      for (int j = 0; j < l; ++j) g[k](j, j) = f;
      g[k](l, l) = -l * f;
      ++k;
    }
    return g;
  }();
  return basis;
}

Tomogram tomography(const QuditState& psi, const ShotPlan& plan) { return tomography_impl(psi, plan); }

Tomogram tomography(const DensityMatrix& rho, const ShotPlan& plan) { return tomography_impl(rho, plan); }

Estimate tomography_energy(const Tomogram& tomogram, const Eigen::Matrix4cd& hamiltonian) {
  require_hermitian(hamiltonian);
  const auto& basis = gell_mann_basis();
  Estimate e;
  e.value = exact_expectation(tomogram.rho, hamiltonian);
  double var = 0.0;
  for (int k = 0; k < kTomographySettings; ++k) {
    const double weight = 0.5 * (basis[k] * hamiltonian).trace().real();
    var += weight * weight * tomogram.generator_means[k].std_error * tomogram.generator_means[k].std_error;
  }
  e.std_error = std::sqrt(var);
  return e;
}

}  // namespace hehucc
