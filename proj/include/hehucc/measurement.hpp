#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hehucc/ansatz.hpp"

namespace hehucc {

/// Unit-trace Hermitian 4×4 matrix. Linear-inversion output may have small
/// negative eigenvalues; positivity is reported, not enforced.
struct DensityMatrix {
  Eigen::Matrix4cd matrix = 0.25 * Eigen::Matrix4cd::Identity();

  static DensityMatrix pure(const QuditState& psi);
  static DensityMatrix maximally_mixed() { return {}; }

  double min_eigenvalue() const;
  bool is_positive(double tol = 1e-12) const { return min_eigenvalue() >= -tol; }
};

/// Shots per measurement setting and the base seed. Per-setting random
/// streams derive from (seed, setting index), so estimates do not depend on
/// evaluation order or thread count. `exact` switches to the infinite-shot
/// limit.
struct ShotPlan {
  std::uint64_t shots_per_setting = 1000;
  std::uint64_t seed = 0;
  bool exact = false;

  static ShotPlan infinite() { return {0, 0, true}; }
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// SplitMix64 finalizer over (base, index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

double exact_expectation(const QuditState& psi, const Eigen::Matrix4cd& observable);
double exact_expectation(const DensityMatrix& rho, const Eigen::Matrix4cd& observable);

/// Projective measurement in the eigenbasis of `observable`: outcome counts are
/// drawn from the Born distribution, the estimate is the sample mean and the
/// error the standard error of that mean.
Estimate sampled_expectation(const QuditState& psi, const Eigen::Matrix4cd& observable, std::uint64_t shots,
                             std::uint64_t seed);
Estimate sampled_expectation(const DensityMatrix& rho, const Eigen::Matrix4cd& observable, std::uint64_t shots,
                             std::uint64_t seed);

/// Real observables to be sampled for a list of Hermitian terms, plus the part
/// of the sum proportional to the identity (added without measuring). Each
/// term contributes up to three settings: its traceless diagonal, its real
/// symmetric off-diagonal part and its imaginary antisymmetric part.
struct MeasurementSettings {
  std::vector<Eigen::Matrix4cd> observables;
  double constant = 0.0;
};

MeasurementSettings decompose_terms(const std::vector<Eigen::Matrix4cd>& terms);

struct TermEnergy {
  double energy = 0.0;
  double std_error = 0.0;
  int settings_used = 0;
};

/// Sum of per-setting estimates; errors combined in quadrature. Throws
/// DecompositionError if the terms do not add up to `hamiltonian` (1e-10).
TermEnergy term_by_term_energy(const QuditState& psi, const Eigen::Matrix4cd& hamiltonian,
                               const std::vector<Eigen::Matrix4cd>& terms, const ShotPlan& plan);

inline constexpr int kTomographySettings = 15;

/// Generalized Gell-Mann matrices for d = 4 with Tr(g_j g_k) = 2δ_jk, ordered
/// as 6 symmetric (j<k), 6 antisymmetric (j<k), then 3 diagonal.
const std::array<Eigen::Matrix4cd, kTomographySettings>& gell_mann_basis();

struct Tomogram {
  DensityMatrix rho;
  std::array<Estimate, kTomographySettings> generator_means;
  int settings_used = kTomographySettings;
};

/// Linear inversion ρ = 1/4 + ½ Σ_k <g_k> g_k with each <g_k> sampled.
Tomogram tomography(const QuditState& psi, const ShotPlan& plan);
Tomogram tomography(const DensityMatrix& rho, const ShotPlan& plan);

/// Tr(ρ H) for a tomogram, with the error propagated from the generator means.
Estimate tomography_energy(const Tomogram& tomogram, const Eigen::Matrix4cd& hamiltonian);

}  // namespace hehucc
