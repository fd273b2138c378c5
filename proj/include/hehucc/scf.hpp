#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "hehucc/errors.hpp"
#include "hehucc/integrals.hpp"
#include "hehucc/tensor.hpp"

namespace hehucc {

struct ScfOptions {
  int max_iterations = 200;
  double energy_tolerance = 1e-10;
  double density_tolerance = 1e-8;
  /// Fraction of the previous density kept each step: P ← (1-d)·P_new + d·P_old.
  double damping = 0.3;
};

struct RhfSolution {
  Eigen::MatrixXd coefficients;   // columns are MOs
  Eigen::VectorXd orbital_energies;
  Eigen::MatrixXd density;        // closed-shell P = 2 C_occ C_occᵀ
  double electronic_energy = 0.0;
  double total_energy = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> energy_history;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, RhfSolution last) : Error(what), last_(std::move(last)) {}
  const RhfSolution& last_iterate() const noexcept { return last_; }

 private:
  RhfSolution last_;
};

RhfSolution rhf_scf(const AOIntegralSet& ao, int n_electrons, const ScfOptions& opts = {});

struct MoIntegrals {
  Eigen::MatrixXd hcore;
  Tensor4 eri;                            // chemist (PQ|RS)
  std::array<Eigen::MatrixXd, 3> dipole;  // electron position, bohr
};

/// AO→MO transform. Throws PreconditionError unless Cᵀ S C = 1 to 1e-8.
MoIntegrals mo_transform(const AOIntegralSet& ao, const Eigen::MatrixXd& coefficients);

/// Spin-orbital order is global: 0 = 1↑, 1 = 1↓, 2 = 2↑, 3 = 2↓.
inline constexpr int kSpinOrbitals = 4;
inline int spatial_of(int p) { return p / 2; }
inline int spin_of(int p) { return p % 2; }

/// Coefficients of H = Σ h1[p][q] a†p aq + ½ Σ h2[p][q][r][s] a†p a†q ar as + Enn.
///
/// h2 is stored in the operator order of the sum: h2[p][q][r][s] = <pq|sr>
/// in physicist notation = (ps|qr) in chemist notation. That conversion
/// happens only in spin_orbital_integrals().
struct SpinOrbitalIntegrals {
  Eigen::Matrix4d h1;
  Tensor4 h2{kSpinOrbitals};
  std::array<Eigen::Matrix4d, 3> dipole;
  double nuclear_repulsion = 0.0;
};

SpinOrbitalIntegrals spin_orbital_integrals(const MoIntegrals& mo, double nuclear_repulsion);

}  // namespace hehucc
