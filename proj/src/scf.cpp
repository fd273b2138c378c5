#include "hehucc/scf.hpp"

#include <cmath>
#include <limits>

namespace hehucc {

namespace {

Eigen::MatrixXd two_electron_fock(const Tensor4& eri, const Eigen::MatrixXd& density) {
  const int n = eri.extent();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m)
    for (int v = 0; v < n; ++v)
      for (int l = 0; l < n; ++l)
        for (int s = 0; s < n; ++s)
          g(m, v) += density(l, s) * (eri(m, v, s, l) - 0.5 * eri(m, l, s, v));
  return g;
}

struct Diagonalized {
  Eigen::VectorXd energies;
  Eigen::MatrixXd coefficients;
};

Diagonalized solve_roothaan(const Eigen::MatrixXd& fock, const Eigen::MatrixXd& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * fock * x);
  return {es.eigenvalues(), x * es.eigenvectors()};
}

Eigen::MatrixXd closed_shell_density(const Eigen::MatrixXd& c, int n_occ) {
  const auto occ = c.leftCols(n_occ);
  return 2.0 * occ * occ.transpose();
}

}  // namespace

RhfSolution rhf_scf(const AOIntegralSet& ao, int n_electrons, const ScfOptions& opts) {
  const int n = ao.size();
  if (n_electrons <= 0 || n_electrons % 2 != 0) throw PreconditionError("RHF needs a positive even electron count");
  if (n_electrons > 2 * n) throw PreconditionError("more electrons than the basis can hold");
  if (!(opts.damping >= 0.0 && opts.damping < 1.0)) throw PreconditionError("damping must lie in [0, 1)");
  const int n_occ = n_electrons / 2;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_eig(ao.overlap);
  if (s_eig.eigenvalues().minCoeff() <= 0.0) throw PreconditionError("overlap matrix is not positive definite");
  // Löwdin symmetric orthogonalizer S^{-1/2}.
  const Eigen::MatrixXd x =
      s_eig.eigenvectors() * s_eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * s_eig.eigenvectors().transpose();

  const Eigen::MatrixXd hcore = ao.core_hamiltonian();
  Eigen::MatrixXd density = closed_shell_density(solve_roothaan(hcore, x).coefficients, n_occ);

  RhfSolution sol;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::MatrixXd fock = hcore + two_electron_fock(ao.eri, density);
    const double energy = 0.5 * (density.cwiseProduct(hcore + fock)).sum();
    sol.energy_history.push_back(energy);

    const auto diag = solve_roothaan(fock, x);
    const Eigen::MatrixXd fresh = closed_shell_density(diag.coefficients, n_occ);
    const Eigen::MatrixXd next = (1.0 - opts.damping) * fresh + opts.damping * density;
    const double d_change = (next - density).cwiseAbs().maxCoeff();
    const double e_change = std::abs(energy - previous);

    sol.coefficients = diag.coefficients;
    sol.orbital_energies = diag.energies;
    sol.density = density;
    sol.electronic_energy = energy;
    sol.total_energy = energy + ao.nuclear_repulsion;
    sol.iterations = it;

    if (e_change < opts.energy_tolerance && d_change < opts.density_tolerance) {
      sol.converged = true;
      return sol;
    }
    density = next;
    previous = energy;
  }
  throw ConvergenceError("RHF did not converge in " + std::to_string(opts.max_iterations) + " iterations", sol);
}

MoIntegrals mo_transform(const AOIntegralSet& ao, const Eigen::MatrixXd& c) {
  const int n = ao.size();
  if (c.rows() != n || c.cols() != n) throw PreconditionError("MO coefficient matrix has wrong shape");
  const double ortho = (c.transpose() * ao.overlap * c - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (ortho > 1e-8) throw PreconditionError("MO coefficients are not S-orthonormal");

  MoIntegrals mo;
  // Symmetrized so round-off cannot break the exact symmetry of the MO matrices.
  auto congruence = [&c](const Eigen::MatrixXd& m) -> Eigen::MatrixXd {
    const Eigen::MatrixXd t = c.transpose() * m * c;
    return 0.5 * (t + t.transpose());
  };
  mo.hcore = congruence(ao.core_hamiltonian());
  for (int k = 0; k < 3; ++k) mo.dipole[k] = congruence(ao.dipole[k]);

  // Quarter transforms, one index at a time.
  Tensor4 a(n), b(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double v = 0.0;
          for (int m = 0; m < n; ++m) v += c(m, p) * ao.eri(m, q, r, s);
          a(p, q, r, s) = v;
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double v = 0.0;
          for (int m = 0; m < n; ++m) v += c(m, q) * a(p, m, r, s);
          b(p, q, r, s) = v;
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double v = 0.0;
          for (int m = 0; m < n; ++m) v += c(m, r) * b(p, q, m, s);
          a(p, q, r, s) = v;
        }
  mo.eri = Tensor4(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double v = 0.0;
          for (int m = 0; m < n; ++m) v += c(m, s) * a(p, q, r, m);
          mo.eri(p, q, r, s) = v;
        }
  return mo;
}

SpinOrbitalIntegrals spin_orbital_integrals(const MoIntegrals& mo, double nuclear_repulsion) {
  if (mo.hcore.rows() != 2) throw PreconditionError("spin-orbital expansion expects two spatial orbitals");
  SpinOrbitalIntegrals ints;
  ints.nuclear_repulsion = nuclear_repulsion;
  ints.h1.setZero();
  for (auto& d : ints.dipole) d.setZero();
  for (int p = 0; p < kSpinOrbitals; ++p)
    for (int q = 0; q < kSpinOrbitals; ++q) {
      if (spin_of(p) != spin_of(q)) continue;
      ints.h1(p, q) = mo.hcore(spatial_of(p), spatial_of(q));
      for (int k = 0; k < 3; ++k) ints.dipole[k](p, q) = mo.dipole[k](spatial_of(p), spatial_of(q));
    }
  // Chemist → operator order: coefficient of a†p a†q ar as is (ps|qr).
  for (int p = 0; p < kSpinOrbitals; ++p)
    for (int q = 0; q < kSpinOrbitals; ++q)
      for (int r = 0; r < kSpinOrbitals; ++r)
        for (int s = 0; s < kSpinOrbitals; ++s) {
          if (spin_of(p) != spin_of(s) || spin_of(q) != spin_of(r)) continue;
          ints.h2(p, q, r, s) = mo.eri(spatial_of(p), spatial_of(s), spatial_of(q), spatial_of(r));
        }
  return ints;
}

}  // namespace hehucc
