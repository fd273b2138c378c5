#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "golden.hpp"
#include "hehucc/errors.hpp"
#include "hehucc/hamiltonian.hpp"
#include "hehucc/scf.hpp"
#include "hehucc/vqe.hpp"
#include "test_support.hpp"

using namespace hehucc;
using testing_support::sto3g;

namespace {

AOIntegralSet heh_ao(double R) {
  const auto g = MoleculeGeometry::heh_plus(R);
  return compute_ao_integrals(build_sto3g_basis(g, sto3g()), g);
}

// <G|H|G> straight from the spin-orbital tensors, occupied spin orbitals {0, 1}:
// <a†p a†q ar as> = δps δqr − δpr δqs.
double reference_energy(const SpinOrbitalIntegrals& ints) {
  double e = ints.h1(0, 0) + ints.h1(1, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) e += 0.5 * (ints.h2(i, j, j, i) - ints.h2(i, j, i, j));
  return e;
}

Eigen::MatrixXd lowdin(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  return es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

TEST_CASE("He atom RHF energy") {
  const MoleculeGeometry he({{2, Vec3::Zero()}});
  const auto ao = compute_ao_integrals(build_sto3g_basis(he, sto3g()), he);
  const auto sol = rhf_scf(ao, 2);
  CHECK(sol.converged);
  CHECK(std::abs(sol.total_energy - golden::kHeAtomHF) < 1e-4);
  CHECK(std::abs(sol.total_energy - golden::kHeAtomHF) < 1e-8);
}

TEST_CASE("HeH+ RHF at R = 1.4632 and R = 1.7") {
  const auto sol = rhf_scf(heh_ao(golden::r14632::R), 2);
  CHECK(sol.converged);
  CHECK(std::abs(sol.total_energy - golden::r14632::E_HF) < 1e-6);
  CHECK(std::abs(sol.orbital_energies[0] - golden::r14632::eps[0]) < 1e-6);
  CHECK(std::abs(sol.orbital_energies[1] - golden::r14632::eps[1]) < 1e-6);
  CHECK(sol.total_energy == doctest::Approx(sol.electronic_energy + golden::r14632::Enn).epsilon(1e-14));

  const auto sol17 = rhf_scf(heh_ao(golden::r17::R), 2);
  CHECK(std::abs(sol17.total_energy - golden::r17::E_HF) < 1e-6);
}

TEST_CASE("toy input whose core guess is already self-consistent converges immediately") {
  AOIntegralSet ao;
  ao.overlap = Eigen::MatrixXd::Identity(2, 2);
  ao.kinetic = Eigen::MatrixXd::Zero(2, 2);
  ao.nuclear = (Eigen::MatrixXd(2, 2) << -2.0, 0.0, 0.0, -1.0).finished();
  ao.eri = Tensor4(2);
  ao.eri(0, 0, 0, 0) = 0.5;
  ao.eri(1, 1, 1, 1) = 0.5;
  ao.eri(0, 0, 1, 1) = ao.eri(1, 1, 0, 0) = 0.3;
  for (auto& d : ao.dipole) d = Eigen::MatrixXd::Zero(2, 2);
  const auto sol = rhf_scf(ao, 2);
  CHECK(sol.converged);
  CHECK(sol.iterations <= 2);
  CHECK(sol.electronic_energy == doctest::Approx(2 * -2.0 + 0.5));
}

TEST_CASE("RHF preconditions and non-convergence") {
  const auto ao = heh_ao(1.5);
  CHECK_THROWS_AS(rhf_scf(ao, 3), PreconditionError);
  CHECK_THROWS_AS(rhf_scf(ao, 6), PreconditionError);
  CHECK_THROWS_AS(rhf_scf(ao, 0), PreconditionError);
  ScfOptions tight;
  tight.max_iterations = 1;
  try {
    rhf_scf(ao, 2, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_iterate().iterations == 1);
    CHECK_FALSE(e.last_iterate().converged);
    CHECK(std::isfinite(e.last_iterate().electronic_energy));
  }
}

TEST_CASE("RHF invariants across the property grid") {
  for (double R : testing_support::property_grid()) {
    CAPTURE(R);
    const auto ao = heh_ao(R);
    const auto sol = rhf_scf(ao, 2);
    REQUIRE(sol.converged);
    const Eigen::MatrixXd ctsc = sol.coefficients.transpose() * ao.overlap * sol.coefficients;
    CHECK((ctsc - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(sol.orbital_energies[0] <= sol.orbital_energies[1]);
    // Non-increasing after the first iteration under the default damping.
    for (std::size_t i = 2; i < sol.energy_history.size(); ++i)
      CHECK(sol.energy_history[i] <= sol.energy_history[i - 1] + 1e-12);
  }
}

TEST_CASE("mo_transform examples") {
  const auto ao = heh_ao(1.4632);
  const Eigen::MatrixXd x = lowdin(ao.overlap);
  const auto mo = mo_transform(ao, x);
  CHECK((mo.hcore - mo.hcore.transpose()).cwiseAbs().maxCoeff() < 1e-14);

  const auto sol = rhf_scf(ao, 2);
  const auto mo2 = mo_transform(ao, sol.coefficients);
  // C⁻¹ = Cᵀ S, so the AO matrix is S C h_mo Cᵀ S.
  const Eigen::MatrixXd back = ao.overlap * sol.coefficients * mo2.hcore * sol.coefficients.transpose() * ao.overlap;
  CHECK((back - ao.core_hamiltonian()).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> gen(ao.core_hamiltonian(), ao.overlap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> direct(mo2.hcore);
  CHECK((gen.eigenvalues() - direct.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(mo_transform(ao, Eigen::MatrixXd::Identity(2, 2)), PreconditionError);
  CHECK_THROWS_AS(mo_transform(ao, Eigen::MatrixXd::Identity(3, 3)), PreconditionError);
}

TEST_CASE("mo_transform ERI matches a direct four-index sum") {
  const auto ao = heh_ao(2.2);
  const auto c = rhf_scf(ao, 2).coefficients;
  const auto mo = mo_transform(ao, c);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
          double v = 0.0;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              for (int cc = 0; cc < 2; ++cc)
                for (int d = 0; d < 2; ++d) v += c(a, p) * c(b, q) * c(cc, r) * c(d, s) * ao.eri(a, b, cc, d);
          CHECK(std::abs(mo.eri(p, q, r, s) - v) < 1e-13);
        }
}

TEST_CASE("spin_orbital_integrals layout") {
  auto p = testing_support::heh(1.4632);
  const auto& ints = p.ints;
  CHECK(ints.h1(0, 2) == p.mo.hcore(0, 1));
  CHECK(ints.h1(1, 3) == p.mo.hcore(0, 1));
  CHECK(ints.h1(0, 1) == 0.0);
  CHECK(ints.h1(2, 3) == 0.0);
  CHECK((ints.h1 - ints.h1.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          if (spin_of(a) != spin_of(d) || spin_of(b) != spin_of(c)) CHECK(ints.h2(a, b, c, d) == 0.0);
          CHECK(std::abs(ints.h2(a, b, c, d) - ints.h2(b, a, d, c)) < 1e-12);
        }
  // Coulomb integral of the doubly occupied orbital sits at <1↑1↓|1↓1↑>.
  CHECK(ints.h2(0, 1, 1, 0) == p.mo.eri(0, 0, 0, 0));
  CHECK(ints.nuclear_repulsion == doctest::Approx(golden::r14632::Enn).epsilon(1e-14));
}

TEST_CASE("<G|H|G> equals the RHF electronic energy at every grid point") {
  for (double R : testing_support::property_grid()) {
    CAPTURE(R);
    const auto p = testing_support::heh(R);
    const double rhf_formula = 2.0 * p.mo.hcore(0, 0) + p.mo.eri(0, 0, 0, 0);
    CHECK(std::abs(rhf_formula - p.rhf.electronic_energy) < 1e-10);
    CHECK(std::abs(reference_energy(p.ints) - p.rhf.electronic_energy) < 1e-10);
    const auto h = slater_condon_hamiltonian(p.ints);
    CHECK(std::abs(h.matrix(0, 0).real() - h.offset - p.rhf.electronic_energy) < 1e-10);
  }
}

TEST_CASE("orbital rotation leaves the full-CI spectrum unchanged") {
  for (double R : {0.8, 1.4632, 3.0}) {
    CAPTURE(R);
    const auto p = testing_support::heh(R);
    const double enn = p.ao.nuclear_repulsion;
    const auto base = exact_eigensystem(slater_condon_hamiltonian(p.ints)).values;
    for (double angle : {0.1, 0.7, 2.0}) {
      const Eigen::Matrix2d rot{{std::cos(angle), -std::sin(angle)}, {std::sin(angle), std::cos(angle)}};
      const Eigen::MatrixXd c = p.rhf.coefficients * rot;
      const auto ints = spin_orbital_integrals(mo_transform(p.ao, c), enn);
      CHECK((ints.h1 - p.ints.h1).cwiseAbs().maxCoeff() > 1e-3);
      const auto rotated = exact_eigensystem(slater_condon_hamiltonian(ints)).values;
      CHECK((rotated - base).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("full-CI spectrum matches the frozen reference run") {
  for (const auto& [R, ref] : {std::pair{golden::r14632::R, golden::r14632::fci}, std::pair{golden::r17::R, golden::r17::fci}}) {
    CAPTURE(R);
    const auto e = exact_eigensystem(testing_support::heh(R).hamiltonian).values;
    for (int i = 0; i < 4; ++i) CHECK(std::abs(e[i] - ref[i]) < 1e-6);
  }
}
