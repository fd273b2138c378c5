#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hehucc/geometry.hpp"
#include "hehucc/pauli.hpp"
#include "hehucc/scf.hpp"

namespace hehucc {

inline constexpr int kQubits = kSpinOrbitals;

/// One of the four two-electron, S_z = 0 determinants. `occupation` uses the
/// dense-matrix bit convention (qubit 0 = most significant of 4 bits).
/// `phase` relates the qudit basis vector to the ascending-order determinant:
/// |E12> = a†(2↑) a†(1↓)|0> = -a†(1↓) a†(2↑)|0>.
struct SectorState {
  unsigned occupation;
  int phase;
  std::string_view label;
};

/// Order (|G>, |E11>, |E12>, |E2>). With these phases each basis vector is the
/// image of |G> under the matching excitation operator with sign +1.
inline constexpr std::array<SectorState, 4> kSectorBasis{{
    {0b1100u, +1, "G"},
    {0b1001u, +1, "E11"},
    {0b0110u, -1, "E12"},
    {0b0011u, +1, "E2"},
}};

enum class HamiltonianKind { bare, field_dressed, folded };

std::string_view to_string(HamiltonianKind kind);

/// 4×4 Hermitian operator in the sector basis. `offset` is the constant
/// (nuclear repulsion, field scalar) already contained in `matrix`.
struct QuditHamiltonian {
  Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Zero();
  double offset = 0.0;
  HamiltonianKind kind = HamiltonianKind::bare;
};

/// Jordan-Wigner image of the second-quantized Hamiltonian; qubit j is spin
/// orbital j. Merged and pruned at 1e-12.
PauliSum jw_transform(const SpinOrbitalIntegrals& ints, bool include_nuclear_repulsion = true);

/// 4×4 block of a 16×16 Hermitian matrix on the sector basis. Throws
/// SectorViolationError when a sector state couples outside the sector by more
/// than 1e-10.
QuditHamiltonian sector_project(const Eigen::MatrixXcd& h16, double offset = 0.0,
                                HamiltonianKind kind = HamiltonianKind::bare);

Eigen::VectorXcd embed_sector_state(const Eigen::Vector4cd& qudit);
Eigen::Vector4cd project_sector_state(const Eigen::VectorXcd& qubits);
/// Probability weight of a 16-amplitude state outside the sector.
double sector_leakage(const Eigen::VectorXcd& qubits);

/// Matrix elements between sector determinants by Slater–Condon rules. Works
/// from occupation lists and fermionic signs only; shares nothing with the
/// Jordan-Wigner path. Includes nuclear repulsion (offset = Enn).
QuditHamiltonian slater_condon_hamiltonian(const SpinOrbitalIntegrals& ints);

/// Σ_pq h[p][q] a†p aq restricted to the sector.
Eigen::Matrix4d one_body_sector_matrix(const Eigen::Matrix4d& h);

/// Sector matrix of a†p a†q ar as (indices in spin-orbital order).
Eigen::Matrix4d two_body_sector_matrix(int p, int q, int r, int s);

/// Field perturbation for a unit-free field vector E:
/// V = Σ_pq <p|E·r|q> a†p aq − E·(Σ_A Z_A R_A).
Eigen::Matrix4cd field_operator(const SpinOrbitalIntegrals& ints, const MoleculeGeometry& geometry,
                                const Vec3& field);

QuditHamiltonian field_dress(const QuditHamiltonian& h, const SpinOrbitalIntegrals& ints,
                             const MoleculeGeometry& geometry, const Vec3& field);

/// (H − λ)².
QuditHamiltonian fold(const QuditHamiltonian& h, double lambda);

/// Hermitian sector images of the second-quantized terms, one per
/// operator/adjoint pair with a nonzero projection, plus Enn·1 as the last
/// entry. Their sum is slater_condon_hamiltonian(ints).matrix.
std::vector<Eigen::Matrix4cd> measurement_terms(const SpinOrbitalIntegrals& ints);

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);

}  // namespace hehucc
