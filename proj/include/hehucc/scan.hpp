#pragma once

#include <span>
#include <string>
#include <vector>

#include "hehucc/hamiltonian.hpp"
#include "hehucc/integrals.hpp"
#include "hehucc/scf.hpp"
#include "hehucc/vqe.hpp"

namespace hehucc {

/// Everything derived for HeH+ at one bond length.
struct MolecularProblem {
  MoleculeGeometry geometry;
  AOIntegralSet ao;
  RhfSolution rhf;
  MoIntegrals mo;
  SpinOrbitalIntegrals ints;
  QuditHamiltonian hamiltonian;  // includes nuclear repulsion
  std::vector<Eigen::Matrix4cd> terms;
};

MolecularProblem build_heh_problem(double bond_length, const BasisLibrary& basis, const ScfOptions& scf = {});

enum class EnergyConvention { electronic, total };

struct ScanConfig {
  BasisLibrary basis;
  ScfOptions scf;
  VqeOptions vqe;
  /// Base seed for shot mode; point i uses derive_seed(seed, i).
  std::uint64_t seed = 0;
};

struct SurfacePoint {
  double bond_length = 0.0;
  bool ok = false;
  std::string error;
  double nuclear_repulsion = 0.0;
  double e_vqe = 0.0;    // total
  double e_exact = 0.0;  // total
  int iterations = 0;
  double fidelity = 0.0;
  double std_error = 0.0;

  double vqe(EnergyConvention c) const { return c == EnergyConvention::total ? e_vqe : e_vqe - nuclear_repulsion; }
  double exact(EnergyConvention c) const {
    return c == EnergyConvention::total ? e_exact : e_exact - nuclear_repulsion;
  }
};

struct FieldPoint {
  double strength = 0.0;
  bool ok = false;
  std::string error;
  double e_vqe = 0.0;
  double e_exact = 0.0;
  double e_first_order = 0.0;
  double e_second_order = 0.0;
  int iterations = 0;
  double fidelity = 0.0;
  double std_error = 0.0;
};

struct FoldedPoint {
  double lambda = 0.0;
  bool ok = false;
  std::string error;
  double min_value = 0.0;  // min <(H-λ)²>
  double exact_min = 0.0;  // min_i (e_i - λ)²
  double e_plus = 0.0;     // λ + sqrt(min)
  double e_minus = 0.0;    // λ - sqrt(min)
  int iterations = 0;
  double fidelity = 0.0;   // to the folded ground vector
  double std_error = 0.0;
};

/// Ground-state curve over bond lengths. Grid points run in parallel; a failed
/// point is marked and the scan continues.
std::vector<SurfacePoint> dissociation_scan(std::span<const double> grid, const ScanConfig& cfg);

/// Ground state of the field-dressed Hamiltonian along `axis` (unit vector) for
/// each strength, with perturbative comparison curves.
std::vector<FieldPoint> field_scan(double bond_length, std::span<const double> strengths, const ScanConfig& cfg,
                                   const Vec3& axis = Vec3::UnitZ());

/// Minimizes <(H-λ)²> for each λ.
std::vector<FoldedPoint> folded_scan(const QuditHamiltonian& h, std::span<const double> lambdas,
                                     const ScanConfig& cfg);

/// Evenly spaced values from lo to hi inclusive (hi included within step/1000).
std::vector<double> linear_grid(double lo, double hi, double step);

namespace reference {
std::vector<SurfacePoint> dissociation_scan(std::span<const double> grid, const ScanConfig& cfg);
std::vector<FieldPoint> field_scan(double bond_length, std::span<const double> strengths, const ScanConfig& cfg,
                                   const Vec3& axis = Vec3::UnitZ());
std::vector<FoldedPoint> folded_scan(const QuditHamiltonian& h, std::span<const double> lambdas,
                                     const ScanConfig& cfg);
}  // namespace reference

}  // namespace hehucc
