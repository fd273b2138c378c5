#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hehucc/geometry.hpp"
#include "hehucc/tensor.hpp"

namespace hehucc {

/// Contracted s-type Gaussian. `norms` holds the primitive normalization
/// (2a/π)^{3/4} times the overall contraction renormalization, so the
/// contracted function is Σ_k coefficients[k] * norms[k] * exp(-a_k r²).
struct GaussianShell {
  Vec3 center;
  std::vector<double> exponents;
  std::vector<double> coefficients;
  std::vector<double> norms;

  std::size_t size() const noexcept { return exponents.size(); }
};

/// Raw contraction for one element as read from the basis data file.
struct ElementBasis {
  std::vector<double> exponents;
  std::vector<double> coefficients;
};

using BasisLibrary = std::map<std::string, ElementBasis>;

/// Parses the plain-text basis file: element symbol line followed by three
/// "exponent coefficient" lines. Blank lines and lines starting with '#'
/// are ignored.
BasisLibrary parse_basis_library(const std::string& text);
BasisLibrary load_basis_library(const std::filesystem::path& path);

/// Location of the bundled STO-3G file. HEHUCC_BASIS_FILE in the environment
/// overrides the compiled-in path.
std::filesystem::path default_basis_path();

const char* element_symbol(int charge);

/// Normalizes primitives and the contraction so that <χ|χ> = 1.
GaussianShell make_shell(const Vec3& center, const ElementBasis& data);

std::vector<GaussianShell> build_sto3g_basis(const MoleculeGeometry& geometry,
                                             const BasisLibrary& library);

/// F0(x) = ∫_0^1 exp(-x t²) dt.
double boys_f0(double x);

struct OneElectronIntegrals {
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd kinetic;
  Eigen::MatrixXd nuclear;
  std::array<Eigen::MatrixXd, 3> dipole;  // <χ_p| r_c |χ_q>, bohr
};

OneElectronIntegrals one_electron_integrals(const std::vector<GaussianShell>& basis,
                                            const MoleculeGeometry& geometry);

/// Chemist-notation (pq|rs) over the contracted functions.
Tensor4 two_electron_integrals(const std::vector<GaussianShell>& basis);

double nuclear_repulsion(const MoleculeGeometry& geometry);

struct AOIntegralSet {
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd kinetic;
  Eigen::MatrixXd nuclear;
  Tensor4 eri;
  std::array<Eigen::MatrixXd, 3> dipole;
  double nuclear_repulsion = 0.0;

  Eigen::MatrixXd core_hamiltonian() const { return kinetic + nuclear; }
  int size() const { return static_cast<int>(overlap.rows()); }
};

AOIntegralSet compute_ao_integrals(const std::vector<GaussianShell>& basis,
                                   const MoleculeGeometry& geometry);

}  // namespace hehucc
