#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hehucc {

using Vec3 = Eigen::Vector3d;

struct Nucleus {
  int charge;
  Vec3 position;  // bohr
};

/// Nuclear framework of a molecule, atomic units throughout.
class MoleculeGeometry {
 public:
  explicit MoleculeGeometry(std::vector<Nucleus> nuclei);

  /// He at the origin, H at (0, 0, R). The field scalar term depends on this
  /// origin choice, so every caller goes through here.
  static MoleculeGeometry heh_plus(double bond_length);

  const std::vector<Nucleus>& nuclei() const noexcept { return nuclei_; }
  std::size_t size() const noexcept { return nuclei_.size(); }

  /// Distance between the first two nuclei (0 for a single atom).
  double bond_length() const;

  /// Σ Z_A R_A, the nuclear part of the dipole (bohr).
  Vec3 nuclear_charge_moment() const;

 private:
  std::vector<Nucleus> nuclei_;
};

}  // namespace hehucc
