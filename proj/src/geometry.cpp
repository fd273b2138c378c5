#include "hehucc/geometry.hpp"

#include <cmath>
#include <string>

#include "hehucc/errors.hpp"

namespace hehucc {

MoleculeGeometry::MoleculeGeometry(std::vector<Nucleus> nuclei) : nuclei_(std::move(nuclei)) {
  if (nuclei_.empty()) throw PreconditionError("geometry needs at least one nucleus");
  for (const auto& n : nuclei_) {
    if (n.charge < 1) throw PreconditionError("nuclear charge must be >= 1, got " + std::to_string(n.charge));
    if (!n.position.allFinite()) throw PreconditionError("nuclear position must be finite");
  }
}

MoleculeGeometry MoleculeGeometry::heh_plus(double bond_length) {
  if (!(bond_length > 0.0) || !std::isfinite(bond_length))
    throw PreconditionError("HeH+ bond length must be positive and finite");
  return MoleculeGeometry({{2, Vec3::Zero()}, {1, Vec3(0.0, 0.0, bond_length)}});
}

double MoleculeGeometry::bond_length() const {
  if (nuclei_.size() < 2) return 0.0;
  return (nuclei_[1].position - nuclei_[0].position).norm();
}

Vec3 MoleculeGeometry::nuclear_charge_moment() const {
  Vec3 m = Vec3::Zero();
  for (const auto& n : nuclei_) m += n.charge * n.position;
  return m;
}

}  // namespace hehucc
