#include "hehucc/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <tuple>

#include "hehucc/errors.hpp"

namespace hehucc {

namespace {

// Occupation helpers in spin-orbital order: bit for orbital j is (3 - j).
bool occupied(unsigned occ, int j) { return (occ >> (kQubits - 1 - j)) & 1u; }
unsigned with(unsigned occ, int j) { return occ | (1u << (kQubits - 1 - j)); }
unsigned without(unsigned occ, int j) { return occ & ~(1u << (kQubits - 1 - j)); }

// Number of occupied orbitals with index below j.
int occupied_below(unsigned occ, int j) {
  int n = 0;
  for (int k = 0; k < j; ++k) n += occupied(occ, k);
  return n;
}

struct Ladder {
  int mode;
  bool create;
};

// Applies ladders right to left onto an ascending-order determinant.
// Returns the sign (0 when the result vanishes) and the new occupation.
std::pair<int, unsigned> apply_ladders(std::initializer_list<Ladder> ops, unsigned occ) {
  int sign = 1;
  for (auto it = std::rbegin(ops); it != std::rend(ops); ++it) {
    const bool occ_j = occupied(occ, it->mode);
    if (it->create == occ_j) return {0, occ};
    if (occupied_below(occ, it->mode) % 2) sign = -sign;
    occ = it->create ? with(occ, it->mode) : without(occ, it->mode);
  }
  return {sign, occ};
}

std::vector<int> occupied_list(unsigned occ) {
  std::vector<int> out;
  for (int j = 0; j < kQubits; ++j)
    if (occupied(occ, j)) out.push_back(j);
  return out;
}

double slater_condon_element(const SpinOrbitalIntegrals& ints, unsigned bra, unsigned ket) {
  const unsigned diff = bra ^ ket;
  const int n_diff = std::popcount(diff) / 2;
  const auto& h1 = ints.h1;
  const auto& h2 = ints.h2;
  if (n_diff == 0) {
    const auto occ = occupied_list(ket);
    double e = 0.0;
    for (int i : occ) e += h1(i, i);
    for (int i : occ)
      for (int j : occ) e += 0.5 * (h2(i, j, j, i) - h2(i, j, i, j));
    return e;
  }
  if (n_diff == 1) {
    int m = -1;  // in ket only
    int p = -1;  // in bra only
    for (int j = 0; j < kQubits; ++j) {
      if (occupied(ket, j) && !occupied(bra, j)) m = j;
      if (occupied(bra, j) && !occupied(ket, j)) p = j;
    }
    const auto [sign, result] = apply_ladders({{p, true}, {m, false}}, ket);
    double v = h1(p, m);
    for (int k : occupied_list(ket & bra)) v += h2(p, k, k, m) - h2(p, k, m, k);
    return sign * v;
  }
  if (n_diff == 2) {
    std::vector<int> from, to;
    for (int j = 0; j < kQubits; ++j) {
      if (occupied(ket, j) && !occupied(bra, j)) from.push_back(j);
      if (occupied(bra, j) && !occupied(ket, j)) to.push_back(j);
    }
    const int m = from[0], n = from[1], p = to[0], q = to[1];
    const auto [sign, result] = apply_ladders({{p, true}, {q, true}, {n, false}, {m, false}}, ket);
    return sign * (h2(p, q, n, m) - h2(p, q, m, n));
  }
  return 0.0;
}

template <class Apply>
Eigen::Matrix4d sector_matrix(Apply&& apply) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int j = 0; j < 4; ++j) {
    const auto [sign, occ] = apply(kSectorBasis[j].occupation);
    if (sign == 0) continue;
    for (int i = 0; i < 4; ++i)
      if (kSectorBasis[i].occupation == occ) m(i, j) += sign * kSectorBasis[i].phase * kSectorBasis[j].phase;
  }
  return m;
}

}  // namespace

std::string_view to_string(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::bare: return "bare";
    case HamiltonianKind::field_dressed: return "field-dressed";
    case HamiltonianKind::folded: return "folded";
  }
  return "unknown";
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

PauliSum jw_transform(const SpinOrbitalIntegrals& ints, bool include_nuclear_repulsion) {
  std::vector<PauliSum> create, annihilate;
  for (int j = 0; j < kQubits; ++j) {
    create.push_back(jw_creation(j, kQubits));
    annihilate.push_back(jw_annihilation(j, kQubits));
  }
  PauliSum h(kQubits);
  if (include_nuclear_repulsion) h += PauliSum::identity(kQubits, ints.nuclear_repulsion);
  for (int p = 0; p < kQubits; ++p)
    for (int q = 0; q < kQubits; ++q)
      if (ints.h1(p, q) != 0.0) h += ints.h1(p, q) * (create[p] * annihilate[q]);
  for (int p = 0; p < kQubits; ++p)
    for (int q = 0; q < kQubits; ++q)
      for (int r = 0; r < kQubits; ++r)
        for (int s = 0; s < kQubits; ++s) {
          const double c = ints.h2(p, q, r, s);
          if (c == 0.0) continue;
          h += (0.5 * c) * (create[p] * create[q] * annihilate[r] * annihilate[s]);
        }
  return h.prune(1e-12);
}

QuditHamiltonian sector_project(const Eigen::MatrixXcd& h16, double offset, HamiltonianKind kind) {
  if (h16.rows() != 16 || h16.cols() != 16) throw PreconditionError("sector projection needs a 16x16 matrix");
  if (!is_hermitian(h16, 1e-10)) throw PreconditionError("sector projection needs a Hermitian matrix");
  QuditHamiltonian out;
  out.offset = offset;
  out.kind = kind;
  double leakage = 0.0;
  for (int j = 0; j < 4; ++j) {
    const auto col = static_cast<Eigen::Index>(kSectorBasis[j].occupation);
    for (Eigen::Index row = 0; row < 16; ++row) {
      bool in_sector = false;
      for (int i = 0; i < 4; ++i) {
        if (static_cast<Eigen::Index>(kSectorBasis[i].occupation) == row) {
          out.matrix(i, j) = static_cast<double>(kSectorBasis[i].phase * kSectorBasis[j].phase) * h16(row, col);
          in_sector = true;
        }
      }
      if (!in_sector) leakage = std::max(leakage, std::abs(h16(row, col)));
    }
  }
  if (leakage > 1e-10)
    throw SectorViolationError("operator couples the two-electron S_z=0 sector to other states", leakage);
  return out;
}

Eigen::VectorXcd embed_sector_state(const Eigen::Vector4cd& qudit) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  for (int i = 0; i < 4; ++i) v[kSectorBasis[i].occupation] = static_cast<double>(kSectorBasis[i].phase) * qudit[i];
  return v;
}

Eigen::Vector4cd project_sector_state(const Eigen::VectorXcd& qubits) {
  if (qubits.size() != 16) throw PreconditionError("expected a 4-qubit state");
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v[i] = static_cast<double>(kSectorBasis[i].phase) * qubits[kSectorBasis[i].occupation];
  return v;
}

double sector_leakage(const Eigen::VectorXcd& qubits) {
  double inside = 0.0;
  for (const auto& b : kSectorBasis) inside += std::norm(qubits[b.occupation]);
  return std::max(0.0, qubits.squaredNorm() - inside);
}

QuditHamiltonian slater_condon_hamiltonian(const SpinOrbitalIntegrals& ints) {
  QuditHamiltonian out;
  out.offset = ints.nuclear_repulsion;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double v = slater_condon_element(ints, kSectorBasis[i].occupation, kSectorBasis[j].occupation);
      out.matrix(i, j) = kSectorBasis[i].phase * kSectorBasis[j].phase * v;
    }
  out.matrix += ints.nuclear_repulsion * Eigen::Matrix4cd::Identity();
  return out;
}

Eigen::Matrix4d one_body_sector_matrix(const Eigen::Matrix4d& h) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int p = 0; p < kQubits; ++p)
    for (int q = 0; q < kQubits; ++q)
      if (h(p, q) != 0.0)
        m += h(p, q) * sector_matrix([&](unsigned occ) { return apply_ladders({{p, true}, {q, false}}, occ); });
  return m;
}

Eigen::Matrix4d two_body_sector_matrix(int p, int q, int r, int s) {
  return sector_matrix(
      [&](unsigned occ) { return apply_ladders({{p, true}, {q, true}, {r, false}, {s, false}}, occ); });
}

Eigen::Matrix4cd field_operator(const SpinOrbitalIntegrals& ints, const MoleculeGeometry& geometry,
                                const Vec3& field) {
  Eigen::Matrix4d dipole = Eigen::Matrix4d::Zero();
  for (int c = 0; c < 3; ++c) dipole += field[c] * ints.dipole[c];
  Eigen::Matrix4cd v = one_body_sector_matrix(dipole).cast<cplx>();
  v -= field.dot(geometry.nuclear_charge_moment()) * Eigen::Matrix4cd::Identity();
  return v;
}

QuditHamiltonian field_dress(const QuditHamiltonian& h, const SpinOrbitalIntegrals& ints,
                             const MoleculeGeometry& geometry, const Vec3& field) {
  if (!field.allFinite()) throw PreconditionError("field vector must be finite");
  QuditHamiltonian out = h;
  out.matrix += field_operator(ints, geometry, field);
  out.offset -= field.dot(geometry.nuclear_charge_moment());
  out.kind = HamiltonianKind::field_dressed;
  return out;
}

QuditHamiltonian fold(const QuditHamiltonian& h, double lambda) {
  const Eigen::Matrix4cd shifted = h.matrix - lambda * Eigen::Matrix4cd::Identity();
  QuditHamiltonian out;
  out.matrix = shifted * shifted;
  out.matrix = 0.5 * (out.matrix + out.matrix.adjoint()).eval();
  out.offset = 0.0;
  out.kind = HamiltonianKind::folded;
  return out;
}

std::vector<Eigen::Matrix4cd> measurement_terms(const SpinOrbitalIntegrals& ints) {
  std::vector<Eigen::Matrix4cd> terms;
  auto keep = [&](const Eigen::Matrix4d& m) {
    if (m.cwiseAbs().maxCoeff() > 1e-12) terms.push_back(m.cast<cplx>());
  };

  // One-body: h_pq a†p aq grouped with its adjoint.
  for (int p = 0; p < kQubits; ++p)
    for (int q = p; q < kQubits; ++q) {
      Eigen::Matrix4d pq = Eigen::Matrix4d::Zero();
      pq(p, q) = ints.h1(p, q);
      if (q != p) pq(q, p) = ints.h1(q, p);
      keep(one_body_sector_matrix(pq));
    }

  // Two-body: collect ½ h2 onto normal-ordered a†p a†q ar as with p<q, r<s.
  std::map<std::tuple<int, int, int, int>, double> canonical;
  for (int p = 0; p < kQubits; ++p)
    for (int q = 0; q < kQubits; ++q)
      for (int r = 0; r < kQubits; ++r)
        for (int s = 0; s < kQubits; ++s) {
          const double c = ints.h2(p, q, r, s);
          if (c == 0.0 || p == q || r == s) continue;
          int sign = 1;
          int a = p, b = q, x = r, y = s;
          if (a > b) { std::swap(a, b); sign = -sign; }
          if (x > y) { std::swap(x, y); sign = -sign; }
          canonical[{a, b, x, y}] += 0.5 * sign * c;
        }
  std::map<std::tuple<int, int, int, int>, bool> done;
  for (const auto& [key, c] : canonical) {
    if (done[key]) continue;
    const auto [p, q, r, s] = key;
    // (a†p a†q ar as)† = a†r a†s ap aq in canonical order.
    const std::tuple<int, int, int, int> adj{r, s, p, q};
    Eigen::Matrix4d m = c * two_body_sector_matrix(p, q, r, s);
    done[key] = true;
    if (adj != key) {
      auto it = canonical.find(adj);
      if (it != canonical.end()) {
        m += it->second * two_body_sector_matrix(r, s, p, q);
        done[adj] = true;
      }
    }
    keep(m);
  }
  terms.push_back(ints.nuclear_repulsion * Eigen::Matrix4cd::Identity());
  return terms;
}

}  // namespace hehucc
