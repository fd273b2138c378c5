#include "hehucc/scan.hpp"

#include <cmath>

#include "hehucc/errors.hpp"

namespace hehucc {

namespace {

VqeOptions with_seed(const VqeOptions& base, std::uint64_t seed, std::size_t index) {
  VqeOptions o = base;
  if (o.shots) o.shots->seed = derive_seed(seed, index);
  return o;
}

SurfacePoint surface_point(double r, std::size_t index, const ScanConfig& cfg) {
  SurfacePoint p;
  p.bond_length = r;
  try {
    const MolecularProblem prob = build_heh_problem(r, cfg.basis, cfg.scf);
    VqeOptions o = with_seed(cfg.vqe, cfg.seed, index);
    if (o.terms.empty()) o.terms = prob.terms;
    if (o.backend == Backend::qubits) o.qubit_hamiltonian = pauli_to_matrix(jw_transform(prob.ints));
    const VqeResult v = vqe_ground(prob.hamiltonian, o);
    p.nuclear_repulsion = prob.ints.nuclear_repulsion;
    p.e_vqe = v.energy;
    p.e_exact = v.exact_ground;
    p.iterations = v.iterations;
    p.fidelity = v.fidelity;
    p.std_error = v.std_error;
    p.ok = true;
  } catch (const std::exception& e) {
    p.error = e.what();
  }
  return p;
}

struct FieldContext {
  MolecularProblem problem;
  Eigen::Matrix4cd unit_perturbation;
  PerturbativeCurves curves;
};

FieldContext field_context(double r, std::span<const double> strengths, const ScanConfig& cfg, const Vec3& axis) {
  if (!(std::abs(axis.norm() - 1.0) < 1e-12)) throw PreconditionError("field axis must be a unit vector");
  FieldContext ctx{build_heh_problem(r, cfg.basis, cfg.scf), {}, {}};
  ctx.unit_perturbation = field_operator(ctx.problem.ints, ctx.problem.geometry, axis);
  ctx.curves = perturbative_field_energies(ctx.problem.hamiltonian, ctx.unit_perturbation, strengths);
  return ctx;
}

FieldPoint field_point(const FieldContext& ctx, double strength, std::size_t i, const Vec3& axis,
                       const ScanConfig& cfg) {
  FieldPoint p;
  p.strength = strength;
  p.e_first_order = ctx.curves.first_order[i];
  p.e_second_order = ctx.curves.second_order[i];
  try {
    const auto& prob = ctx.problem;
    const QuditHamiltonian h = field_dress(prob.hamiltonian, prob.ints, prob.geometry, strength * axis);
    VqeOptions o = with_seed(cfg.vqe, cfg.seed, i);
    if (o.terms.empty()) {
      o.terms = prob.terms;
      o.terms.push_back(strength * ctx.unit_perturbation);
    }
    if (o.backend == Backend::qubits) throw PreconditionError("field scans run on the qudit backend");
    const VqeResult v = vqe_ground(h, o);
    p.e_vqe = v.energy;
    p.e_exact = v.exact_ground;
    p.iterations = v.iterations;
    p.fidelity = v.fidelity;
    p.std_error = v.std_error;
    p.ok = true;
  } catch (const std::exception& e) {
    p.error = e.what();
  }
  return p;
}

FoldedPoint folded_point(const QuditHamiltonian& h, const Eigen::Vector4d& spectrum, double lambda, std::size_t i,
                         const ScanConfig& cfg) {
  FoldedPoint p;
  p.lambda = lambda;
  try {
    if (!std::isfinite(lambda)) throw PreconditionError("lambda must be finite");
    VqeOptions o = with_seed(cfg.vqe, cfg.seed, i);
    o.terms.clear();  // folded operators are measured element by element
    if (o.backend == Backend::qubits) throw PreconditionError("folded scans run on the qudit backend");
    const VqeResult v = vqe_ground(fold(h, lambda), o);
    p.min_value = v.energy;
    p.exact_min = (spectrum.array() - lambda).square().minCoeff();
    const double root = std::sqrt(std::max(0.0, v.energy));
    p.e_plus = lambda + root;
    p.e_minus = lambda - root;
    p.iterations = v.iterations;
    p.fidelity = v.fidelity;
    p.std_error = v.std_error;
    p.ok = true;
  } catch (const std::exception& e) {
    p.error = e.what();
  }
  return p;
}

}  // namespace

MolecularProblem build_heh_problem(double bond_length, const BasisLibrary& basis, const ScfOptions& scf) {
  MoleculeGeometry geometry = MoleculeGeometry::heh_plus(bond_length);
  AOIntegralSet ao = compute_ao_integrals(build_sto3g_basis(geometry, basis), geometry);
  RhfSolution rhf = rhf_scf(ao, 2, scf);
  MoIntegrals mo = mo_transform(ao, rhf.coefficients);
  SpinOrbitalIntegrals ints = spin_orbital_integrals(mo, ao.nuclear_repulsion);
  QuditHamiltonian h = slater_condon_hamiltonian(ints);
  std::vector<Eigen::Matrix4cd> terms = measurement_terms(ints);
  return {std::move(geometry), std::move(ao), std::move(rhf), std::move(mo), std::move(ints), std::move(h),
          std::move(terms)};
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
    throw PreconditionError("grid needs finite lo <= hi and step > 0");
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-3));
  for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

std::vector<SurfacePoint> dissociation_scan(std::span<const double> grid, const ScanConfig& cfg) {
  std::vector<SurfacePoint> out(grid.size());
  const auto n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = surface_point(grid[i], static_cast<std::size_t>(i), cfg);
  return out;
}

std::vector<FieldPoint> field_scan(double bond_length, std::span<const double> strengths, const ScanConfig& cfg,
                                   const Vec3& axis) {
  const FieldContext ctx = field_context(bond_length, strengths, cfg, axis);
  std::vector<FieldPoint> out(strengths.size());
  const auto n = static_cast<long>(strengths.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i)
    out[i] = field_point(ctx, strengths[i], static_cast<std::size_t>(i), axis, cfg);
  return out;
}

std::vector<FoldedPoint> folded_scan(const QuditHamiltonian& h, std::span<const double> lambdas,
                                     const ScanConfig& cfg) {
  const Eigen::Vector4d spectrum = exact_eigensystem(h).values;
  std::vector<FoldedPoint> out(lambdas.size());
  const auto n = static_cast<long>(lambdas.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = folded_point(h, spectrum, lambdas[i], static_cast<std::size_t>(i), cfg);
  return out;
}

namespace reference {

std::vector<SurfacePoint> dissociation_scan(std::span<const double> grid, const ScanConfig& cfg) {
  std::vector<SurfacePoint> out;
  for (std::size_t i = 0; i < grid.size(); ++i) out.push_back(surface_point(grid[i], i, cfg));
  return out;
}

std::vector<FieldPoint> field_scan(double bond_length, std::span<const double> strengths, const ScanConfig& cfg,
                                   const Vec3& axis) {
  const FieldContext ctx = field_context(bond_length, strengths, cfg, axis);
  std::vector<FieldPoint> out;
  for (std::size_t i = 0; i < strengths.size(); ++i) out.push_back(field_point(ctx, strengths[i], i, axis, cfg));
  return out;
}

std::vector<FoldedPoint> folded_scan(const QuditHamiltonian& h, std::span<const double> lambdas,
                                     const ScanConfig& cfg) {
  const Eigen::Vector4d spectrum = exact_eigensystem(h).values;
  std::vector<FoldedPoint> out;
  for (std::size_t i = 0; i < lambdas.size(); ++i) out.push_back(folded_point(h, spectrum, lambdas[i], i, cfg));
  return out;
}

}  // namespace reference

}  // namespace hehucc
