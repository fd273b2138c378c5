#include "hehucc/ansatz.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "hehucc/errors.hpp"
#include "hehucc/hamiltonian.hpp"

namespace hehucc {

namespace {

constexpr cplx kI{0.0, 1.0};
enum Level { G = 0, E11 = 1, E12 = 2, E2 = 3 };

// Exact exp(−i s H) for H = i t|b><a| − i t*|a><b|, applied in place.
void rotate_pair(Eigen::Vector4cd& psi, int a, int b, cplx t, double s) {
  const double mag = std::abs(t);
  if (mag == 0.0) return;
  const double theta = s * mag;
  const cplx u = t / mag;
  const cplx pa = psi[a];
  const cplx pb = psi[b];
  psi[a] = std::cos(theta) * pa - std::conj(u) * std::sin(theta) * pb;
  psi[b] = u * std::sin(theta) * pa + std::cos(theta) * pb;
}

void step_t11(Eigen::Vector4cd& psi, cplx t, double s) {
  rotate_pair(psi, G, E11, t, s);
  rotate_pair(psi, E12, E2, t, s);
}

void step_t12(Eigen::Vector4cd& psi, cplx t, double s) {
  rotate_pair(psi, G, E12, t, s);
  rotate_pair(psi, E11, E2, t, s);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

void check_steps(int steps) {
  if (steps < 1) throw PreconditionError("Trotter step count must be >= 1");
}

}  // namespace

std::string_view to_string(ParamMode mode) { return mode == ParamMode::full6 ? "full6" : "reduced2"; }

std::size_t parameter_count(ParamMode mode) { return mode == ParamMode::full6 ? 6 : 2; }

ClusterAmplitudes ClusterAmplitudes::full(cplx t11, cplx t12, cplx t2) { return {t11, t12, t2, ParamMode::full6}; }

ClusterAmplitudes ClusterAmplitudes::reduced(double t1, double t2) { return {t1, t1, t2, ParamMode::reduced2}; }

ClusterAmplitudes ClusterAmplitudes::from_vector(std::span<const double> x, ParamMode mode) {
  if (x.size() != parameter_count(mode))
    throw PreconditionError("expected " + std::to_string(parameter_count(mode)) + " amplitude parameters");
  if (mode == ParamMode::reduced2) return reduced(x[0], x[1]);
  return full({x[0], x[1]}, {x[2], x[3]}, {x[4], x[5]});
}

std::vector<double> ClusterAmplitudes::to_vector() const {
  if (mode == ParamMode::reduced2) return {t11.real(), t2.real()};
  return {t11.real(), t11.imag(), t12.real(), t12.imag(), t2.real(), t2.imag()};
}

Eigen::Matrix4cd effective_hamiltonian(const ClusterAmplitudes& t) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(E11, G) = kI * t.t11;
  h(E2, E12) = kI * t.t11;
  h(E12, G) = kI * t.t12;
  h(E2, E11) = kI * t.t12;
  h(E2, G) = kI * t.t2;
  const Eigen::Matrix4cd lower = h;
  h += lower.adjoint();
  return h;
}

QuditState ucc_state_exact(const ClusterAmplitudes& t) {
  const Eigen::Matrix4cd generator = -kI * effective_hamiltonian(t);
  const Eigen::Matrix4cd u = generator.exp();
  QuditState psi;
  psi.amplitudes = u.col(G);
  return psi;
}

QuditState ucc_state_trotter(const ClusterAmplitudes& t, int steps) {
  check_steps(steps);
  const double half = 0.5 / steps;
  const double full = 1.0 / steps;
  Eigen::Vector4cd psi = Eigen::Vector4cd::Unit(G);
  for (int n = 0; n < steps; ++n) {
    step_t11(psi, t.t11, half);
    step_t12(psi, t.t12, half);
    rotate_pair(psi, G, E2, t.t2, full);
    step_t12(psi, t.t12, half);
    step_t11(psi, t.t11, half);
  }
  return {psi};
}

std::vector<PauliSum> cluster_generators_qubits(const ClusterAmplitudes& t) {
  // Spin orbitals: 0 = 1↑, 1 = 1↓, 2 = 2↑, 3 = 2↓.
  const auto c = [](int j) { return jw_creation(j, kQubits); };
  const auto a = [](int j) { return jw_annihilation(j, kQubits); };
  const PauliSum ex11 = c(3) * a(1);
  const PauliSum ex12 = c(2) * a(0);
  const PauliSum ex2 = c(3) * c(2) * a(0) * a(1);

  std::vector<PauliSum> out;
  for (const auto& [amp, op] : {std::pair{t.t11, ex11}, std::pair{t.t12, ex12}, std::pair{t.t2, ex2}}) {
    const PauliSum tk = amp * op;
    PauliSum g = kI * (tk - tk.adjoint());
    out.push_back(std::move(g.prune(1e-15)));
  }
  return out;
}

Eigen::VectorXcd ucc_state_qubits(const ClusterAmplitudes& t, int steps) {
  check_steps(steps);
  std::vector<PauliString> strings;
  for (const auto& g : cluster_generators_qubits(t))
    for (auto& s : g.terms()) strings.push_back(std::move(s));

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
  psi[kSectorBasis[0].occupation] = 1.0;
  const double half = 0.5 / steps;
  for (int n = 0; n < steps; ++n) {
    for (const auto& s : strings) apply_pauli_rotation(s.letters, s.coefficient.real() * half, psi);
    for (auto it = strings.rbegin(); it != strings.rend(); ++it)
      apply_pauli_rotation(it->letters, it->coefficient.real() * half, psi);
  }
  return psi;
}

std::vector<std::uint64_t> cluster_term_count(int spin_orbitals, int electrons, int max_level) {
  if (spin_orbitals < 2 || spin_orbitals % 2 != 0) throw PreconditionError("spin orbital count must be even and >= 2");
  if (electrons < 1 || electrons > spin_orbitals) throw PreconditionError("need 0 < electrons <= spin orbitals");
  if (max_level < 1 || max_level > electrons) throw PreconditionError("need 1 <= max level <= electrons");
  const int per_spin = spin_orbitals / 2;
  const int occ_up = (electrons + 1) / 2;
  const int occ_down = electrons / 2;
  const int virt_up = per_spin - occ_up;
  const int virt_down = per_spin - occ_down;
  std::vector<std::uint64_t> counts;
  for (int level = 1; level <= max_level; ++level) {
    std::uint64_t n = 0;
    for (int up = 0; up <= level; ++up) {
      const int down = level - up;
      n += binomial(occ_up, up) * binomial(virt_up, up) * binomial(occ_down, down) * binomial(virt_down, down);
    }
    counts.push_back(n);
  }
  return counts;
}

}  // namespace hehucc
