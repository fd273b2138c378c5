#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hehucc/pauli.hpp"

namespace hehucc {

enum class ParamMode { full6, reduced2 };

std::string_view to_string(ParamMode mode);
std::size_t parameter_count(ParamMode mode);

/// Cluster amplitudes of T1 = t11 a†(2↓)a(1↓) + t12 a†(2↑)a(1↑) and
/// T2 = t2 a†(2↓)a†(2↑)a(1↑)a(1↓).
///
/// reduced2 ties t11 = t12 = t1 and keeps t1, t2 real; the singlet ground
/// state lies in that manifold.
struct ClusterAmplitudes {
  cplx t11{};
  cplx t12{};
  cplx t2{};
  ParamMode mode = ParamMode::full6;

  static ClusterAmplitudes full(cplx t11, cplx t12, cplx t2);
  static ClusterAmplitudes reduced(double t1, double t2);

  /// full6: (Re t11, Im t11, Re t12, Im t12, Re t2, Im t2); reduced2: (t1, t2).
  static ClusterAmplitudes from_vector(std::span<const double> x, ParamMode mode);
  std::vector<double> to_vector() const;
};

struct QuditState {
  Eigen::Vector4cd amplitudes = Eigen::Vector4cd::Unit(0);

  cplx operator[](int i) const { return amplitudes[i]; }
};

/// i·(T − T†) restricted to (|G>, |E11>, |E12>, |E2>).
Eigen::Matrix4cd effective_hamiltonian(const ClusterAmplitudes& t);

/// exp(−i H_eff)|G> by dense matrix exponential.
QuditState ucc_state_exact(const ClusterAmplitudes& t);

/// Symmetric second-order splitting over the three amplitude generators,
/// [e^{-iH11/2N} e^{-iH12/2N} e^{-iH2/N} e^{-iH12/2N} e^{-iH11/2N}]^N |G>.
inline constexpr int kDefaultTrotterSteps = 2;
QuditState ucc_state_trotter(const ClusterAmplitudes& t, int steps = kDefaultTrotterSteps);

/// Jordan-Wigner images of i(T_k − T_k†) for the three excitations, in the
/// order (t11 single, t12 single, double). Coefficients are real.
std::vector<PauliSum> cluster_generators_qubits(const ClusterAmplitudes& t);

/// Four-qubit preparation from |1100>: each Pauli string of each generator is
/// applied as an exact rotation; strings in generator order for the first half
/// step and reversed for the second, repeated `steps` times.
Eigen::VectorXcd ucc_state_qubits(const ClusterAmplitudes& t, int steps = kDefaultTrotterSteps);

/// Number of spin-preserving excitation operators out of the reference
/// determinant at each level 1..max_level. `spin_orbitals` is even; the
/// reference fills the lowest orbitals of each spin, ⌈n/2⌉ up and ⌊n/2⌋ down.
std::vector<std::uint64_t> cluster_term_count(int spin_orbitals, int electrons, int max_level);

}  // namespace hehucc
