#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hehucc/ansatz.hpp"
#include "hehucc/hamiltonian.hpp"
#include "hehucc/measurement.hpp"
#include "hehucc/nelder_mead.hpp"

namespace hehucc {

struct Eigensystem {
  Eigen::Vector4d values;    // ascending
  Eigen::Matrix4cd vectors;  // columns, orthonormal
};

Eigensystem exact_eigensystem(const Eigen::Matrix4cd& h);
inline Eigensystem exact_eigensystem(const QuditHamiltonian& h) { return exact_eigensystem(h.matrix); }

enum class Preparation { trotter, exact };
enum class Backend { qudit, qubits };
enum class EnergyEstimator { term_by_term, tomography };

std::string_view to_string(Preparation p);
std::string_view to_string(Backend b);
std::string_view to_string(EnergyEstimator e);

/// Simplex defaults for the variational loop: zero start, 0.1 offsets, and an
/// f-tolerance of 1e-8 hartree (exact) or 1e-3 (shot noise floor).
NelderMeadConfig vqe_optimizer_defaults(bool shot_mode);

struct VqeOptions {
  ParamMode mode = ParamMode::reduced2;
  Preparation prep = Preparation::trotter;
  int trotter_steps = kDefaultTrotterSteps;
  Backend backend = Backend::qudit;
  /// Full 16×16 operator; required when backend == qubits.
  Eigen::MatrixXcd qubit_hamiltonian;
  /// Empty: exact expectation values.
  std::optional<ShotPlan> shots;
  EnergyEstimator estimator = EnergyEstimator::term_by_term;
  /// Hermitian terms for term-by-term estimation; empty means one term per
  /// matrix element pair of the Hamiltonian.
  std::vector<Eigen::Matrix4cd> terms;
  std::optional<NelderMeadConfig> optimizer;
  /// Starting amplitudes as a parameter vector; empty means |G> (all zero).
  std::vector<double> start;
  /// After a Trotterized search, continue from its best point with exact
  /// preparation and a 0.01 simplex.
  bool polish_exact = false;
  /// One restart from the best point with a fresh simplex if the first run
  /// hits max_iterations.
  bool restart = true;
  /// Further restarts from the best point with a fresh simplex, repeated while
  /// they lower the energy by more than the f-tolerance. A collapsed simplex
  /// can stop short of the minimum in the six-parameter folded landscapes.
  int convergence_restarts = 0;
};

struct VqeTraceEntry {
  int iteration = 0;
  double energy = 0.0;
  bool accepted = false;
  double fidelity = 0.0;
};

struct VqeResult {
  ClusterAmplitudes best;
  QuditState state;
  /// Exact mode: <H> at the best point. Shot mode: an independent re-measurement
  /// at the best point (the simplex minimum itself is biased low by noise).
  double energy = 0.0;
  double std_error = 0.0;
  double optimizer_energy = 0.0;
  double exact_ground = 0.0;
  double fidelity = 0.0;
  int iterations = 0;
  int evaluations = 0;
  int restarts = 0;
  int settings_per_evaluation = 0;
  bool converged = false;
  Preparation final_prep = Preparation::trotter;
  std::vector<VqeTraceEntry> trace;
};

/// Variational loop: prepare the ansatz, estimate <H>, feed the simplex search.
/// Fidelity against the exact ground vector is recorded for diagnostics only.
VqeResult vqe_ground(const QuditHamiltonian& h, const VqeOptions& options);

/// Qudit amplitudes of the ansatz under the given preparation settings.
QuditState prepare_state(const ClusterAmplitudes& t, const VqeOptions& options);

/// Hermitian terms: the diagonal and one term per off-diagonal pair (i, j).
std::vector<Eigen::Matrix4cd> elementwise_terms(const Eigen::Matrix4cd& h);

struct PerturbativeCurves {
  std::vector<double> first_order;
  std::vector<double> second_order;
};

/// Rayleigh–Schrödinger corrections for H0 + ε V at each ε. Throws
/// DegeneracyError when the H0 ground state gap is below 1e-8.
PerturbativeCurves perturbative_field_energies(const QuditHamiltonian& h0, const Eigen::Matrix4cd& perturbation,
                                               std::span<const double> strengths);

}  // namespace hehucc
