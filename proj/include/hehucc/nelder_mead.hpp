#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace hehucc {

struct NelderMeadConfig {
  double reflection = 1.0;   // α > 0
  double expansion = 2.0;    // γ > 1
  double contraction = 0.5;  // 0 < β < 1
  double shrink = 0.5;       // 0 < σ < 1
  /// Offset of vertex i from x0 along axis i. Empty means `initial_scale` on every axis.
  std::vector<double> initial_step;
  double initial_scale = 0.1;
  double f_tolerance = 1e-8;
  /// Max distance of any vertex from the best one; 0 disables the check.
  double x_tolerance = 0.0;
  int max_iterations = 300;

  void validate() const;
};

enum class SimplexStep { reflect, expand, contract_outside, contract_inside, shrink };

std::string_view to_string(SimplexStep step);

struct SimplexTraceEntry {
  int iteration = 0;
  SimplexStep step = SimplexStep::reflect;
  std::vector<double> x;  // vertex that entered the simplex (best vertex after a shrink)
  double f = 0.0;
  bool improved = false;  // became the new best vertex
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::vector<SimplexTraceEntry> trace;
};

using Objective = std::function<double(std::span<const double>)>;

/// Downhill simplex minimization. Stops when the spread of function values over
/// the simplex drops below f_tolerance (and the simplex is within x_tolerance,
/// if set) or after max_iterations. Throws OptimizerError on a non-finite
/// objective value.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadConfig& cfg);

}  // namespace hehucc
