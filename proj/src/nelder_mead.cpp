#include "hehucc/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hehucc/errors.hpp"

namespace hehucc {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

std::vector<double> affine(const std::vector<double>& from, const std::vector<double>& to, double t) {
  // from + t (to − from)
  std::vector<double> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) out[i] = from[i] + t * (to[i] - from[i]);
  return out;
}

}  // namespace

void NelderMeadConfig::validate() const {
  if (!(reflection > 0.0)) throw PreconditionError("Nelder-Mead reflection must be > 0");
  if (!(expansion > 1.0)) throw PreconditionError("Nelder-Mead expansion must be > 1");
  if (!(contraction > 0.0 && contraction < 1.0)) throw PreconditionError("Nelder-Mead contraction must lie in (0, 1)");
  if (!(shrink > 0.0 && shrink < 1.0)) throw PreconditionError("Nelder-Mead shrink must lie in (0, 1)");
  if (!(f_tolerance >= 0.0) || !(x_tolerance >= 0.0)) throw PreconditionError("tolerances must be >= 0");
  if (max_iterations < 1) throw PreconditionError("max_iterations must be >= 1");
}

std::string_view to_string(SimplexStep step) {
  switch (step) {
    case SimplexStep::reflect: return "reflect";
    case SimplexStep::expand: return "expand";
    case SimplexStep::contract_outside: return "contract_outside";
    case SimplexStep::contract_inside: return "contract_inside";
    case SimplexStep::shrink: return "shrink";
  }
  return "unknown";
}

NelderMeadResult nelder_mead(const Objective& objective, std::vector<double> x0, const NelderMeadConfig& cfg) {
  cfg.validate();
  const std::size_t n = x0.size();
  if (n == 0) throw PreconditionError("Nelder-Mead needs at least one parameter");
  if (!std::all_of(x0.begin(), x0.end(), [](double v) { return std::isfinite(v); }))
    throw PreconditionError("starting point must be finite");
  if (!cfg.initial_step.empty() && cfg.initial_step.size() != n)
    throw PreconditionError("initial_step length does not match the parameter count");

  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    const double v = objective(x);
    ++result.evaluations;
    if (!std::isfinite(v)) throw OptimizerError("objective returned a non-finite value", x);
    return v;
  };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    auto x = x0;
    x[i] += cfg.initial_step.empty() ? cfg.initial_scale : cfg.initial_step[i];
    simplex.push_back({x, eval(x)});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  for (;;) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    const Vertex& best = simplex.front();
    double x_spread = 0.0;
    for (const auto& v : simplex)
      for (std::size_t i = 0; i < n; ++i) x_spread = std::max(x_spread, std::abs(v.x[i] - best.x[i]));
    if (simplex.back().f - best.f <= cfg.f_tolerance && (cfg.x_tolerance == 0.0 || x_spread <= cfg.x_tolerance)) {
      result.converged = true;
      break;
    }
    if (result.iterations >= cfg.max_iterations) break;
    ++result.iterations;

    const double f_best = best.f;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);
    Vertex& worst = simplex.back();
    const double f_second_worst = simplex[n - 1].f;

    SimplexTraceEntry entry;
    entry.iteration = result.iterations;
    auto accept = [&](Vertex v, SimplexStep step) {
      entry.step = step;
      entry.x = v.x;
      entry.f = v.f;
      entry.improved = v.f < f_best;
      worst = std::move(v);
    };

    Vertex reflected{affine(centroid, worst.x, -cfg.reflection), 0.0};
    reflected.f = eval(reflected.x);
    if (reflected.f < f_best) {
      Vertex expanded{affine(centroid, worst.x, -cfg.reflection * cfg.expansion), 0.0};
      expanded.f = eval(expanded.x);
      if (expanded.f < reflected.f)
        accept(std::move(expanded), SimplexStep::expand);
      else
        accept(std::move(reflected), SimplexStep::reflect);
    } else if (reflected.f < f_second_worst) {
      accept(std::move(reflected), SimplexStep::reflect);
    } else {
      bool shrink = false;
      if (reflected.f < worst.f) {
        Vertex c{affine(centroid, reflected.x, cfg.contraction), 0.0};
        c.f = eval(c.x);
        if (c.f <= reflected.f)
          accept(std::move(c), SimplexStep::contract_outside);
        else
          shrink = true;
      } else {
        Vertex c{affine(centroid, worst.x, cfg.contraction), 0.0};
        c.f = eval(c.x);
        if (c.f < worst.f)
          accept(std::move(c), SimplexStep::contract_inside);
        else
          shrink = true;
      }
      if (shrink) {
        for (std::size_t v = 1; v <= n; ++v) {
          simplex[v].x = affine(simplex[0].x, simplex[v].x, cfg.shrink);
          simplex[v].f = eval(simplex[v].x);
        }
        const auto it = std::min_element(simplex.begin(), simplex.end(), by_value);
        entry.step = SimplexStep::shrink;
        entry.x = it->x;
        entry.f = it->f;
        entry.improved = it->f < f_best;
      }
    }
    result.trace.push_back(std::move(entry));
  }

  result.x = simplex.front().x;
  result.f = simplex.front().f;
  return result;
}

}  // namespace hehucc
