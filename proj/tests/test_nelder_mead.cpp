#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hehucc/errors.hpp"
#include "hehucc/nelder_mead.hpp"

using namespace hehucc;

namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rosenbrock(std::span<const double> x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

}  // namespace

TEST_CASE("quadratic bowl") {
  // The stopping rule bounds the spread of values, not the best value itself,
  // so the spread tolerance sits below the accuracy being checked.
  NelderMeadConfig cfg;
  cfg.f_tolerance = 1e-10;
  const auto r = nelder_mead(sphere, {1.0, 1.0}, cfg);
  CHECK(r.converged);
  CHECK(r.f < 1e-8);
  CHECK(std::abs(r.x[0]) < 1e-3);
  CHECK(std::abs(r.x[1]) < 1e-3);
  CHECK(r.iterations == static_cast<int>(r.trace.size()));
  CHECK(r.evaluations > r.iterations);
}

TEST_CASE("Rosenbrock from (-1.2, 1)") {
  NelderMeadConfig cfg;
  cfg.f_tolerance = 1e-14;
  cfg.x_tolerance = 1e-7;
  cfg.max_iterations = 5000;
  const auto r = nelder_mead(rosenbrock, {-1.2, 1.0}, cfg);
  CHECK(r.converged);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-4);
  CHECK(std::abs(r.x[1] - 1.0) < 1e-4);
}

TEST_CASE("deterministic and non-increasing best value") {
  NelderMeadConfig cfg;
  cfg.initial_step = {0.3, -0.2, 0.1};
  auto f = [](std::span<const double> x) { return std::pow(x[0] - 1, 2) + 3 * std::pow(x[1] + 2, 2) + x[2] * x[2] * x[2] * x[2]; };
  const auto a = nelder_mead(f, {0, 0, 0}, cfg);
  const auto b = nelder_mead(f, {0, 0, 0}, cfg);
  CHECK(a.x == b.x);
  CHECK(a.f == b.f);
  CHECK(a.iterations == b.iterations);

  double best = f(std::vector<double>{0, 0, 0});
  for (const auto& e : a.trace) {
    if (e.improved) {
      CHECK(e.f < best);
      best = e.f;
    }
  }
  CHECK(best >= a.f);
}

TEST_CASE("iteration cap") {
  NelderMeadConfig cfg;
  cfg.max_iterations = 5;
  cfg.f_tolerance = 0.0;
  const auto r = nelder_mead(rosenbrock, {-1.2, 1.0}, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 5);
  CHECK(r.trace.size() == 5);
}

TEST_CASE("x tolerance keeps the search going after the values flatten") {
  NelderMeadConfig loose, tight;
  loose.f_tolerance = tight.f_tolerance = 1e-4;
  tight.x_tolerance = 1e-8;
  const auto a = nelder_mead(sphere, {1.0, 1.0}, loose);
  const auto b = nelder_mead(sphere, {1.0, 1.0}, tight);
  CHECK(b.iterations > a.iterations);
  CHECK(b.f <= a.f);
}

TEST_CASE("configuration validation") {
  auto with = [](auto mutate) {
    NelderMeadConfig c;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(with([](auto& c) { c.reflection = 0.0; }).validate(), PreconditionError);
  CHECK_THROWS_AS(with([](auto& c) { c.expansion = 1.0; }).validate(), PreconditionError);
  CHECK_THROWS_AS(with([](auto& c) { c.contraction = 1.0; }).validate(), PreconditionError);
  CHECK_THROWS_AS(with([](auto& c) { c.shrink = 0.0; }).validate(), PreconditionError);
  CHECK_THROWS_AS(with([](auto& c) { c.max_iterations = 0; }).validate(), PreconditionError);
  CHECK_NOTHROW(NelderMeadConfig{}.validate());

  CHECK_THROWS_AS(nelder_mead(sphere, {}, NelderMeadConfig{}), PreconditionError);
  CHECK_THROWS_AS(nelder_mead(sphere, {NAN}, NelderMeadConfig{}), PreconditionError);
  CHECK_THROWS_AS(nelder_mead(sphere, {1.0, 2.0}, with([](auto& c) { c.initial_step = {0.1}; })),
                  PreconditionError);
}

TEST_CASE("non-finite objective reports the offending point") {
  auto f = [](std::span<const double> x) { return x[0] > 0.05 ? std::nan("") : x[0] * x[0]; };
  try {
    nelder_mead(f, {0.0}, NelderMeadConfig{});
    FAIL("expected OptimizerError");
  } catch (const OptimizerError& e) {
    REQUIRE(e.point().size() == 1);
    CHECK(e.point()[0] > 0.05);
  }
  CHECK(to_string(SimplexStep::contract_inside) == "contract_inside");
}
