#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "hehucc/errors.hpp"
#include "hehucc/report.hpp"
#include "hehucc/scan.hpp"

using namespace hehucc;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  double r = 1.7;
  double rmin = 0.5, rmax = 4.0, rstep = 0.1;
  double fmin = -0.2, fmax = 0.2, fstep = 0.01;
  double lmin = -4.0, lmax = 1.0, lstep = 0.05;
  std::optional<int> params;
  std::string prep;
  std::string mode;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
  std::string estimator = "term";
  int trotter = kDefaultTrotterSteps;
  bool polish = false;
  std::optional<double> ftol;
  int max_iter = 300;
  std::optional<int> stall_restarts;
  std::string convention = "total";
  std::string format = "csv";
  std::string output;
  std::string basis;
  int threads = 0;

  bool shot_mode() const { return mode == "shots"; }
};

void validate(RunConfig& c) {
  if (c.mode.empty()) c.mode = c.shots ? "shots" : "exact";
  if (c.shot_mode()) {
    if (!c.shots) throw UsageError("--mode shots needs --shots");
    if (!c.seed) throw UsageError("--seed is mandatory in shot mode");
  } else if (c.shots) {
    throw UsageError("--shots given with --mode exact");
  }
  if (c.params && *c.params != 2 && *c.params != 6) throw UsageError("--params must be 2 or 6");
  if (c.subcommand == "surface" && c.rmax < c.rmin) throw UsageError("--rmax must be >= --rmin");
  if (c.subcommand == "field" && c.fmax < c.fmin) throw UsageError("--fmax must be >= --fmin");
  if (c.subcommand == "excited" && c.lmax < c.lmin) throw UsageError("--lmax must be >= --lmin");
  if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
  if (c.subcommand == "integrals" && c.format != "json") throw UsageError("integrals writes JSON only");
}

// Folded-spectrum targets include excited states outside the singlet manifold,
// so that subcommand defaults to all six parameters and exact preparation.
VqeOptions vqe_options(const RunConfig& c) {
  const bool excited = c.subcommand == "excited";
  VqeOptions o;
  o.mode = c.params.value_or(excited ? 6 : 2) == 6 ? ParamMode::full6 : ParamMode::reduced2;
  const std::string prep = c.prep.empty() ? (excited ? "exact" : "trotter") : c.prep;
  o.prep = prep == "exact" ? Preparation::exact : Preparation::trotter;
  o.trotter_steps = c.trotter;
  o.polish_exact = c.polish;
  o.convergence_restarts = c.stall_restarts.value_or(excited ? 20 : 0);
  o.estimator = c.estimator == "tomography" ? EnergyEstimator::tomography : EnergyEstimator::term_by_term;
  if (c.shot_mode()) o.shots = ShotPlan{*c.shots, *c.seed, false};
  NelderMeadConfig nm = vqe_optimizer_defaults(c.shot_mode());
  nm.max_iterations = c.max_iter;
  if (c.ftol)
    nm.f_tolerance = *c.ftol;
  else if (excited && !c.shot_mode())
    nm.f_tolerance = 1e-14;
  o.optimizer = nm;
  return o;
}

nlohmann::json config_echo(const RunConfig& c, const VqeOptions& o) {
  nlohmann::json j = {
      {"subcommand", c.subcommand},
      {"params", parameter_count(o.mode)},
      {"prep", to_string(o.prep)},
      {"trotter", o.trotter_steps},
      {"polish", o.polish_exact},
      {"mode", c.mode},
      {"estimator", to_string(o.estimator)},
      {"ftol", o.optimizer->f_tolerance},
      {"max_iter", o.optimizer->max_iterations},
      {"stall_restarts", o.convergence_restarts},
      {"basis", c.basis},
  };
  if (c.shot_mode()) {
    j["shots"] = *c.shots;
    j["seed"] = *c.seed;
  }
  if (c.subcommand == "surface") {
    j["rmin"] = c.rmin;
    j["rmax"] = c.rmax;
    j["rstep"] = c.rstep;
    j["convention"] = c.convention;
  } else {
    j["r"] = c.r;
  }
  if (c.subcommand == "field") {
    j["fmin"] = c.fmin;
    j["fmax"] = c.fmax;
    j["fstep"] = c.fstep;
    j["axis"] = {0, 0, 1};
  }
  if (c.subcommand == "excited") {
    j["lmin"] = c.lmin;
    j["lmax"] = c.lmax;
    j["lstep"] = c.lstep;
  }
  return j;
}

std::string render(const Table& t, const RunConfig& c, const nlohmann::json& config,
                   const nlohmann::json& summary = nullptr) {
  if (c.format == "csv") return to_csv(t);
  nlohmann::json j = table_json(t, config);
  if (!summary.is_null()) j["summary"] = summary;
  return j.dump(2) + "\n";
}

template <class Points>
int failures(const Points& pts) {
  int n = 0;
  for (const auto& p : pts)
    if (!p.ok) {
      ++n;
      std::cerr << "warning: point failed: " << p.error << "\n";
    }
  return n;
}

std::string run(const RunConfig& c) {
  ScanConfig scan;
  scan.basis = load_basis_library(c.basis);
  scan.vqe = vqe_options(c);
  scan.seed = c.seed.value_or(0);
  const nlohmann::json config = config_echo(c, scan.vqe);

  if (c.subcommand == "surface") {
    const auto grid = linear_grid(c.rmin, c.rmax, c.rstep);
    const auto pts = dissociation_scan(grid, scan);
    failures(pts);
    const auto conv = c.convention == "electronic" ? EnergyConvention::electronic : EnergyConvention::total;
    return render(surface_table(pts, conv), c, config);
  }
  if (c.subcommand == "field") {
    const auto grid = linear_grid(c.fmin, c.fmax, c.fstep);
    const auto pts = field_scan(c.r, grid, scan);
    failures(pts);
    return render(field_table(pts), c, config);
  }
  if (c.subcommand == "excited") {
    const auto grid = linear_grid(c.lmin, c.lmax, c.lstep);
    const auto problem = build_heh_problem(c.r, scan.basis, scan.scf);
    const auto pts = folded_scan(problem.hamiltonian, grid, scan);
    failures(pts);
    nlohmann::json summary;
    for (double e : exact_eigensystem(problem.hamiltonian).values) summary["exact_spectrum"].push_back(e);
    return render(folded_table(pts), c, config, summary);
  }

  const auto problem = build_heh_problem(c.r, scan.basis, scan.scf);
  if (c.subcommand == "integrals") {
    nlohmann::json j = {{"config", config}, {"records", nlohmann::json::array({integrals_dump(problem, jw_transform(problem.ints))})}};
    return j.dump(2) + "\n";
  }

  VqeOptions o = scan.vqe;
  o.terms = problem.terms;
  const auto res = vqe_ground(problem.hamiltonian, o);
  std::cerr << "E_vqe " << format_number(res.energy) << "  E_exact " << format_number(res.exact_ground)
            << "  fidelity " << format_number(res.fidelity) << "  iterations " << res.iterations << "\n";
  const nlohmann::json summary = {
      {"E_vqe", res.energy},
      {"stderr", res.std_error},
      {"E_exact", res.exact_ground},
      {"E_nuclear_repulsion", problem.ints.nuclear_repulsion},
      {"fidelity", res.fidelity},
      {"iterations", res.iterations},
      {"evaluations", res.evaluations},
      {"restarts", res.restarts},
      {"converged", res.converged},
      {"settings_per_evaluation", res.settings_per_evaluation},
      {"amplitudes", res.best.to_vector()},
  };
  return render(trace_table(res), c, config, summary);
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--params", c.params, "Variational parameters: 2 (reduced) or 6 (full)");
  sub->add_option("--prep", c.prep, "State preparation")->check(CLI::IsMember({"trotter", "exact"}));
  sub->add_option("--trotter", c.trotter, "Trotter steps N")->check(CLI::PositiveNumber);
  sub->add_flag("--polish", c.polish, "Refine a Trotterized optimum with exact preparation");
  sub->add_option("--mode", c.mode, "Measurement mode")->check(CLI::IsMember({"exact", "shots"}));
  sub->add_option("--shots", c.shots, "Shots per measurement setting")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "Base seed (required with shots)");
  sub->add_option("--estimator", c.estimator, "Energy estimator in shot mode")
      ->check(CLI::IsMember({"term", "tomography"}));
  sub->add_option("--ftol", c.ftol, "Simplex value-spread tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", c.max_iter, "Simplex iteration cap")->check(CLI::PositiveNumber);
  sub->add_option("--stall-restarts", c.stall_restarts, "Extra fresh-simplex restarts, repeated while they lower the energy")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output,-o", c.output, "Output file (default stdout)");
  sub->add_option("--basis", c.basis, "STO-3G basis data file");
  sub->add_option("--threads", c.threads, "Worker threads for scans (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  c.basis = default_basis_path().string();

  CLI::App app{"Classical simulator of the UCC variational eigensolver for HeH+"};
  app.set_config("--config", "", "TOML/INI file; flags override its values");
  app.require_subcommand(1);

  auto* surface = app.add_subcommand("surface", "Ground-state dissociation curve");
  surface->add_option("--rmin", c.rmin, "Smallest bond length (bohr)")->check(CLI::PositiveNumber);
  surface->add_option("--rmax", c.rmax, "Largest bond length (bohr)")->check(CLI::PositiveNumber);
  surface->add_option("--rstep", c.rstep, "Grid spacing (bohr)")->check(CLI::PositiveNumber);
  surface->add_option("--convention", c.convention, "Energy convention for E_vqe/E_exact")
      ->check(CLI::IsMember({"total", "electronic"}));

  auto* vqe = app.add_subcommand("vqe", "Single-point optimization with its iteration trace");
  auto* field = app.add_subcommand("field", "Ground state under an axial static field");
  field->add_option("--fmin", c.fmin, "Smallest field strength (a.u.)");
  field->add_option("--fmax", c.fmax, "Largest field strength (a.u.)");
  field->add_option("--fstep", c.fstep, "Field spacing (a.u.)")->check(CLI::PositiveNumber);
  auto* excited = app.add_subcommand("excited", "Folded-spectrum scan over lambda");
  excited->add_option("--lmin", c.lmin, "Smallest lambda (hartree)");
  excited->add_option("--lmax", c.lmax, "Largest lambda (hartree)");
  excited->add_option("--lstep", c.lstep, "Lambda spacing (hartree)")->check(CLI::PositiveNumber);
  auto* integrals = app.add_subcommand("integrals", "Dump h1/h2 tensors, Pauli terms and the qudit matrix");

  for (auto* sub : {vqe, field, excited, integrals})
    sub->add_option("--r", c.r, "Bond length (bohr)")->check(CLI::PositiveNumber);
  for (auto* sub : {surface, vqe, field, excited, integrals}) add_common(sub, c);
  integrals->get_option("--format")->default_str("json");

  try {
    app.parse(argc, argv);
    c.subcommand = app.get_subcommands().front()->get_name();
    if (c.subcommand == "integrals" && integrals->count("--format") == 0) c.format = "json";
    validate(c);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (c.threads > 0) omp_set_num_threads(c.threads);

  std::string text;
  try {
    text = run(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (c.output.empty()) {
    std::cout << text << std::flush;
  } else {
    std::ofstream out(c.output, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "error: cannot write " << c.output << "\n";
      return 2;
    }
  }
  return 0;
}
