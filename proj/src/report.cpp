#include "hehucc/report.hpp"

#include <charconv>
#include <cmath>

namespace hehucc {

namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

nlohmann::json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>)
          return number(v);
        else
          return v;
      },
      c);
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>)
          return format_number(v);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "1" : "0";
        else if constexpr (std::is_same_v<T, long long>)
          return std::to_string(v);
        else
          return v;
      },
      c);
}

double or_nan(bool ok, double v) { return ok ? v : std::nan(""); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
  std::string out;
  bool first = true;
  for (const auto& c : table.columns) {
    if (c.json_only) continue;
    if (!first) out += ',';
    out += c.name;
    first = false;
  }
  out += '\n';
  for (const auto& row : table.rows) {
    first = true;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (table.columns[i].json_only) continue;
      if (!first) out += ',';
      out += cell_text(row[i]);
      first = false;
    }
    out += '\n';
  }
  return out;
}

nlohmann::json table_json(const Table& table, const nlohmann::json& config) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json rec = nlohmann::json::object();
    for (std::size_t i = 0; i < table.columns.size(); ++i) rec[table.columns[i].name] = cell_json(row[i]);
    records.push_back(std::move(rec));
  }
  return {{"config", config}, {"records", std::move(records)}};
}

Table surface_table(const std::vector<SurfacePoint>& points, EnergyConvention convention) {
  Table t;
  t.columns = {{"R"},
               {"E_vqe"},
               {"E_exact"},
               {"iterations"},
               {"fidelity"},
               {"stderr"},
               {"E_vqe_total", true},
               {"E_exact_total", true},
               {"E_vqe_electronic", true},
               {"E_exact_electronic", true},
               {"nuclear_repulsion", true},
               {"ok", true},
               {"error", true}};
  for (const auto& p : points) {
    t.rows.push_back({p.bond_length, or_nan(p.ok, p.vqe(convention)), or_nan(p.ok, p.exact(convention)),
                      static_cast<long long>(p.iterations), or_nan(p.ok, p.fidelity), or_nan(p.ok, p.std_error),
                      or_nan(p.ok, p.vqe(EnergyConvention::total)), or_nan(p.ok, p.exact(EnergyConvention::total)),
                      or_nan(p.ok, p.vqe(EnergyConvention::electronic)),
                      or_nan(p.ok, p.exact(EnergyConvention::electronic)), or_nan(p.ok, p.nuclear_repulsion), p.ok,
                      p.error});
  }
  return t;
}

Table field_table(const std::vector<FieldPoint>& points) {
  Table t;
  t.columns = {{"field"},       {"E_vqe"},    {"E_exact"},  {"E_first_order"}, {"E_second_order"},
               {"iterations"}, {"fidelity"}, {"stderr"},   {"ok", true},      {"error", true}};
  for (const auto& p : points)
    t.rows.push_back({p.strength, or_nan(p.ok, p.e_vqe), or_nan(p.ok, p.e_exact), p.e_first_order,
                      p.e_second_order, static_cast<long long>(p.iterations), or_nan(p.ok, p.fidelity),
                      or_nan(p.ok, p.std_error), p.ok, p.error});
  return t;
}

Table folded_table(const std::vector<FoldedPoint>& points) {
  Table t;
  t.columns = {{"lambda"},     {"min_folded"}, {"E_plus"},   {"E_minus"},  {"exact_min_folded"},
               {"iterations"}, {"fidelity"},   {"stderr"},   {"ok", true}, {"error", true}};
  for (const auto& p : points)
    t.rows.push_back({p.lambda, or_nan(p.ok, p.min_value), or_nan(p.ok, p.e_plus), or_nan(p.ok, p.e_minus),
                      or_nan(p.ok, p.exact_min), static_cast<long long>(p.iterations), or_nan(p.ok, p.fidelity),
                      or_nan(p.ok, p.std_error), p.ok, p.error});
  return t;
}

Table trace_table(const VqeResult& result) {
  Table t;
  t.columns = {{"iteration"}, {"energy"}, {"accepted"}, {"fidelity"}};
  for (const auto& e : result.trace)
    t.rows.push_back({static_cast<long long>(e.iteration), e.energy, e.accepted, e.fidelity});
  return t;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({number(m(i, j).real()), number(m(i, j).imag())});
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json pauli_to_json(const PauliSum& pauli) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : pauli.terms())
    terms.push_back({{"letters", t.letters}, {"re", number(t.coefficient.real())}, {"im", number(t.coefficient.imag())}});
  return terms;
}

nlohmann::json integrals_dump(const MolecularProblem& problem, const PauliSum& pauli) {
  const auto& ints = problem.ints;
  nlohmann::json h1 = nlohmann::json::array();
  for (int p = 0; p < kSpinOrbitals; ++p) {
    nlohmann::json row = nlohmann::json::array();
    for (int q = 0; q < kSpinOrbitals; ++q) row.push_back(number(ints.h1(p, q)));
    h1.push_back(std::move(row));
  }
  nlohmann::json h2 = nlohmann::json::array();
  for (int p = 0; p < kSpinOrbitals; ++p)
    for (int q = 0; q < kSpinOrbitals; ++q)
      for (int r = 0; r < kSpinOrbitals; ++r)
        for (int s = 0; s < kSpinOrbitals; ++s)
          if (ints.h2(p, q, r, s) != 0.0) h2.push_back({{"index", {p, q, r, s}}, {"value", number(ints.h2(p, q, r, s))}});

  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : kSectorBasis) basis.push_back(std::string(b.label));

  return {
      {"bond_length", number(problem.geometry.bond_length())},
      {"spin_orbital_order", {"1up", "1down", "2up", "2down"}},
      {"h1", {{"index_order", "h1[p][q] multiplies a+_p a_q"}, {"values", h1}}},
      {"h2",
       {{"index_order", "h2[p][q][r][s] multiplies 1/2 a+_p a+_q a_r a_s; equals chemist (ps|qr)"},
        {"nonzero", h2}}},
      {"nuclear_repulsion", number(ints.nuclear_repulsion)},
      {"rhf", {{"electronic_energy", number(problem.rhf.electronic_energy)},
               {"total_energy", number(problem.rhf.total_energy)},
               {"iterations", problem.rhf.iterations}}},
      {"pauli_terms", pauli_to_json(pauli)},
      {"pauli_term_count", pauli.size()},
      {"qudit_basis", basis},
      {"qudit_hamiltonian", matrix_to_json(problem.hamiltonian.matrix)},
  };
}

}  // namespace hehucc
