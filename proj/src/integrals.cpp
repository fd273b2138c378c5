#include "hehucc/integrals.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hehucc/errors.hpp"

#ifndef HEHUCC_DATA_DIR
#define HEHUCC_DATA_DIR "data"
#endif

namespace hehucc {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Primitive integrals over unnormalized s Gaussians exp(-a|r-A|²).

double prim_overlap(double a, const Vec3& A, double b, const Vec3& B) {
  const double p = a + b;
  return std::pow(kPi / p, 1.5) * std::exp(-a * b / p * (A - B).squaredNorm());
}

double prim_kinetic(double a, const Vec3& A, double b, const Vec3& B) {
  const double p = a + b;
  const double mu = a * b / p;
  const double ab2 = (A - B).squaredNorm();
  return mu * (3.0 - 2.0 * mu * ab2) * prim_overlap(a, A, b, B);
}

double prim_nuclear(double a, const Vec3& A, double b, const Vec3& B, const Vec3& C, int charge) {
  const double p = a + b;
  const Vec3 P = (a * A + b * B) / p;
  return -charge * 2.0 * kPi / p * std::exp(-a * b / p * (A - B).squaredNorm()) *
         boys_f0(p * (P - C).squaredNorm());
}

double prim_eri(double a, const Vec3& A, double b, const Vec3& B, double c, const Vec3& C, double d,
                const Vec3& D) {
  const double p = a + b;
  const double q = c + d;
  const Vec3 P = (a * A + b * B) / p;
  const Vec3 Q = (c * C + d * D) / q;
  const double pref = 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q));
  return pref * std::exp(-a * b / p * (A - B).squaredNorm() - c * d / q * (C - D).squaredNorm()) *
         boys_f0(p * q / (p + q) * (P - Q).squaredNorm());
}

template <class Prim>
double contract(const GaussianShell& s1, const GaussianShell& s2, Prim&& prim) {
  double sum = 0.0;
  for (std::size_t i = 0; i < s1.size(); ++i)
    for (std::size_t j = 0; j < s2.size(); ++j)
      sum += s1.coefficients[i] * s1.norms[i] * s2.coefficients[j] * s2.norms[j] *
             prim(s1.exponents[i], s2.exponents[j]);
  return sum;
}

}  // namespace

BasisLibrary parse_basis_library(const std::string& text) {
  BasisLibrary lib;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    double exponent = 0.0;
    double coefficient = 0.0;
    if (fields >> exponent) {
      if (current.empty())
        throw BasisFileError("line " + std::to_string(line_no) + ": primitive before element symbol");
      if (!(fields >> coefficient) || !(exponent > 0.0))
        throw BasisFileError("line " + std::to_string(line_no) + ": expected 'exponent coefficient'");
      auto& rec = lib[current];
      if (rec.exponents.size() == 3)
        throw BasisFileError("line " + std::to_string(line_no) + ": more than 3 primitives for " + current);
      rec.exponents.push_back(exponent);
      rec.coefficients.push_back(coefficient);
    } else {
      if (!current.empty() && lib[current].exponents.size() != 3)
        throw BasisFileError("element " + current + " has fewer than 3 primitives");
      current = line;
      if (lib.contains(current)) throw BasisFileError("duplicate element " + current);
      lib[current] = {};
    }
  }
  if (!current.empty() && lib[current].exponents.size() != 3)
    throw BasisFileError("element " + current + " has fewer than 3 primitives");
  return lib;
}

BasisLibrary load_basis_library(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw BasisFileError("cannot open basis file " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_basis_library(buf.str());
}

std::filesystem::path default_basis_path() {
  if (const char* env = std::getenv("HEHUCC_BASIS_FILE"); env && *env) return env;
  return std::filesystem::path(HEHUCC_DATA_DIR) / "sto3g.basis";
}

const char* element_symbol(int charge) {
  switch (charge) {
    case 1: return "H";
    case 2: return "He";
    default: return nullptr;
  }
}

GaussianShell make_shell(const Vec3& center, const ElementBasis& data) {
  if (data.exponents.empty() || data.exponents.size() != data.coefficients.size())
    throw PreconditionError("shell needs equal, nonzero numbers of exponents and coefficients");
  GaussianShell s{center, data.exponents, data.coefficients, {}};
  for (double a : s.exponents) {
    if (!(a > 0.0)) throw PreconditionError("Gaussian exponents must be positive");
    s.norms.push_back(std::pow(2.0 * a / kPi, 0.75));
  }
  const double self = contract(s, s, [&](double a, double b) { return prim_overlap(a, center, b, center); });
  const double scale = 1.0 / std::sqrt(self);
  for (double& n : s.norms) n *= scale;
  return s;
}

std::vector<GaussianShell> build_sto3g_basis(const MoleculeGeometry& geometry, const BasisLibrary& library) {
  std::vector<GaussianShell> basis;
  for (const auto& n : geometry.nuclei()) {
    const char* sym = element_symbol(n.charge);
    if (!sym) throw UnsupportedElementError("no STO-3G data for Z=" + std::to_string(n.charge));
    auto it = library.find(sym);
    if (it == library.end()) throw UnsupportedElementError(std::string("basis file has no entry for ") + sym);
    basis.push_back(make_shell(n.position, it->second));
  }
  return basis;
}

double boys_f0(double x) {
  if (!std::isfinite(x) || x < 0.0) throw DomainError("boys_f0 requires finite x >= 0");
  if (x < 1e-6) return 1.0 - x / 3.0 + x * x / 10.0 - x * x * x / 42.0;
  const double r = std::sqrt(x);
  return 0.5 * std::sqrt(kPi / x) * std::erf(r);
}

OneElectronIntegrals one_electron_integrals(const std::vector<GaussianShell>& basis,
                                            const MoleculeGeometry& geometry) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  OneElectronIntegrals out;
  out.overlap = Eigen::MatrixXd::Zero(n, n);
  out.kinetic = Eigen::MatrixXd::Zero(n, n);
  out.nuclear = Eigen::MatrixXd::Zero(n, n);
  for (auto& d : out.dipole) d = Eigen::MatrixXd::Zero(n, n);

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& si = basis[i];
      const auto& sj = basis[j];
      const double s = contract(si, sj, [&](double a, double b) { return prim_overlap(a, si.center, b, sj.center); });
      const double t = contract(si, sj, [&](double a, double b) { return prim_kinetic(a, si.center, b, sj.center); });
      double v = 0.0;
      for (const auto& nuc : geometry.nuclei())
        v += contract(si, sj, [&](double a, double b) {
          return prim_nuclear(a, si.center, b, sj.center, nuc.position, nuc.charge);
        });
      // <a|r|b> = P * S_ab with P the Gaussian product centre.
      Vec3 r = Vec3::Zero();
      for (std::size_t k = 0; k < si.size(); ++k)
        for (std::size_t l = 0; l < sj.size(); ++l) {
          const double a = si.exponents[k];
          const double b = sj.exponents[l];
          const Vec3 P = (a * si.center + b * sj.center) / (a + b);
          r += si.coefficients[k] * si.norms[k] * sj.coefficients[l] * sj.norms[l] *
               prim_overlap(a, si.center, b, sj.center) * P;
        }
      out.overlap(i, j) = out.overlap(j, i) = s;
      out.kinetic(i, j) = out.kinetic(j, i) = t;
      out.nuclear(i, j) = out.nuclear(j, i) = v;
      for (int c = 0; c < 3; ++c) out.dipole[c](i, j) = out.dipole[c](j, i) = r[c];
    }
  }
  return out;
}

Tensor4 two_electron_integrals(const std::vector<GaussianShell>& basis) {
  const int n = static_cast<int>(basis.size());
  Tensor4 eri(n);
  // One evaluation per permutational orbit, then scattered to all 8 slots.
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const auto& A = basis[p];
          const auto& B = basis[q];
          const auto& C = basis[r];
          const auto& D = basis[s];
          double v = 0.0;
          for (std::size_t i = 0; i < A.size(); ++i)
            for (std::size_t j = 0; j < B.size(); ++j)
              for (std::size_t k = 0; k < C.size(); ++k)
                for (std::size_t l = 0; l < D.size(); ++l)
                  v += A.coefficients[i] * A.norms[i] * B.coefficients[j] * B.norms[j] * C.coefficients[k] *
                       C.norms[k] * D.coefficients[l] * D.norms[l] *
                       prim_eri(A.exponents[i], A.center, B.exponents[j], B.center, C.exponents[k], C.center,
                                D.exponents[l], D.center);
          for (auto [a, b] : {std::pair{p, q}, std::pair{q, p}})
            for (auto [c, d] : {std::pair{r, s}, std::pair{s, r}}) {
              eri(a, b, c, d) = v;
              eri(c, d, a, b) = v;
            }
        }
  return eri;
}

double nuclear_repulsion(const MoleculeGeometry& geometry) {
  const auto& nuc = geometry.nuclei();
  double e = 0.0;
  for (std::size_t a = 0; a < nuc.size(); ++a)
    for (std::size_t b = a + 1; b < nuc.size(); ++b) {
      const double r = (nuc[a].position - nuc[b].position).norm();
      if (r < 1e-10) throw SingularityError("coincident nuclei");
      e += nuc[a].charge * nuc[b].charge / r;
    }
  return e;
}

AOIntegralSet compute_ao_integrals(const std::vector<GaussianShell>& basis, const MoleculeGeometry& geometry) {
  if (basis.empty()) throw PreconditionError("empty basis");
  auto one = one_electron_integrals(basis, geometry);
  AOIntegralSet ao;
  ao.overlap = std::move(one.overlap);
  ao.kinetic = std::move(one.kinetic);
  ao.nuclear = std::move(one.nuclear);
  ao.dipole = std::move(one.dipole);
  ao.eri = two_electron_integrals(basis);
  ao.nuclear_repulsion = nuclear_repulsion(geometry);
  return ao;
}

}  // namespace hehucc
