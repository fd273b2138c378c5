#include "hehucc/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "hehucc/errors.hpp"

namespace hehucc {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_letters(const std::string& letters) {
  for (char c : letters)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw PreconditionError("invalid Pauli letter '" + std::string(1, c) + "'");
}

void check_register(int n) {
  if (n < 1 || n > kMaxDenseQubits)
    throw ResourceError("dense Pauli expansion limited to 1.." + std::to_string(kMaxDenseQubits) + " qubits, got " +
                        std::to_string(n));
}

struct StringMasks {
  std::uint64_t flip = 0;   // X or Y
  std::uint64_t phase = 0;  // Y or Z
  int y_count = 0;
};

StringMasks masks_of(const std::string& letters) {
  const int n = static_cast<int>(letters.size());
  StringMasks m;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - j);
    switch (letters[j]) {
      case 'X': m.flip |= bit; break;
      case 'Y': m.flip |= bit; m.phase |= bit; ++m.y_count; break;
      case 'Z': m.phase |= bit; break;
      default: break;
    }
  }
  return m;
}

// <col ^ flip| P |col> = i^{#Y} (-1)^{popcount(col & phase)}.
cplx string_element(const StringMasks& m, std::uint64_t col) {
  static const cplx powers[4] = {1.0, kI, -1.0, -kI};
  cplx v = powers[m.y_count % 4];
  if (std::popcount(col & m.phase) % 2) v = -v;
  return v;
}

}  // namespace

PauliSum::PauliSum(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1) throw PreconditionError("Pauli register needs at least one qubit");
}

PauliSum PauliSum::identity(int n_qubits, cplx coefficient) {
  PauliSum s(n_qubits);
  s.add(std::string(static_cast<std::size_t>(n_qubits), 'I'), coefficient);
  return s;
}

PauliSum PauliSum::term(std::string letters, cplx coefficient) {
  PauliSum s(static_cast<int>(letters.size()));
  s.add(letters, coefficient);
  return s;
}

std::vector<PauliString> PauliSum::terms() const {
  std::vector<PauliString> out;
  out.reserve(terms_.size());
  for (const auto& [letters, c] : terms_) out.push_back({c, letters});
  return out;
}

cplx PauliSum::coefficient(const std::string& letters) const {
  auto it = terms_.find(letters);
  return it == terms_.end() ? cplx{} : it->second;
}

PauliSum& PauliSum::add(const std::string& letters, cplx coefficient) {
  if (static_cast<int>(letters.size()) != n_) throw PreconditionError("Pauli string length does not match register");
  check_letters(letters);
  terms_[letters] += coefficient;
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_ != n_) throw PreconditionError("register size mismatch");
  for (const auto& [l, c] : other.terms_) terms_[l] += c;
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (other.n_ != n_) throw PreconditionError("register size mismatch");
  for (const auto& [l, c] : other.terms_) terms_[l] -= c;
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scale) {
  for (auto& [l, c] : terms_) c *= scale;
  return *this;
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  if (other.n_ != n_) throw PreconditionError("register size mismatch");
  PauliSum out(n_);
  std::string letters(static_cast<std::size_t>(n_), 'I');
  for (const auto& [la, ca] : terms_)
    for (const auto& [lb, cb] : other.terms_) {
      cplx phase = ca * cb;
      for (int j = 0; j < n_; ++j) {
        auto [ph, letter] = multiply_letters(la[j], lb[j]);
        phase *= ph;
        letters[j] = letter;
      }
      out.terms_[letters] += phase;
    }
  return out;
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
  PauliSum out = *this;
  out += other;
  return out;
}

PauliSum PauliSum::operator-(const PauliSum& other) const {
  PauliSum out = *this;
  out -= other;
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out = *this;
  for (auto& [l, c] : out.terms_) c = std::conj(c);
  return out;
}

PauliSum& PauliSum::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
  return *this;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [l, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

PauliSum operator*(cplx scale, PauliSum sum) {
  sum *= scale;
  return sum;
}

std::pair<cplx, char> multiply_letters(char a, char b) {
  if (a == 'I') return {1.0, b};
  if (b == 'I') return {1.0, a};
  if (a == b) return {1.0, 'I'};
  // Cyclic XY = iZ, YZ = iX, ZX = iY; anticyclic picks up -i.
  auto idx = [](char c) { return c == 'X' ? 0 : c == 'Y' ? 1 : 2; };
  const int ia = idx(a);
  const int ib = idx(b);
  const char third = "XYZ"[3 - ia - ib];
  return {(ib - ia + 3) % 3 == 1 ? kI : -kI, third};
}

PauliSum jw_creation(int mode, int n_qubits) {
  if (mode < 0 || mode >= n_qubits) throw PreconditionError("fermionic mode outside register");
  std::string x(static_cast<std::size_t>(n_qubits), 'I');
  for (int k = 0; k < mode; ++k) x[k] = 'Z';
  std::string y = x;
  x[mode] = 'X';
  y[mode] = 'Y';
  PauliSum s(n_qubits);
  s.add(x, 0.5);
  s.add(y, -0.5 * kI);
  return s;
}

PauliSum jw_annihilation(int mode, int n_qubits) { return jw_creation(mode, n_qubits).adjoint(); }

Eigen::MatrixXcd pauli_to_matrix(const PauliSum& ps) {
  const int n = ps.n_qubits();
  check_register(n);
  const auto dim = static_cast<std::int64_t>(1) << n;
  std::vector<std::pair<StringMasks, cplx>> strings;
  for (const auto& t : ps.terms()) strings.emplace_back(masks_of(t.letters), t.coefficient);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  // Each column is owned by one thread; a string maps column c to one row.
#pragma omp parallel for schedule(static)
  for (std::int64_t col = 0; col < dim; ++col) {
    const auto c = static_cast<std::uint64_t>(col);
    for (const auto& [mask, coeff] : strings)
      m(static_cast<Eigen::Index>(c ^ mask.flip), col) += coeff * string_element(mask, c);
  }
  return m;
}

namespace reference {

Eigen::MatrixXcd pauli_to_matrix(const PauliSum& ps) {
  const int n = ps.n_qubits();
  check_register(n);
  Eigen::Matrix2cd sigma[4];
  sigma[0] << 1, 0, 0, 1;
  sigma[1] << 0, 1, 1, 0;
  sigma[2] << 0, -kI, kI, 0;
  sigma[3] << 1, 0, 0, -1;
  auto pick = [&](char c) -> const Eigen::Matrix2cd& { return sigma[c == 'I' ? 0 : c == 'X' ? 1 : c == 'Y' ? 2 : 3]; };

  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : ps.terms()) {
    Eigen::MatrixXcd acc = pick(t.letters[0]);
    for (int j = 1; j < n; ++j) {
      const auto& s = pick(t.letters[j]);
      Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
      for (Eigen::Index r = 0; r < acc.rows(); ++r)
        for (Eigen::Index c = 0; c < acc.cols(); ++c) next.block<2, 2>(2 * r, 2 * c) = acc(r, c) * s;
      acc = std::move(next);
    }
    total += t.coefficient * acc;
  }
  return total;
}

}  // namespace reference

void apply_pauli_rotation(const std::string& letters, double theta, Eigen::VectorXcd& state) {
  const int n = static_cast<int>(letters.size());
  if (state.size() != (Eigen::Index{1} << n)) throw PreconditionError("state size does not match Pauli string");
  check_letters(letters);
  // exp(-iθP) = cos θ · 1 − i sin θ · P
  const StringMasks m = masks_of(letters);
  const double c = std::cos(theta);
  const cplx s = -kI * std::sin(theta);
  Eigen::VectorXcd out = c * state;
  for (Eigen::Index col = 0; col < state.size(); ++col) {
    const auto u = static_cast<std::uint64_t>(col);
    out[static_cast<Eigen::Index>(u ^ m.flip)] += s * string_element(m, u) * state[col];
  }
  state = std::move(out);
}

}  // namespace hehucc
