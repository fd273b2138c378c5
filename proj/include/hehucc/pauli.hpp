#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hehucc {

using cplx = std::complex<double>;

struct PauliString {
  cplx coefficient;
  std::string letters;  // one of I, X, Y, Z per qubit; qubit 0 first
};

/// Weighted sum of Pauli strings on a fixed register. Terms with equal letter
/// patterns are merged on insertion.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits);

  static PauliSum identity(int n_qubits, cplx coefficient = 1.0);
  static PauliSum term(std::string letters, cplx coefficient = 1.0);

  int n_qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  std::vector<PauliString> terms() const;
  cplx coefficient(const std::string& letters) const;

  PauliSum& add(const std::string& letters, cplx coefficient);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx scale);
  PauliSum operator*(const PauliSum& other) const;
  PauliSum operator+(const PauliSum& other) const;
  PauliSum operator-(const PauliSum& other) const;

  PauliSum adjoint() const;

  /// Drops terms with |coefficient| < tol.
  PauliSum& prune(double tol = 1e-12);

  /// Every string is self-adjoint, so the sum is Hermitian iff all
  /// coefficients are real.
  bool is_hermitian(double tol = 1e-12) const;

 private:
  int n_;
  std::map<std::string, cplx> terms_;
};

PauliSum operator*(cplx scale, PauliSum sum);

/// Product of two single-qubit Pauli letters: returns (phase, letter).
std::pair<cplx, char> multiply_letters(char a, char b);

/// Jordan-Wigner images with Z strings on lower-indexed qubits:
/// a†_j = Z_0…Z_{j-1} (X_j − iY_j)/2, a_j = Z_0…Z_{j-1} (X_j + iY_j)/2.
PauliSum jw_creation(int mode, int n_qubits);
PauliSum jw_annihilation(int mode, int n_qubits);

/// Largest register pauli_to_matrix will expand.
inline constexpr int kMaxDenseQubits = 14;

/// Dense 2^M × 2^M matrix. Basis index b has qubit j in bit (M-1-j), so qubit 0
/// is the most significant bit. OpenMP-parallel over columns.
Eigen::MatrixXcd pauli_to_matrix(const PauliSum& ps);

namespace reference {
/// Serial Kronecker-product expansion; same convention as pauli_to_matrix.
Eigen::MatrixXcd pauli_to_matrix(const PauliSum& ps);
}  // namespace reference

/// Applies exp(-i θ P) for a single Pauli string P to a state vector in place.
void apply_pauli_rotation(const std::string& letters, double theta, Eigen::VectorXcd& state);

}  // namespace hehucc
