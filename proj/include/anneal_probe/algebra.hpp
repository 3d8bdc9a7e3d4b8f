#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace anneal_probe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest register handled by the dense routines unless a caller asks for more.
inline constexpr int kDefaultMaxQubits = 4;

struct PauliTerm {
  double coeff = 0.0;  // rad/ns
  std::string word;    // one of I, X, Y, Z per qubit, qubit 0 leftmost
};

/// Real-weighted sum of Pauli strings on a fixed number of qubits.
///
/// Construction validates every word; an instance is always well formed.
class PauliTermSum {
 public:
  PauliTermSum() = default;
  PauliTermSum(int n_qubits, std::vector<PauliTerm> terms);

  /// Parses one `coeff word` pair per line. Blank lines and `#` comments
  /// are skipped.
  static PauliTermSum parse(int n_qubits, std::string_view text);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  PauliTermSum scaled(double factor) const;
  std::string to_text() const;

  friend bool operator==(const PauliTermSum&, const PauliTermSum&);

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

bool operator==(const PauliTerm& a, const PauliTerm& b);

/// Dense Hermitian operator on 2^n levels.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  /// Throws ContractViolation unless `m` is square, power-of-two sized and
  /// Hermitian within 1e-12 (relative to its largest entry).
  explicit OperatorMatrix(Matrix m);

  static OperatorMatrix zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  int n_qubits() const;
  const Matrix& matrix() const { return m_; }

  /// Largest absolute eigenvalue.
  double spectral_norm() const;

  OperatorMatrix operator+(const OperatorMatrix& o) const;
  OperatorMatrix operator-(const OperatorMatrix& o) const;
  OperatorMatrix operator*(double s) const;
  friend OperatorMatrix operator*(double s, const OperatorMatrix& m) { return m * s; }

 private:
  Matrix m_;
};

/// Ascending eigenvalues with orthonormal eigenvectors stored as columns.
/// Each eigenvector has its largest-magnitude component real and positive
/// (first such index on ties).
struct EigenSystem {
  std::vector<double> energies;
  Matrix states;

  int size() const { return static_cast<int>(energies.size()); }
  Vector state(int i) const { return states.col(i); }
  /// E_l - E_k.
  double gap(int k, int l) const { return energies.at(l) - energies.at(k); }
  /// Throws DegeneracyError if level i is within `tol` of a neighbour.
  void require_nondegenerate(int i, double tol = 1e-9) const;
};

/// Single-qubit Pauli matrix for 'I', 'X', 'Y' or 'Z'.
Matrix pauli(char p);

/// Dense matrix of a Pauli string, qubit 0 being the most significant factor.
Matrix pauli_string_matrix(std::string_view word);

OperatorMatrix to_matrix(const PauliTermSum& p, int max_qubits = kDefaultMaxQubits);

EigenSystem eigensystem(const OperatorMatrix& h);
/// Checks Hermiticity first; throws ContractViolation otherwise.
EigenSystem eigensystem(const Matrix& h);

/// Pauli coefficients Tr(P h)/2^n of a Hermitian matrix, zero terms dropped.
PauliTermSum pauli_decompose(const Matrix& h, double drop_below = 0.0);

}  // namespace anneal_probe
