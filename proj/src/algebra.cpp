#include "anneal_probe/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "anneal_probe/errors.hpp"

namespace anneal_probe {

namespace {

constexpr double kHermitianTol = 1e-12;

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

double hermitian_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void fix_phase(Matrix& states) {
  for (Eigen::Index c = 0; c < states.cols(); ++c) {
    auto col = states.col(c);
    const double largest = col.cwiseAbs().maxCoeff();
    Eigen::Index pick = 0;
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) >= largest * (1.0 - 1e-12)) {
        pick = r;
        break;
      }
    }
    const Complex z = col(pick);
    col *= std::conj(z) / std::abs(z);
    col(pick) = Complex(col(pick).real(), 0.0);
  }
}

}  // namespace

PauliTermSum::PauliTermSum(int n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
  if (n_qubits_ <= 0) {
    throw MalformedOperatorError("Pauli sum needs at least one qubit");
  }
  for (const auto& t : terms_) {
    if (static_cast<int>(t.word.size()) != n_qubits_) {
      throw MalformedOperatorError("Pauli word '" + t.word + "' has length " +
                                   std::to_string(t.word.size()) + ", expected " +
                                   std::to_string(n_qubits_));
    }
    if (t.word.find_first_not_of("IXYZ") != std::string::npos) {
      throw MalformedOperatorError("Pauli word '" + t.word + "' contains letters outside IXYZ");
    }
    if (!std::isfinite(t.coeff)) {
      throw MalformedOperatorError("non-finite coefficient on word '" + t.word + "'");
    }
  }
}

PauliTermSum PauliTermSum::parse(int n_qubits, std::string_view text) {
  std::vector<PauliTerm> terms;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    PauliTerm term;
    if (!(ls >> term.coeff)) {
      ls.clear();
      std::string rest;
      if (ls >> rest) {
        throw MalformedOperatorError("line " + std::to_string(lineno) +
                                     ": expected `coeff word`, got '" + line + "'");
      }
      continue;
    }
    if (!(ls >> term.word)) {
      throw MalformedOperatorError("line " + std::to_string(lineno) + ": missing Pauli word");
    }
    std::string extra;
    if (ls >> extra) {
      throw MalformedOperatorError("line " + std::to_string(lineno) + ": trailing token '" +
                                   extra + "'");
    }
    terms.push_back(std::move(term));
  }
  return PauliTermSum(n_qubits, std::move(terms));
}

PauliTermSum PauliTermSum::scaled(double factor) const {
  auto out = *this;
  for (auto& t : out.terms_) t.coeff *= factor;
  return out;
}

std::string PauliTermSum::to_text() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : terms_) out << t.coeff << ' ' << t.word << '\n';
  return out.str();
}

bool operator==(const PauliTerm& a, const PauliTerm& b) {
  return a.coeff == b.coeff && a.word == b.word;
}

bool operator==(const PauliTermSum& a, const PauliTermSum& b) {
  return a.n_qubits_ == b.n_qubits_ && a.terms_ == b.terms_;
}

OperatorMatrix::OperatorMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || !is_power_of_two(m_.rows())) {
    throw ContractViolation("operator must be square with power-of-two dimension, got " +
                            std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (hermitian_defect(m_) > kHermitianTol * scale) {
    throw ContractViolation("operator is not Hermitian");
  }
}

OperatorMatrix OperatorMatrix::zero(int dim) { return OperatorMatrix(Matrix::Zero(dim, dim)); }

int OperatorMatrix::n_qubits() const {
  int n = 0;
  while ((1 << n) < dim()) ++n;
  return n;
}

double OperatorMatrix::spectral_norm() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& o) const {
  return OperatorMatrix(Matrix(m_ + o.m_));
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& o) const {
  return OperatorMatrix(Matrix(m_ - o.m_));
}

OperatorMatrix OperatorMatrix::operator*(double s) const { return OperatorMatrix(Matrix(m_ * s)); }

void EigenSystem::require_nondegenerate(int i, double tol) const {
  if (i < 0 || i >= size()) {
    throw RangeError("level " + std::to_string(i) + " outside spectrum of size " +
                     std::to_string(size()));
  }
  const bool below = i > 0 && energies[i] - energies[i - 1] < tol;
  const bool above = i + 1 < size() && energies[i + 1] - energies[i] < tol;
  if (below || above) {
    throw DegeneracyError("level " + std::to_string(i) + " is degenerate within " +
                          std::to_string(tol));
  }
}

Matrix pauli(char p) {
  Matrix m(2, 2);
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw MalformedOperatorError(std::string("unknown Pauli letter '") + p + "'");
  }
  return m;
}

Matrix pauli_string_matrix(std::string_view word) {
  if (word.empty()) throw MalformedOperatorError("empty Pauli word");
  Matrix out = pauli(word[0]);
  for (std::size_t q = 1; q < word.size(); ++q) {
    const Matrix p = pauli(word[q]);
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) {
        next.block<2, 2>(2 * r, 2 * c) = out(r, c) * p;
      }
    }
    out = std::move(next);
  }
  return out;
}

OperatorMatrix to_matrix(const PauliTermSum& p, int max_qubits) {
  if (p.n_qubits() > max_qubits) {
    throw MalformedOperatorError("operator on " + std::to_string(p.n_qubits()) +
                                 " qubits exceeds the dense limit of " +
                                 std::to_string(max_qubits));
  }
  const int dim = 1 << p.n_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : p.terms()) {
    if (static_cast<int>(t.word.size()) != p.n_qubits()) {
      throw MalformedOperatorError("Pauli word length mismatch: '" + t.word + "'");
    }
    m += t.coeff * pauli_string_matrix(t.word);
  }
  return OperatorMatrix(std::move(m));
}

EigenSystem eigensystem(const OperatorMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw ContractViolation("eigendecomposition failed");
  }
  EigenSystem out;
  out.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  out.states = es.eigenvectors();
  fix_phase(out.states);
  return out;
}

EigenSystem eigensystem(const Matrix& h) { return eigensystem(OperatorMatrix(h)); }

PauliTermSum pauli_decompose(const Matrix& h, double drop_below) {
  const Eigen::Index dim = h.rows();
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || h.cols() != dim) {
    throw ContractViolation("pauli_decompose needs a square power-of-two matrix");
  }
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliTerm> terms;
  const std::size_t count = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < count; ++code) {
    std::string word(n, 'I');
    std::size_t c = code;
    for (int q = n - 1; q >= 0; --q) {
      word[q] = kLetters[c & 3];
      c >>= 2;
    }
    const Complex coeff = (pauli_string_matrix(word) * h).trace() / static_cast<double>(dim);
    if (std::abs(coeff.real()) > drop_below) terms.push_back({coeff.real(), word});
  }
  return PauliTermSum(n, std::move(terms));
}

}  // namespace anneal_probe
