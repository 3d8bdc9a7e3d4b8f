#include <doctest.h>

#include <cmath>

#include "anneal_probe/algebra.hpp"
#include "anneal_probe/errors.hpp"
#include "anneal_probe/oracles.hpp"

using namespace anneal_probe;

namespace {
bool close(const Matrix& a, const Matrix& b, double tol) { return (a - b).cwiseAbs().maxCoeff() <= tol; }
}  // namespace

TEST_CASE("pauli sums expand to dense matrices") {
  Matrix x(2, 2);
  x << 0, 0.5, 0.5, 0;
  CHECK(close(to_matrix(PauliTermSum(1, {{0.5, "X"}})).matrix(), x, 0));

  Matrix xz(2, 2);
  xz << 0.12, 0.35, 0.35, -0.12;
  CHECK(close(to_matrix(PauliTermSum(1, {{0.35, "X"}, {0.12, "Z"}})).matrix(), xz, 1e-15));

  Matrix zz = Matrix::Zero(4, 4);
  zz.diagonal() << 0.5, -0.5, -0.5, 0.5;
  CHECK(close(to_matrix(PauliTermSum(2, {{0.5, "ZZ"}})).matrix(), zz, 0));
}

TEST_CASE("qubit 0 is the leftmost tensor factor") {
  const Matrix zi = pauli_string_matrix("ZI");
  CHECK(zi(0, 0).real() == 1.0);
  CHECK(zi(1, 1).real() == 1.0);
  CHECK(zi(2, 2).real() == -1.0);
}

TEST_CASE("malformed pauli input is rejected") {
  CHECK_THROWS_AS(PauliTermSum(1, {{1.0, "Q"}}), MalformedOperatorError);
  CHECK_THROWS_AS(PauliTermSum(2, {{1.0, "X"}}), MalformedOperatorError);
  CHECK_THROWS_AS(PauliTermSum::parse(1, "0.5 X extra"), MalformedOperatorError);
  CHECK_THROWS_AS(to_matrix(PauliTermSum(5, {{1.0, "XXXXX"}})), MalformedOperatorError);
}

TEST_CASE("text form round trips") {
  const PauliTermSum p(2, {{0.1, "XI"}, {-1.0 / 3.0, "ZZ"}, {2e-9, "IY"}});
  CHECK(PauliTermSum::parse(2, p.to_text()) == p);
  CHECK(PauliTermSum::parse(1, "# comment\n\n0.5 X\n") == PauliTermSum(1, {{0.5, "X"}}));
}

TEST_CASE("non-hermitian matrices are rejected") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(OperatorMatrix{m}, ContractViolation);
  CHECK_THROWS_AS(eigensystem(m), ContractViolation);
}

TEST_CASE("two-level eigensystem") {
  const EigenSystem es = eigensystem(to_matrix(PauliTermSum(1, {{0.35, "X"}, {0.12, "Z"}})));
  CHECK(es.energies[0] == doctest::Approx(-0.37).epsilon(1e-14));
  CHECK(es.energies[1] == doctest::Approx(0.37).epsilon(1e-14));
  CHECK(es.gap(0, 1) == doctest::Approx(0.74).epsilon(1e-14));

  const EigenSystem z = eigensystem(pauli_string_matrix("Z"));
  CHECK(z.energies[0] == -1.0);
  CHECK(std::abs(z.state(0)(1)) == doctest::Approx(1.0));
  CHECK(std::abs(z.state(1)(0)) == doctest::Approx(1.0));
}

TEST_CASE("eigenvector phase convention") {
  const EigenSystem es = eigensystem(to_matrix(PauliTermSum(2, {{0.5, "XI"}, {0.55, "IX"}, {0.3, "ZZ"}})));
  for (int i = 0; i < es.size(); ++i) {
    const Vector v = es.state(i);
    const double largest = v.cwiseAbs().maxCoeff();
    Eigen::Index big = 0;
    while (std::abs(v(big)) < largest * (1 - 1e-12)) ++big;
    CHECK(v(big).imag() == 0.0);
    CHECK(v(big).real() > 0.0);
  }
}

TEST_CASE("two-qubit spectrum matches the Jacobi oracle") {
  const double A = 0.5;
  const PauliTermSum h(2, {{A * 0.5, "XI"}, {A * 0.55, "IX"}, {(1 - A) * 0.5, "ZZ"}, {(1 - A) * 0.3, "ZI"}});
  const EigenSystem es = eigensystem(to_matrix(h));
  const auto ref = oracle::jacobi_eigen(
      oracle::real_pauli_matrix(2, {{A * 0.5, "XI"}, {A * 0.55, "IX"}, {(1 - A) * 0.5, "ZZ"}, {(1 - A) * 0.3, "ZI"}}));
  for (int i = 0; i < 4; ++i) CHECK(std::abs(es.energies[i] - ref.values[i]) <= 1e-10);
  const Matrix hm = to_matrix(h).matrix();
  for (int i = 0; i < 4; ++i) CHECK((hm * es.state(i) - es.energies[i] * es.state(i)).norm() <= 1e-10);
}

TEST_CASE("degenerate levels are reported") {
  const EigenSystem es = eigensystem(to_matrix(PauliTermSum(2, {{1.0, "ZI"}})));
  CHECK_THROWS_AS(es.require_nondegenerate(0), DegeneracyError);
}

TEST_CASE("pauli decomposition inverts expansion") {
  const PauliTermSum p(2, {{0.25, "XY"}, {-0.5, "ZI"}, {0.125, "YY"}});
  const PauliTermSum back = pauli_decompose(to_matrix(p).matrix(), 1e-14);
  CHECK(close(to_matrix(back).matrix(), to_matrix(p).matrix(), 1e-15));
}
