#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anneal_probe/dynamics.hpp"
#include "anneal_probe/errors.hpp"

using namespace anneal_probe;

namespace {
QuantumState plus() {
  QuantumState s = QuantumState::basis(2, 0);
  s.amplitudes(1) = 1.0;
  s.amplitudes /= std::sqrt(2.0);
  return s;
}
}  // namespace

TEST_CASE("unitary evolution of eigenstates and flips") {
  const auto hz = TimeDependentOperator::constant(0.5 * pauli('Z'));
  const QuantumState zero = QuantumState::basis(2, 0);
  const QuantumState out = evolve_unitary(hz, zero, 0.0, 2 * std::numbers::pi / 0.5, 1e-3);
  CHECK(fidelity(out, zero) >= 1 - 1e-8);

  const auto hx = TimeDependentOperator::constant(0.5 * pauli('X'));
  const QuantumState flip = evolve_unitary(hx, zero, 0.0, std::numbers::pi, 1e-3);
  CHECK(fidelity(flip, QuantumState::basis(2, 1)) >= 1 - 1e-6);

  const QuantumState same = evolve_unitary(hx, plus(), 3.0, 3.0, 1e-3);
  CHECK((same.amplitudes - plus().amplitudes).norm() == 0.0);
}

TEST_CASE("norm and energy are conserved") {
  Matrix h = 0.3 * pauli('X') + 0.2 * pauli('Z');
  const QuantumState out = evolve_unitary(TimeDependentOperator::constant(h), plus(), 0.0, 500.0, 0.01);
  CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const double e0 = plus().amplitudes.dot(h * plus().amplitudes).real();
  const double e1 = out.amplitudes.dot(h * out.amplitudes).real();
  CHECK(std::abs(e1 - e0) <= 1e-9);
}

TEST_CASE("oversized steps are refused") {
  const auto h = TimeDependentOperator::constant(10.0 * pauli('X'));
  CHECK_THROWS_AS(evolve_unitary(h, plus(), 0.0, 100.0, 1.0), StepSizeError);
}

TEST_CASE("pure dephasing has a closed form") {
  const double kappa = 0.01;
  const Matrix jump = std::sqrt(kappa) * pauli('Z');
  const std::vector<Matrix> jumps{jump};
  const auto zero_h = TimeDependentOperator::constant(Matrix::Zero(2, 2));
  const DensityState rho0 = DensityState::from_pure(plus());
  const DensityState rho = evolve_lindblad(zero_h, jumps, rho0, 0.0, 1.0 / (2 * kappa), 0.05);
  CHECK(std::abs(rho.rho(0, 1)) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-9));
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));

  const DensityState same = evolve_lindblad(zero_h, jumps, rho0, 2.0, 2.0, 0.05);
  CHECK((same.rho - rho0.rho).norm() == 0.0);
}

TEST_CASE("closed-system lindblad matches unitary evolution") {
  const auto h = TimeDependentOperator::constant(0.3 * pauli('X') + 0.2 * pauli('Z'));
  const QuantumState psi = evolve_unitary(h, plus(), 0.0, 40.0, 0.01);
  const DensityState rho = evolve_lindblad(h, {}, DensityState::from_pure(plus()), 0.0, 40.0, 0.01);
  CHECK(trace_distance(rho.rho, DensityState::from_pure(psi).rho) <= 1e-9);
}

TEST_CASE("sampling visits every sample with valid states") {
  const auto h = TimeDependentOperator::constant(0.3 * pauli('X'));
  const std::vector<Matrix> jumps{std::sqrt(0.05) * pauli('Z')};
  std::size_t seen = 0;
  sample_lindblad(h, jumps, DensityState::from_pure(plus()), 0.0, 0.5, 200, 0.01,
                  [&](std::size_t j, const Matrix& rho) {
                    CHECK(j == seen++);
                    DensityState{rho}.check_invariants();
                  });
  CHECK(seen == 200);

  std::vector<double> p0;
  sample_unitary(h, QuantumState::basis(2, 0), 0.0, 0.25, 100, 0.01,
                 [&](std::size_t, const Vector& psi) { p0.push_back(std::norm(psi(0))); });
  for (std::size_t j = 0; j < p0.size(); ++j) CHECK(p0[j] == doctest::Approx(std::pow(std::cos(0.3 * 0.25 * j), 2)).epsilon(1e-9));
}

TEST_CASE("default step rule") {
  CHECK(default_time_step(1.0) == doctest::Approx(0.01));
  CHECK(default_time_step(100.0) == doctest::Approx(5e-4));
}
