#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "anneal_probe/analytics.hpp"
#include "anneal_probe/errors.hpp"
#include "anneal_probe/estimate.hpp"
#include "anneal_probe/oracles.hpp"

using namespace anneal_probe;

namespace {
bool contains(const std::vector<double>& v, double x, double tol = 1e-12) {
  return std::any_of(v.begin(), v.end(), [&](double y) { return std::abs(y - x) <= tol; });
}
}  // namespace

TEST_CASE("ground truth for the single-qubit model") {
  const AnnealModel m = case_preset(CaseLabel::A).make(30.0, 0.3);
  const GroundTruth g = ground_truth(m);
  CHECK(g.gap == doctest::Approx(0.74).epsilon(1e-14));
  CHECK(g.matrix_element == doctest::Approx(0.2 / (0.37 * 30.0)).epsilon(1e-12));
  CHECK(g.criterion == doctest::Approx(0.0329).epsilon(1e-2));

  const auto ref = oracle::two_level(0.35, 0.12, -0.5 / 30.0, 0.4 / 30.0);
  CHECK(std::abs(g.matrix_element - ref.element) <= 1e-12);

  AnnealModel commuting = m;
  commuting.problem = single_qubit_driver(0.6);
  CHECK(ground_truth(commuting).matrix_element <= 1e-15);
}

TEST_CASE("ground truth for the two-qubit model against the Jacobi oracle") {
  const AnnealModel m = case_preset(CaseLabel::D).make(10.0, 0.5);
  const GroundTruth g = ground_truth(m);
  const auto h = oracle::real_pauli_matrix(2, {{0.25, "XI"}, {0.275, "IX"}, {0.25, "ZZ"}, {0.15, "ZI"}});
  const auto hd = oracle::real_pauli_matrix(2, {{-0.05, "XI"}, {-0.055, "IX"}, {0.05, "ZZ"}, {0.03, "ZI"}});
  const auto es = oracle::jacobi_eigen(h);
  double el = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) el += es.vectors[1][i] * hd(i, j) * es.vectors[0][j];
  CHECK(std::abs(g.gap - (es.values[1] - es.values[0])) <= 1e-10);
  CHECK(std::abs(g.matrix_element - std::abs(el)) <= 1e-10);
}

TEST_CASE("degenerate levels make the ground truth undefined") {
  AnnealModel m = case_preset(CaseLabel::D).make(10.0, 0.5);
  m.driver = PauliTermSum(2, {{0.0, "XI"}});
  m.problem = PauliTermSum(2, {{1.0, "ZI"}});
  CHECK_THROWS_AS(ground_truth(m), DegeneracyError);
}

TEST_CASE("hyperbola and rotating-wave formulas") {
  RwaParameters p{0.74, 0.0270270, 0.84};
  CHECK(omega_ana(p) == doctest::Approx(0.103587).epsilon(1e-5));
  p.omega = 0.74;
  CHECK(rabi_alpha(p) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rabi_probability(p, 50.0) == doctest::Approx(0.5 * (1 - std::cos(0.0270270 * 50.0))).epsilon(1e-12));
  p.lambda_tilde = 0.0;
  CHECK(rabi_alpha(p) == 0.0);
  CHECK(rabi_probability(p, 50.0) == 0.0);
  p.Delta = 0.0;
  CHECK_THROWS_AS(rabi_probability(p, 1.0), PreconditionError);

  const AnnealModel m = case_preset(CaseLabel::A).make(30.0, 0.3);
  CHECK(omega_ana(0, 1, m, 0.74) == doctest::Approx(m.lambda() * 0.2 / (0.37 * 30)).epsilon(1e-12));
}

TEST_CASE("five non-adiabatic modes") {
  const auto modes = nonadiabatic_modes(RwaParameters{0.74, 0.027, 0.74});
  for (double x : {0.0, 0.027, 0.713, 0.74, 0.767}) CHECK(contains(modes, x));
  const auto free = nonadiabatic_modes(RwaParameters{0.74, 0.0, 0.8});
  for (double x : {0.0, 0.06, 0.74, 0.8, 0.86}) CHECK(contains(free, x));
}

TEST_CASE("perturbative frequencies") {
  const AnnealModel m = case_preset(CaseLabel::A).make(30.0, 0.3);
  const auto first = perturbative_modes(m, 0.74, 1);
  CHECK(contains(first, 0.0));
  CHECK(contains(first, 1.48));
  CHECK(contains(perturbative_modes(m, 0.37, 2), 0.0));
  CHECK_THROWS_AS(perturbative_modes(m, 0.74, 3), ContractViolation);
}

TEST_CASE("non-adiabatic amplitude diagnostic") {
  const AnnealModel m = case_preset(CaseLabel::A).make(30.0, 0.3);
  const AnnealModel slow = case_preset(CaseLabel::A).make(300.0, 0.3);
  CHECK(std::abs(a_mn_diagnostic(m, m.t1)) == doctest::Approx(0.0329).epsilon(1e-2));
  CHECK(std::abs(a_mn_diagnostic(slow, slow.t1)) == doctest::Approx(std::abs(a_mn_diagnostic(m, m.t1)) / 10).epsilon(1e-12));
}

TEST_CASE("estimates from a fit") {
  const AnnealModel m = case_preset(CaseLabel::A).make(30.0, 0.3);
  const GroundTruth g = ground_truth(m);
  HyperbolaFit fit;
  fit.a = m.lambda() * g.matrix_element;
  fit.Delta = g.gap;
  fit.accepted = true;
  const AdiabaticEstimate e = estimate_from_fit(fit, m, 0.0015, 0.003);
  CHECK(e.rel_err_me <= 1e-14);
  CHECK(e.rel_err_gap == 0.0);
  CHECK(e.resolution_me == doctest::Approx(0.0015 / m.lambda()));
  fit.accepted = false;
  CHECK_THROWS_AS(estimate_from_fit(fit, m, 0.0015, 0.003), UnidentifiableError);

  const std::vector<DispersionPoint> pts{{0.70, 0.05, 1}, {0.74, 0.03, 1}, {0.78, 0.05, 1}};
  const RawEstimate raw = raw_estimate(pts, m);
  CHECK(raw.gap_est == 0.74);
  CHECK(raw.matrix_element_est == doctest::Approx(0.03 / m.lambda()));
}
