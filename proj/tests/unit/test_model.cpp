#include <doctest.h>

#include <numbers>

#include "anneal_probe/errors.hpp"
#include "anneal_probe/model.hpp"

using namespace anneal_probe;

namespace {
bool close(const Matrix& a, const Matrix& b, double tol) { return (a - b).cwiseAbs().maxCoeff() <= tol; }
AnnealModel case_a(double t_ann = 30.0, double frac = 0.3) { return case_preset(CaseLabel::A).make(t_ann, frac); }
}  // namespace

TEST_CASE("protocol schedule branches") {
  const AnnealModel m = case_a();
  const double tau = 50.0;
  CHECK(schedule_A(m, 0.0, tau) == 1.0);
  CHECK(schedule_A(m, m.t1, tau) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(schedule_A(m, m.t1 + 0.5 * tau, tau) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(schedule_A(m, 2 * m.t1 + tau, tau) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(anneal_schedule(m, m.t_ann) == 0.0);
}

TEST_CASE("annealing hamiltonian") {
  const AnnealModel m = case_a();
  Matrix h0(2, 2);
  h0 << 0, 0.5, 0.5, 0;
  CHECK(close(h_qa_at(m, 0.0).matrix(), h0, 1e-15));
  Matrix h1(2, 2);
  h1 << 0.12, 0.35, 0.35, -0.12;
  CHECK(close(h_qa_at(m, m.t1).matrix(), h1, 1e-15));

  const AnnealModel two = case_preset(CaseLabel::D).make(10.0, 0.5);
  Matrix end = Matrix::Zero(4, 4);
  end.diagonal() << 0.8, -0.2, -0.8, 0.2;
  CHECK(close(h_qa_at(two, two.t_ann).matrix(), end, 1e-15));
}

TEST_CASE("time derivative of the annealing hamiltonian") {
  Matrix expected(2, 2);
  expected << 0.4 / 30.0, -0.5 / 30.0, -0.5 / 30.0, -0.4 / 30.0;
  CHECK(close(hdot_qa(case_a()).matrix(), expected, 1e-16));

  AnnealModel same = case_a();
  same.problem = same.driver;
  CHECK(hdot_qa(same).matrix().cwiseAbs().maxCoeff() == 0.0);

  const AnnealModel two = case_preset(CaseLabel::D).make(10.0, 0.5);
  Matrix hand = Matrix::Zero(4, 4);
  hand.diagonal() << 0.8, -0.2, -0.8, 0.2;
  const double x1 = -0.5, x2 = -0.55;
  hand(0, 2) = hand(2, 0) = hand(1, 3) = hand(3, 1) = x1;
  hand(0, 1) = hand(1, 0) = hand(2, 3) = hand(3, 2) = x2;
  CHECK(close(hdot_qa(two).matrix(), hand / 10.0, 1e-14));
}

TEST_CASE("driven hamiltonian") {
  const AnnealModel m = case_a().with_omega(0.74);
  const double tau = 1000.0;
  const Matrix base = h_qa_at(m, m.t1).matrix();
  const Matrix kick = m.lambda() * hdot_qa(m).matrix();
  CHECK(close(h_total_at(m, 0.5 * m.t1, tau).matrix(), h_qa_at(m, 0.5 * m.t1).matrix(), 0));
  CHECK(close(h_total_at(m, m.t1, tau).matrix(), base + kick, 1e-14));
  CHECK(close(h_total_at(m, m.t1 + std::numbers::pi / 0.74, tau).matrix(), base - kick, 1e-12));
}

TEST_CASE("case presets") {
  const CasePreset a = case_preset(CaseLabel::A);
  CHECK(a.qubits == 1);
  CHECK(a.t_anns.size() == 5);
  CHECK(a.t1_fractions.size() == 9);
  const CasePreset c = case_preset(CaseLabel::C);
  CHECK(c.noise == NoiseMode::Open);
  const AnnealModel mc = c.make(100.0, 0.5);
  REQUIRE(mc.lindblad.size() == 1);
  CHECK(mc.lindblad[0].rate == kDefaultDephasingRate);
  CHECK(case_preset(CaseLabel::D).t_anns == std::vector<double>{10.0, 30.0, 100.0});
  CHECK(case_preset(CaseLabel::F).noise == NoiseMode::Open);
  CHECK(parse_case_label("e") == CaseLabel::E);
  CHECK_THROWS_AS(parse_case_label("G"), ConfigError);
  CHECK(a.make(30.0, 0.3).lambda() == doctest::Approx(1.5));
}

TEST_CASE("model invariants") {
  AnnealModel m = case_a();
  m.t1 = 2 * m.t_ann;
  CHECK_THROWS_AS(m.validate(), ContractViolation);
  m = case_a();
  m.l = 2;
  CHECK_THROWS_AS(m.validate(), ContractViolation);
  m = case_a();
  m.lambda_ratio = -0.1;
  CHECK_THROWS_AS(m.validate(), ContractViolation);
}
