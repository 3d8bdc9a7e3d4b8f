#include <doctest.h>

#include <numbers>
#include <sstream>

#include "anneal_probe/errors.hpp"
#include "anneal_probe/estimate.hpp"
#include "anneal_probe/protocol.hpp"

using namespace anneal_probe;

namespace {
AnnealModel case_a() { return case_preset(CaseLabel::A).make(30.0, 0.3).with_omega(0.74); }
}  // namespace

TEST_CASE("single protocol runs") {
  const AnnealModel m = case_a();
  CHECK(run_once(m, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  const double rabi = m.lambda() * 0.2 / (0.37 * 30.0);
  CHECK(rabi == doctest::Approx(0.0270270).epsilon(1e-6));
  CHECK(run_once(m, std::numbers::pi / rabi) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(run_once(m.with_lambda_ratio(0.0), 80.0) <= 1e-10);
}

TEST_CASE("tau sweep agrees with independent runs") {
  const AnnealModel m = case_a();
  const TauGrid grid{256, 0.5};
  const ProtocolResult r = run_tau_sweep(m, grid);
  REQUIRE(r.probs.size() == 256);
  for (std::size_t j = 0; j < 256; j += 85) CHECK(r.probs[j] == doctest::Approx(run_once(m, grid.tau(j))).epsilon(1e-9));

  const ProtocolResult zero = run_tau_sweep(m.with_lambda_ratio(0.0), grid);
  for (double p : zero.probs) CHECK(p <= 1e-10);
}

TEST_CASE("full-evolution and open runs reuse the same drive trajectory") {
  for (CaseLabel label : {CaseLabel::C, CaseLabel::E}) {
    const AnnealModel m0 = case_preset(label).make(10.0, 0.5);
    const AnnealModel m = m0.with_omega(ground_truth(m0).gap);
    const TauGrid grid{256, 0.5};
    const ProtocolResult r = run_tau_sweep(m, grid);
    for (std::size_t j = 0; j < 256; j += 85) CHECK(r.probs[j] == doctest::Approx(run_once(m, grid.tau(j))).epsilon(1e-8));
  }
}

TEST_CASE("resonant series follows the rotating-wave form") {
  const AnnealModel m = case_a();
  const double rabi = m.lambda() * ground_truth(m).matrix_element;
  const TauGrid grid{400, 0.5 * std::numbers::pi / rabi / 100.0};
  const ProtocolResult r = run_tau_sweep(m, grid);
  double sq = 0.0;
  for (std::size_t j = 0; j < r.probs.size(); ++j) sq += std::pow(r.probs[j] - 0.5 * (1 - std::cos(rabi * r.taus[j])), 2);
  CHECK(std::sqrt(sq / r.probs.size()) <= 0.02);
}

TEST_CASE("omega sweeps") {
  const AnnealModel m = case_a();
  const TauGrid grid{256, 1.0};
  const std::vector<double> one{0.74};
  const auto single = run_omega_sweep(m, one, grid);
  REQUIRE(single.size() == 1);
  CHECK(single[0].probs == run_tau_sweep(m, grid).probs);

  const AnnealModel d = case_preset(CaseLabel::D).make(10.0, 0.5);
  const auto ws = omega_grid(ground_truth(d).gap, 0.3, 5);
  SweepOptions par;
  par.threads = 3;
  const auto swept = run_omega_sweep(d, ws, grid, par);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    CHECK(swept[i].omega == ws[i]);
    for (std::size_t j : {std::size_t{0}, std::size_t{127}, std::size_t{255}}) {
      CHECK(std::abs(swept[i].probs[j] - run_tau_sweep(d.with_omega(ws[i]), grid).probs[j]) <= 1e-12);
    }
  }
}

TEST_CASE("grids") {
  const auto g = omega_grid(1.0, 0.3, 51);
  CHECK(g.front() == doctest::Approx(0.7));
  CHECK(g.back() == doctest::Approx(1.3));
  CHECK(g[25] == doctest::Approx(1.0));
  CHECK_THROWS_AS((TauGrid{0, 1.0}).validate(), ContractViolation);
  CHECK_THROWS_AS((TauGrid{4096, 0.0}).validate(), ContractViolation);

  const TauGrid t = design_tau_grid(0.027, 1.2);
  CHECK(t.n_samples >= 4096);
  CHECK(t.dtau <= std::numbers::pi / (4.0 * 1.2) + 1e-15);
  CHECK(t.tau_max() >= 8 * 2 * std::numbers::pi / 0.027 - 1e-9);
}

TEST_CASE("protocol csv") {
  ProtocolResult r{0.74, 9.0, {0.0, 1.0}, {0.0, 0.25}};
  std::ostringstream os;
  const std::vector<ProtocolResult> rs{r};
  write_protocol_csv(os, rs);
  CHECK(os.str().rfind("omega,t1,tau,probability\n", 0) == 0);
  CHECK(os.str().find("0.74,9,1,0.25") != std::string::npos);
}
