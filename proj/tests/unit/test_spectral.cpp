#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "anneal_probe/errors.hpp"
#include "anneal_probe/oracles.hpp"
#include "anneal_probe/spectral.hpp"

using namespace anneal_probe;

namespace {
constexpr double kPi = std::numbers::pi;

ProtocolResult series(std::size_t n, double dtau, double omega, const std::function<double(double)>& p) {
  ProtocolResult r;
  r.omega = omega;
  for (std::size_t j = 0; j < n; ++j) {
    r.taus.push_back(j * dtau);
    r.probs.push_back(p(j * dtau));
  }
  return r;
}

std::vector<DispersionPoint> hyperbola_points(double a, double delta, std::size_t n = 21) {
  std::vector<DispersionPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = delta * (0.8 + 0.4 * i / (n - 1));
    pts.push_back({w, std::hypot(a, w - delta), 1.0});
  }
  return pts;
}
}  // namespace

TEST_CASE("single tone is located within one resolution bin") {
  const double w = 0.0270270;
  const auto r = series(4096, 1.0, 0.74, [&](double t) { return 0.5 * (1 - std::cos(w * t)); });
  const PowerSpectrum s = power_spectrum(r);
  CHECK(s.resolution == doctest::Approx(2 * kPi / 4096));
  const PeakSet ps = detect_peaks(s);
  REQUIRE(!ps.peaks.empty());
  CHECK(std::abs(ps.peaks.front().Omega - w) <= s.resolution / 2);
}

TEST_CASE("constant series is pure DC") {
  const auto r = series(1024, 0.5, 0.5, [](double) { return 0.3; });
  const PowerSpectrum s = power_spectrum(r);
  CHECK(s.magnitudes[0] == doctest::Approx(0.3 * 512.0 / std::sqrt(2 * kPi)));
  for (std::size_t k = 1; k < s.magnitudes.size(); ++k) CHECK(s.magnitudes[k] <= 1e-12 * s.magnitudes[0]);
  CHECK(detect_peaks(s).peaks.empty());
}

TEST_CASE("magnitudes agree with a direct DFT") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto r = series(256, 0.7, 1.0, [&](double) { return u(rng); });
  const PowerSpectrum s = power_spectrum(r, 1);
  const auto ref = oracle::direct_dft_magnitudes(r.probs, 0.7);
  for (std::size_t k = 0; k < s.magnitudes.size(); ++k) CHECK(std::abs(s.magnitudes[k] - ref[k]) <= 1e-12);
}

TEST_CASE("rotating-wave series has a 2:1 DC to sideband ratio") {
  const double w = 0.04;
  const std::size_t n = 4096;
  const double dtau = 2 * kPi / w * 40 / n;  // 40 full periods
  const auto r = series(n, dtau, 1.0, [&](double t) { return 0.5 * (1 - std::cos(w * t)); });
  const auto two = two_sided_magnitudes(r, 1);
  const std::size_t k = 40;
  CHECK(two[0] / two[k] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(two[n - k] == doctest::Approx(two[k]).epsilon(1e-12));
}

TEST_CASE("non-uniform sampling is rejected") {
  ProtocolResult r{1.0, 0.0, {0.0, 1.0, 2.5}, {0.0, 0.1, 0.2}};
  CHECK_THROWS_AS(power_spectrum(r), ContractViolation);
}

TEST_CASE("peak ordering and window") {
  const double wa = 0.05, wb = 0.11;
  const auto r = series(4096, 1.0, 1.0, [&](double t) { return std::cos(wa * t) + 0.4 * std::cos(wb * t); });
  PeakOptions po;
  po.window = PeakWindow{0.01, 0.5};
  const PeakSet ps = detect_peaks(power_spectrum(r), po);
  REQUIRE(ps.peaks.size() >= 2);
  CHECK(ps.peaks[0].Omega == doctest::Approx(wa).epsilon(2e-3));
  CHECK(ps.peaks[1].Omega == doctest::Approx(wb).epsilon(2e-3));
  CHECK(ps.peaks[1].height / ps.peaks[0].height == doctest::Approx(0.4).epsilon(0.05));

  po.window = PeakWindow{0.3, 0.2};
  CHECK_THROWS_AS(detect_peaks(power_spectrum(r), po), RangeError);
}

TEST_CASE("peak bias stays below a quarter bin") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = 4096;
  const double res = 2 * kPi / n;
  for (int i = 0; i < 20; ++i) {
    const double w = res * (20 + 150 * u(rng)), ph = 2 * kPi * u(rng);
    const auto r = series(n, 1.0, 4 * w, [&](double t) { return 0.5 * (1 - std::cos(w * t + ph)); });
    const PeakSet ps = detect_peaks(power_spectrum(r));
    REQUIRE(!ps.peaks.empty());
    CHECK(std::abs(ps.peaks.front().Omega - w) <= res / 4);
  }
}

TEST_CASE("top-peak dispersion keeps one point per drive frequency") {
  std::vector<PeakSet> sets{{0.7, {{0.05, 2.0}, {0.02, 1.0}}}, {0.8, {}}, {0.9, {{0.04, 1.0}}}};
  const auto pts = dispersion_from_top_peak(sets);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].Omega == 0.05);
  CHECK(pts[1].omega == 0.9);
}

TEST_CASE("branch tracking keeps the longest slope-bounded run") {
  std::vector<DispersionPoint> pts;
  for (int i = 0; i < 21; ++i) {
    const double w = 0.5 + 0.01 * i;
    pts.push_back({w, std::hypot(0.02, w - 0.6), 1.0});
  }
  pts[3].Omega = 0.001;   // isolated resonance of another transition
  pts[19].Omega = 0.3;    // a different line takes over at the edge
  pts[20].Omega = 0.29;
  const auto branch = track_branch(pts, 0.002);
  REQUIRE(branch.size() == 15);
  CHECK(branch.front().omega == doctest::Approx(0.54));
  CHECK(branch.back().omega == doctest::Approx(0.68));
  CHECK(track_branch(std::vector<DispersionPoint>{}, 0.002).empty());
}

TEST_CASE("hyperbola fit") {
  const double a = 0.0270270, delta = 0.74;
  const HyperbolaFit fit = fit_hyperbola(hyperbola_points(a, delta), 1e-3);
  CHECK(fit.accepted);
  CHECK(fit.a == doctest::Approx(a).epsilon(1e-3));
  CHECK(fit.Delta == doctest::Approx(delta).epsilon(1e-3));
  CHECK(fit.at(delta) == doctest::Approx(fit.a));

  std::vector<DispersionPoint> line;
  for (int i = 0; i < 11; ++i) {
    const double w = 0.3 + 0.01 * i;
    line.push_back({w, 2.0 * (w - 0.25), 1.0});
  }
  const double res = 2 * kPi / 4096;
  const HyperbolaFit bad = fit_hyperbola(line, 3 * res);
  CHECK_FALSE(bad.accepted);
  CHECK(bad.rms_residual > 3 * res);

  const auto four = hyperbola_points(a, delta, 4);
  CHECK_THROWS_AS(fit_hyperbola(four, 1e-3), PreconditionError);
}

TEST_CASE("modified selection recovers the hyperbola among distractors") {
  const double a = 0.02, delta = 0.6, res = 2 * kPi / 4096;
  std::vector<PeakSet> sets;
  for (int i = 0; i < 31; ++i) {
    const double w = delta * (0.7 + 0.02 * i);
    PeakSet ps{w, {}};
    const double target = std::hypot(a, w - delta);
    if (i % 3 == 0) {
      ps.peaks = {{0.01, 3.0}, {target, 1.0}, {0.3, 0.5}};
    } else {
      ps.peaks = {{target, 1.0}, {2 * std::abs(w - delta / 2), 0.2}};
    }
    sets.push_back(ps);
  }
  const PeakSelection sel = modified_peak_selection(sets, res);
  CHECK(sel.identified);
  CHECK(sel.points.size() == 31);
  CHECK(sel.fit.a == doctest::Approx(a).epsilon(1e-6));
  CHECK(sel.fit.Delta == doctest::Approx(delta).epsilon(1e-9));
  CHECK(sel.seed == kDefaultSelectionSeed);

  const PeakSelection again = modified_peak_selection(sets, res);
  CHECK(again.fit.a == sel.fit.a);
}

TEST_CASE("modified selection on clean data equals the top-peak fit") {
  const double a = 0.02, delta = 0.6, res = 2 * kPi / 4096;
  std::vector<PeakSet> sets;
  for (const auto& p : hyperbola_points(a, delta, 25)) sets.push_back({p.omega, {{p.Omega, 1.0}}});
  const PeakSelection sel = modified_peak_selection(sets, res);
  const HyperbolaFit direct = fit_hyperbola(dispersion_from_top_peak(sets), sel.fit.threshold);
  CHECK(sel.fit.a == doctest::Approx(direct.a).epsilon(1e-12));
  CHECK(sel.fit.Delta == doctest::Approx(direct.Delta).epsilon(1e-12));
}

TEST_CASE("modified selection reports unidentifiable data") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  std::vector<PeakSet> sets;
  for (int i = 0; i < 31; ++i) sets.push_back({0.5 + 0.01 * i, {{u(rng), 1.0}, {u(rng), 0.5}}});
  CHECK_FALSE(modified_peak_selection(sets, 2 * kPi / 4096).identified);
}
