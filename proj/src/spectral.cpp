#include "anneal_probe/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include <fftw3.h>

#include "anneal_probe/errors.hpp"

namespace anneal_probe {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

double check_uniform(const ProtocolResult& r) {
  if (r.taus.size() != r.probs.size() || r.probs.size() < 2) {
    throw ContractViolation("protocol result needs matching tau/probability arrays");
  }
  const double dtau = r.taus[1] - r.taus[0];
  if (!(dtau > 0.0)) throw ContractViolation("tau grid must be increasing");
  for (std::size_t j = 0; j < r.taus.size(); ++j) {
    const double expected = r.taus[0] + static_cast<double>(j) * dtau;
    if (std::abs(r.taus[j] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw ContractViolation("power spectrum needs a uniform tau grid");
    }
  }
  return dtau;
}

// Mean-removed, zero-padded record and its mean.
std::pair<std::vector<double>, double> padded_record(const ProtocolResult& r, int padding) {
  if (padding < 1) throw ContractViolation("padding factor must be >= 1");
  const double mean =
      std::accumulate(r.probs.begin(), r.probs.end(), 0.0) / static_cast<double>(r.probs.size());
  std::vector<double> x(r.probs.size() * static_cast<std::size_t>(padding), 0.0);
  for (std::size_t j = 0; j < r.probs.size(); ++j) x[j] = r.probs[j] - mean;
  return {std::move(x), mean};
}

double hyperbola(double a, double delta, double omega) {
  return std::hypot(a, omega - delta);
}

struct Candidate {
  std::size_t freq = 0;  // index into the peak-set list
  double omega = 0.0;
  double Omega = 0.0;
  double height = 0.0;
};

// One inlier per frequency: the candidate closest to the curve, if within band.
std::vector<Candidate> collect_inliers(const std::vector<std::vector<Candidate>>& by_freq, double a,
                                       double delta, double band, double* sq_sum) {
  std::vector<Candidate> out;
  double total = 0.0;
  for (const auto& cands : by_freq) {
    const Candidate* best = nullptr;
    double best_r = band;
    for (const auto& c : cands) {
      const double r = std::abs(c.Omega - hyperbola(a, delta, c.omega));
      if (r <= best_r) {
        // strictly closer wins; equal distance keeps the earlier (higher) peak
        if (best == nullptr || r < best_r) {
          best = &c;
          best_r = r;
        }
      }
    }
    if (best != nullptr) {
      out.push_back(*best);
      total += best_r * best_r;
    }
  }
  if (sq_sum != nullptr) *sq_sum = total;
  return out;
}

std::vector<DispersionPoint> to_points(const std::vector<Candidate>& cands) {
  std::vector<DispersionPoint> pts;
  pts.reserve(cands.size());
  for (const auto& c : cands) pts.push_back({c.omega, c.Omega, c.height});
  return pts;
}

}  // namespace

double PowerSpectrum::tau_max() const { return 2.0 * std::numbers::pi / resolution; }

PowerSpectrum power_spectrum(const ProtocolResult& result, int padding) {
  const double dtau = check_uniform(result);
  auto [record, mean] = padded_record(result, padding);
  const std::size_t n_padded = record.size();
  const std::size_t n_out = n_padded / 2 + 1;

  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_out)));
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n_padded), record.data(), out.get(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  PowerSpectrum spec;
  spec.omega = result.omega;
  spec.padding = padding;
  const double tau_max = static_cast<double>(result.probs.size()) * dtau;
  spec.resolution = 2.0 * std::numbers::pi / tau_max;
  spec.Omegas.resize(n_out);
  spec.magnitudes.resize(n_out);
  const double bin = spec.resolution / padding;
  for (std::size_t k = 0; k < n_out; ++k) {
    spec.Omegas[k] = static_cast<double>(k) * bin;
    spec.magnitudes[k] = std::hypot(out.get()[k][0], out.get()[k][1]) * dtau * kInvSqrt2Pi;
  }
  spec.magnitudes[0] = std::abs(mean) * tau_max * kInvSqrt2Pi;
  return spec;
}

std::vector<double> two_sided_magnitudes(const ProtocolResult& result, int padding) {
  const double dtau = check_uniform(result);
  auto [record, mean] = padded_record(result, padding);
  const std::size_t n = record.size();
  std::unique_ptr<fftw_complex, FftwFree> in(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
  for (std::size_t j = 0; j < n; ++j) {
    in.get()[j][0] = record[j];
    in.get()[j][1] = 0.0;
  }
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::vector<double> mags(n);
  for (std::size_t k = 0; k < n; ++k) {
    mags[k] = std::hypot(out.get()[k][0], out.get()[k][1]) * dtau * kInvSqrt2Pi;
  }
  mags[0] = std::abs(mean) * static_cast<double>(result.probs.size()) * dtau * kInvSqrt2Pi;
  return mags;
}

PeakSet detect_peaks(const PowerSpectrum& spec, const PeakOptions& opts) {
  const auto& y = spec.magnitudes;
  if (y.size() < 3) throw RangeError("spectrum too short for peak detection");
  const PeakWindow window = opts.window.value_or(PeakWindow{2.0 * spec.resolution, spec.omega / 2.0});
  const double top = spec.Omegas.back();
  if (!(window.min < window.max) || window.min < 0.0 || window.min > top) {
    throw RangeError("empty peak search window [" + std::to_string(window.min) + ", " +
                     std::to_string(window.max) + "]");
  }
  const double floor =
      opts.min_height >= 0.0 ? opts.min_height : 1e-9 * spec.tau_max() * kInvSqrt2Pi;
  const double bin = spec.bin_width();

  PeakSet set;
  set.omega = spec.omega;
  // Candidates are maxima over the unpadded bins, where the edge ripple of the
  // rectangular record vanishes; the padded bins then locate them.
  const std::size_t step = static_cast<std::size_t>(spec.padding);
  std::set<std::size_t> seen;
  for (std::size_t i = step; i + step < y.size(); i += step) {
    if (spec.Omegas[i] < window.min - spec.resolution || spec.Omegas[i] > window.max + spec.resolution) {
      continue;
    }
    if (!(y[i] > y[i - step] && y[i] > y[i + step])) continue;
    std::size_t j = i;
    while (j + 1 < y.size() && j + 1 < i + step && y[j + 1] > y[j]) ++j;
    if (j == i) {
      while (j > i - step + 1 && y[j - 1] > y[j]) --j;
    }
    if (j == 0 || j + 1 >= y.size() || !(y[j] > y[j - 1] && y[j] > y[j + 1])) continue;
    if (!seen.insert(j).second) continue;
    const double denom = y[j - 1] - 2.0 * y[j] + y[j + 1];
    const double shift = denom != 0.0 ? 0.5 * (y[j - 1] - y[j + 1]) / denom : 0.0;
    const double Omega = spec.Omegas[j] + shift * bin;
    const double height = y[j] - 0.25 * (y[j - 1] - y[j + 1]) * shift;
    if (Omega < window.min || Omega > window.max || height <= floor) continue;
    set.peaks.push_back({Omega, height});
  }
  std::stable_sort(set.peaks.begin(), set.peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.height != b.height) return a.height > b.height;
    return a.Omega < b.Omega;
  });
  if (set.peaks.size() > opts.max_peaks) set.peaks.resize(opts.max_peaks);
  return set;
}

std::vector<DispersionPoint> dispersion_from_top_peak(std::span<const PeakSet> peaks) {
  std::vector<DispersionPoint> pts;
  for (const auto& ps : peaks) {
    if (ps.peaks.empty()) continue;
    pts.push_back({ps.omega, ps.peaks.front().Omega, ps.peaks.front().height});
  }
  return pts;
}

std::vector<DispersionPoint> track_branch(std::span<const DispersionPoint> points, double tolerance) {
  if (points.empty()) return {};
  std::vector<DispersionPoint> pts(points.begin(), points.end());
  std::stable_sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.omega < y.omega; });
  auto lowest = [](auto first, auto last) {
    double m = std::numeric_limits<double>::infinity();
    for (auto it = first; it != last; ++it) m = std::min(m, it->Omega);
    return m;
  };
  auto best_lo = pts.begin(), best_hi = pts.begin();
  for (auto lo = pts.begin(); lo != pts.end();) {
    auto hi = lo + 1;
    while (hi != pts.end() && std::abs(hi->Omega - (hi - 1)->Omega) <= std::abs(hi->omega - (hi - 1)->omega) + tolerance) {
      ++hi;
    }
    const auto len = hi - lo, best = best_hi - best_lo;
    if (len > best || (len == best && lowest(lo, hi) < lowest(best_lo, best_hi))) {
      best_lo = lo;
      best_hi = hi;
    }
    lo = hi;
  }
  return {best_lo, best_hi};
}

double HyperbolaFit::at(double omega) const { return hyperbola(a, Delta, omega); }

HyperbolaFit fit_hyperbola(std::span<const DispersionPoint> points, double threshold) {
  if (points.size() < 5) {
    throw PreconditionError("hyperbola fit needs at least 5 points, got " +
                            std::to_string(points.size()));
  }
  const auto seed = std::min_element(points.begin(), points.end(),
                                     [](const auto& p, const auto& q) { return p.Omega < q.Omega; });
  double a = seed->Omega;
  double delta = seed->omega;

  auto cost = [&](double aa, double dd) {
    double s = 0.0;
    for (const auto& p : points) {
      const double r = p.Omega - hyperbola(aa, dd, p.omega);
      s += r * r;
    }
    return s;
  };

  HyperbolaFit fit;
  fit.threshold = threshold;
  fit.n_points = points.size();
  double current = cost(a, delta);
  double damping = 1e-3;
  constexpr int kMaxIterations = 200;
  for (fit.iterations = 0; fit.iterations < kMaxIterations; ++fit.iterations) {
    // Normal equations of the Gauss-Newton step with Levenberg damping.
    double jaa = 0.0, jad = 0.0, jdd = 0.0, ga = 0.0, gd = 0.0;
    for (const auto& p : points) {
      const double f = std::max(hyperbola(a, delta, p.omega), 1e-300);
      const double da = a / f;
      const double dd = -(p.omega - delta) / f;
      const double r = p.Omega - f;
      jaa += da * da;
      jad += da * dd;
      jdd += dd * dd;
      ga += da * r;
      gd += dd * r;
    }
    bool improved = false;
    double step_a = 0.0, step_d = 0.0;
    for (int attempt = 0; attempt < 60 && !improved; ++attempt) {
      const double m00 = jaa * (1.0 + damping) + 1e-300;
      const double m11 = jdd * (1.0 + damping) + 1e-300;
      const double det = m00 * m11 - jad * jad;
      if (det == 0.0 || !std::isfinite(det)) {
        damping *= 10.0;
        continue;
      }
      step_a = (m11 * ga - jad * gd) / det;
      step_d = (m00 * gd - jad * ga) / det;
      const double trial = cost(a + step_a, delta + step_d);
      if (trial <= current) {
        improved = true;
        a += step_a;
        delta += step_d;
        const double drop = current - trial;
        current = trial;
        damping = std::max(damping / 3.0, 1e-12);
        const double scale = std::abs(a) + std::abs(delta) + 1e-300;
        if (std::abs(step_a) + std::abs(step_d) <= 1e-15 * scale ||
            drop <= 1e-30 * std::max(current, 1e-300)) {
          fit.converged = true;
        }
      } else {
        damping *= 4.0;
      }
    }
    if (!improved) {
      // No descent direction left: at a (numerical) minimum.
      fit.converged = true;
    }
    if (fit.converged) break;
  }
  fit.a = std::abs(a);
  fit.Delta = delta;
  fit.rms_residual = std::sqrt(current / static_cast<double>(points.size()));
  if (!std::isfinite(fit.a) || !std::isfinite(fit.Delta) || !std::isfinite(fit.rms_residual)) {
    fit.converged = false;
    fit.diagnostic = "fit diverged";
  } else if (!fit.converged) {
    fit.diagnostic = "no convergence after " + std::to_string(kMaxIterations) + " iterations";
  } else if (fit.rms_residual > threshold) {
    fit.diagnostic = "rms residual " + std::to_string(fit.rms_residual) + " exceeds threshold " +
                     std::to_string(threshold);
  }
  fit.accepted = fit.converged && fit.rms_residual <= threshold;
  return fit;
}

PeakSelection modified_peak_selection(std::span<const PeakSet> peaks, double resolution,
                                      const SelectionOptions& opts) {
  PeakSelection sel;
  sel.seed = opts.seed;
  sel.n_frequencies = peaks.size();
  const double band = opts.inlier_factor * resolution;
  sel.fit.threshold = band;

  std::vector<std::vector<Candidate>> by_freq;
  std::vector<Candidate> flat;
  double omega_lo = std::numeric_limits<double>::infinity();
  double omega_hi = -omega_lo;
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    omega_lo = std::min(omega_lo, peaks[i].omega);
    omega_hi = std::max(omega_hi, peaks[i].omega);
    if (peaks[i].peaks.empty()) continue;
    auto& cands = by_freq.emplace_back();
    for (const auto& p : peaks[i].peaks) {
      cands.push_back({by_freq.size() - 1, peaks[i].omega, p.Omega, p.height});
      flat.push_back(cands.back());
    }
  }
  const std::size_t needed = std::max<std::size_t>(
      opts.min_points,
      static_cast<std::size_t>(std::ceil(opts.min_inlier_fraction * static_cast<double>(peaks.size()))));
  if (by_freq.size() < needed) {
    sel.diagnostic = "only " + std::to_string(by_freq.size()) + " drive frequencies show peaks";
    return sel;
  }

  // Enumerate candidate pairs from distinct frequencies, or sample them.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t total_pairs = 0;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      if (flat[i].freq != flat[j].freq) ++total_pairs;
    }
  }
  if (total_pairs <= opts.max_hypotheses) {
    for (std::size_t i = 0; i < flat.size(); ++i) {
      for (std::size_t j = i + 1; j < flat.size(); ++j) {
        if (flat[i].freq != flat[j].freq) pairs.emplace_back(i, j);
      }
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, flat.size() - 1);
    while (pairs.size() < opts.max_hypotheses) {
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      if (flat[i].freq != flat[j].freq) pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  sel.hypotheses = pairs.size();

  std::size_t best_count = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  double best_a = 0.0, best_delta = 0.0;
  for (const auto& [i, j] : pairs) {
    const auto& p = flat[i];
    const auto& q = flat[j];
    // Omega^2 - (omega - Delta)^2 = a^2 at both points is linear in Delta.
    const double delta = (q.Omega * q.Omega - q.omega * q.omega - p.Omega * p.Omega +
                          p.omega * p.omega) / (2.0 * (p.omega - q.omega));
    const double a2 = p.Omega * p.Omega - (p.omega - delta) * (p.omega - delta);
    if (!std::isfinite(delta) || !(a2 >= 0.0)) continue;
    double sq = 0.0;
    const auto inl = collect_inliers(by_freq, std::sqrt(a2), delta, band, &sq);
    if (inl.size() > best_count || (inl.size() == best_count && sq < best_sq)) {
      best_count = inl.size();
      best_sq = sq;
      best_a = std::sqrt(a2);
      best_delta = delta;
    }
  }
  if (best_count < needed) {
    sel.diagnostic = "best hyperbola gathers " + std::to_string(best_count) + " of " +
                     std::to_string(needed) + " required inliers";
    return sel;
  }

  auto inliers = collect_inliers(by_freq, best_a, best_delta, band, nullptr);
  for (int round = 0; round < opts.refine_rounds; ++round) {
    const auto pts = to_points(inliers);
    sel.fit = fit_hyperbola(pts, band);
    auto next = collect_inliers(by_freq, sel.fit.a, sel.fit.Delta, band, nullptr);
    const bool same = next.size() == inliers.size() &&
                      std::equal(next.begin(), next.end(), inliers.begin(), [](auto& x, auto& y) {
                        return x.freq == y.freq && x.Omega == y.Omega;
                      });
    if (same || next.size() < opts.min_points) break;
    inliers = std::move(next);
  }
  sel.points = to_points(inliers);

  if (!sel.fit.accepted) {
    sel.diagnostic = "refit rejected: " + sel.fit.diagnostic;
  } else if (sel.points.size() < needed) {
    sel.diagnostic = "too few inliers after refit";
  } else if (sel.fit.Delta < omega_lo || sel.fit.Delta > omega_hi) {
    sel.diagnostic = "fitted vertex lies outside the swept drive frequencies";
  } else {
    sel.identified = true;
  }
  return sel;
}

void write_spectrum_csv(std::ostream& out, std::span<const PowerSpectrum> spectra, double max_Omega) {
  const auto old = out.precision(12);
  out << "omega,Omega,magnitude\n";
  for (const auto& s : spectra) {
    for (std::size_t k = 0; k < s.Omegas.size(); ++k) {
      if (max_Omega > 0.0 && s.Omegas[k] > max_Omega) break;
      out << s.omega << ',' << s.Omegas[k] << ',' << s.magnitudes[k] << '\n';
    }
  }
  out.precision(old);
}

nlohmann::json to_json(const HyperbolaFit& fit) {
  return {{"a", fit.a},
          {"Delta", fit.Delta},
          {"rms", fit.rms_residual},
          {"threshold", fit.threshold},
          {"accepted", fit.accepted},
          {"converged", fit.converged},
          {"iterations", fit.iterations},
          {"n_points", fit.n_points},
          {"diagnostic", fit.diagnostic}};
}

nlohmann::json to_json(const PeakSelection& selection) {
  auto j = to_json(selection.fit);
  j["n_inliers"] = selection.points.size();
  j["n_frequencies"] = selection.n_frequencies;
  j["identified"] = selection.identified;
  j["hypotheses"] = selection.hypotheses;
  j["seed"] = selection.seed;
  if (!selection.diagnostic.empty()) j["diagnostic"] = selection.diagnostic;
  return j;
}

}  // namespace anneal_probe
