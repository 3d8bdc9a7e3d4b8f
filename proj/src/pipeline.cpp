#include "anneal_probe/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "anneal_probe/errors.hpp"

namespace anneal_probe {

namespace {

// Largest frequency the drive window can put into p(tau): harmonics of the
// drive plus every Bohr frequency of H_QA(t1).
double omega_max_for(const AnnealModel& model, std::span<const double> omegas) {
  const double w = *std::max_element(omegas.begin(), omegas.end());
  const auto& e = eigensystem(h_qa_at(model, model.t1, 0.0)).energies;
  const double width = e.back() - e.front();
  return 1.5 * w + width;
}

double omega_step(std::span<const double> omegas) {
  return omegas.size() > 1 ? (omegas.back() - omegas.front()) / static_cast<double>(omegas.size() - 1)
                           : 0.0;
}

// Smallest top-peak Omega over a coarse drive scan and where it occurs.
std::pair<double, double> coarse_scan(const AnnealModel& model, std::span<const double> omegas,
                                      const TauGrid& grid, const PipelineOptions& opts) {
  const auto runs = run_omega_sweep(model, omegas, grid, opts.sweep);
  double best_Omega = std::numeric_limits<double>::infinity();
  double best_omega = omegas.front();
  for (const auto& r : runs) {
    const auto spec = power_spectrum(r, opts.padding);
    PeakOptions po;
    po.max_peaks = 1;
    const auto ps = detect_peaks(spec, po);
    if (!ps.peaks.empty() && ps.peaks.front().Omega < best_Omega) {
      best_Omega = ps.peaks.front().Omega;
      best_omega = r.omega;
    }
  }
  return {best_omega, best_Omega};
}

}  // namespace

std::string to_string(PeakMethod m) { return m == PeakMethod::TopPeak ? "top-peak" : "modified"; }
std::string to_string(RunMode m) { return m == RunMode::Verification ? "verification" : "blind"; }
std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Unidentifiable: return "unidentifiable";
    case RunStatus::NoDrive: return "no-drive";
  }
  return "unknown";
}

PeakMethod parse_peak_method(std::string_view s) {
  if (s == "top-peak") return PeakMethod::TopPeak;
  if (s == "modified") return PeakMethod::Modified;
  throw ConfigError("unknown peak method '" + std::string(s) + "' (top-peak, modified)");
}

RunMode parse_run_mode(std::string_view s) {
  if (s == "verification") return RunMode::Verification;
  if (s == "blind") return RunMode::Blind;
  throw ConfigError("unknown mode '" + std::string(s) + "' (verification, blind)");
}

SweepPlan plan_sweep(const AnnealModel& model, const PipelineOptions& opts) {
  SweepPlan plan;
  double rabi = 0.0;
  if (opts.mode == RunMode::Verification) {
    const GroundTruth truth = ground_truth(model);
    rabi = model.lambda() * truth.matrix_element;
    plan.omegas = opts.omegas.empty() ? omega_grid(truth.gap, opts.omega_span, opts.n_omega) : opts.omegas;
  } else {
    // Broad scan over the Bohr-frequency range allowed by the coefficient norms,
    // then a narrower one to size the record from the observed Rabi splitting.
    const double bound = hamiltonian_norm_bound(model);
    const double rabi_bound = std::max(model.lambda() * hdot_qa(model).spectral_norm(), 1e-6);
    TauGridDesign coarse = opts.tau_design;
    coarse.tau_max = 0.0;
    coarse.n_periods = 8.0;
    coarse.min_samples = 1024;
    std::vector<double> broad(11);
    for (std::size_t i = 0; i < broad.size(); ++i) {
      broad[i] = 2.0 * bound * static_cast<double>(i + 1) / static_cast<double>(broad.size() + 1);
    }
    const TauGrid g1 = design_tau_grid(rabi_bound, 1.5 * broad.back() + 2.0 * bound, coarse);
    const double center = coarse_scan(model, broad, g1, opts).first;
    const auto narrow = omega_grid(center, opts.omega_span, 11);
    const TauGrid g2 = design_tau_grid(rabi_bound, 1.5 * narrow.back() + 2.0 * bound, coarse);
    const auto [gap0, rabi0] = coarse_scan(model, narrow, g2, opts);
    rabi = std::isfinite(rabi0) ? rabi0 : rabi_bound;
    plan.omegas = opts.omegas.empty() ? omega_grid(gap0, opts.omega_span, opts.n_omega) : opts.omegas;
  }
  if (opts.tau_grid) {
    plan.grid = *opts.tau_grid;
  } else {
    if (!(rabi > 0.0) && opts.tau_design.tau_max <= 0.0) {
      throw PreconditionError("no drive coupling between the selected levels");
    }
    plan.grid = design_tau_grid(rabi, omega_max_for(model, plan.omegas), opts.tau_design);
  }
  return plan;
}

namespace {

// Sweep, spectra, peaks and dispersion fit over one drive-frequency grid.
SweepStage analyse(const AnnealModel& model, std::vector<double> omegas, const TauGrid& grid,
                   const PipelineOptions& opts) {
  SweepStage st;
  st.omegas = std::move(omegas);
  auto trajectories = run_omega_sweep(model, st.omegas, grid, opts.sweep);
  st.spectra.reserve(trajectories.size());
  st.peaks.reserve(trajectories.size());
  for (const auto& t : trajectories) {
    st.spectra.push_back(power_spectrum(t, opts.padding));
    st.peaks.push_back(detect_peaks(st.spectra.back(), opts.peaks));
  }
  if (opts.keep_trajectories) st.trajectories = std::move(trajectories);

  const double resolution = st.spectra.front().resolution;
  if (opts.method == PeakMethod::Modified) {
    st.selection = modified_peak_selection(st.peaks, resolution, opts.selection);
    return st;
  }
  PeakSelection& sel = st.selection;
  sel.seed = opts.selection.seed;
  sel.n_frequencies = st.peaks.size();
  const auto top = dispersion_from_top_peak(st.peaks);
  sel.points = track_branch(top, 2.0 * resolution);
  const double threshold = opts.selection.inlier_factor * resolution;
  const auto needed = std::max<std::size_t>(
      opts.selection.min_points,
      static_cast<std::size_t>(std::ceil(opts.selection.min_inlier_fraction * static_cast<double>(st.peaks.size()))));
  if (sel.points.size() < needed) {
    sel.fit.threshold = threshold;
    sel.diagnostic = "the longest continuous peak branch spans " + std::to_string(sel.points.size()) +
                     " of " + std::to_string(st.peaks.size()) + " drive frequencies, " + std::to_string(needed) +
                     " required";
    return st;
  }
  sel.fit = fit_hyperbola(sel.points, threshold);
  if (!sel.fit.accepted) {
    sel.diagnostic = "fit rejected: " + sel.fit.diagnostic;
  } else if (sel.fit.Delta < st.omegas.front() || sel.fit.Delta > st.omegas.back()) {
    sel.diagnostic = "fitted vertex lies outside the swept drive frequencies";
  } else {
    sel.identified = true;
  }
  return st;
}

}  // namespace

PipelineResult run_pipeline(const AnnealModel& model, const PipelineOptions& opts) {
  model.validate();
  PipelineResult r;
  r.model = model;
  r.truth = ground_truth(model);
  if (!(model.lambda() > 0.0) || r.truth.matrix_element == 0.0) {
    r.status = RunStatus::NoDrive;
    r.diagnostic = "drive does not couple the selected levels; no Rabi peak can form";
    return r;
  }
  SweepPlan plan = plan_sweep(model, opts);
  r.grid = plan.grid;
  r.stages.push_back(analyse(model, std::move(plan.omegas), r.grid, opts));

  if (opts.zoom_factor > 0.0 && r.stages.back().selection.identified) {
    const HyperbolaFit& fit = r.stages.back().selection.fit;
    const double half = opts.zoom_factor * fit.a;
    std::vector<double> zoomed(opts.n_zoom);
    for (std::size_t i = 0; i < zoomed.size(); ++i) {
      const double u = zoomed.size() > 1 ? static_cast<double>(i) / static_cast<double>(zoomed.size() - 1) : 0.5;
      zoomed[i] = fit.Delta - half + 2.0 * half * u;
    }
    if (zoomed.front() > 0.0) r.stages.push_back(analyse(model, std::move(zoomed), r.grid, opts));
  }

  const SweepStage& last = r.stages.back();
  if (!last.selection.points.empty()) r.raw = raw_estimate(last.selection.points, model);
  if (last.selection.identified) {
    r.estimate = estimate_from_fit(last.selection.fit, model, last.spectra.front().resolution,
                                   omega_step(last.omegas));
    r.status = RunStatus::Ok;
  } else {
    r.status = RunStatus::Unidentifiable;
    r.diagnostic = last.selection.diagnostic;
  }
  return r;
}

nlohmann::json to_json(const PipelineResult& r, std::optional<CaseLabel> label) {
  nlohmann::json j;
  j["case"] = label ? std::string(1, to_char(*label)) : std::string("custom");
  j["T_ann"] = r.model.t_ann;
  j["t1_fraction"] = r.model.t1_fraction();
  j["lambda_ratio"] = r.model.lambda_ratio;
  j["levels"] = {r.model.k, r.model.l};
  j["fidelity_mode"] = to_string(r.model.fidelity);
  j["noise_mode"] = to_string(r.model.noise);
  j["status"] = to_string(r.status);
  j["seed"] = r.stages.empty() ? SelectionOptions{}.seed : r.stages.back().selection.seed;
  j["truth"] = to_json(r.truth);
  if (r.estimate) {
    const auto e = to_json(*r.estimate);
    for (const auto& key : {"estimates", "truth", "relative_errors", "resolutions"}) j[key] = e[key];
  }
  if (r.raw) {
    j["raw_estimates"] = {{"matrix_element", r.raw->matrix_element_est}, {"gap", r.raw->gap_est}};
  }
  if (!r.stages.empty()) {
    j["tau_grid"] = {{"tau_max", r.grid.tau_max()}, {"dtau", r.grid.dtau}, {"n_samples", r.grid.n_samples}};
    j["stages"] = nlohmann::json::array();
    for (const auto& st : r.stages) {
      j["stages"].push_back({{"omega_min", st.omegas.front()},
                             {"omega_max", st.omegas.back()},
                             {"n_omega", st.omegas.size()},
                             {"fit", to_json(st.selection)}});
    }
  }
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

}  // namespace anneal_probe
