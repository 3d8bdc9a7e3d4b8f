#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "anneal_probe/estimate.hpp"
#include "anneal_probe/protocol.hpp"
#include "anneal_probe/spectral.hpp"

namespace anneal_probe {

enum class PeakMethod {
  TopPeak,   // highest peak per drive frequency, then a hyperbola fit
  Modified,  // top three peaks per drive frequency, hyperbola-consistent subset
};

enum class RunMode {
  Verification,  // drive grid and record length sized from exact diagonalization
  Blind,         // sized from coarse pre-scans only
};

std::string to_string(PeakMethod m);
std::string to_string(RunMode m);
PeakMethod parse_peak_method(std::string_view s);
RunMode parse_run_mode(std::string_view s);

struct PipelineOptions {
  RunMode mode = RunMode::Verification;
  PeakMethod method = PeakMethod::TopPeak;
  std::vector<double> omegas;  // empty: n_omega points spanning the gap estimate -+ omega_span
  double omega_span = 0.3;
  std::size_t n_omega = 51;
  double zoom_factor = 1.0;  // > 0: second sweep over Delta -+ zoom_factor * a of the first fit
  std::size_t n_zoom = 51;
  TauGridDesign tau_design;
  std::optional<TauGrid> tau_grid;  // explicit grid, bypasses tau_design
  SweepOptions sweep;
  int padding = kDefaultPadding;
  PeakOptions peaks;
  SelectionOptions selection;
  bool keep_trajectories = false;
};

enum class RunStatus { Ok, Unidentifiable, NoDrive };
std::string to_string(RunStatus s);

/// One drive-frequency sweep and its dispersion analysis.
struct SweepStage {
  std::vector<double> omegas;
  std::vector<ProtocolResult> trajectories;  // only with keep_trajectories
  std::vector<PowerSpectrum> spectra;
  std::vector<PeakSet> peaks;
  PeakSelection selection;  // for TopPeak: the top-peak points and their fit
};

struct PipelineResult {
  AnnealModel model;
  TauGrid grid;
  std::vector<SweepStage> stages;  // wide sweep, then the zoom around its vertex if run
  GroundTruth truth;
  std::optional<AdiabaticEstimate> estimate;
  std::optional<RawEstimate> raw;
  RunStatus status = RunStatus::Unidentifiable;
  std::string diagnostic;
};

/// Drive sweep, spectra, peak extraction, hyperbola fit and estimate for one
/// (T_ann, t1) point. With zoom_factor > 0 an accepted first fit is followed by
/// a sweep across its vertex region, and the estimate comes from that sweep. An unidentifiable dispersion curve is reported through
/// `status`, not thrown.
PipelineResult run_pipeline(const AnnealModel& model, const PipelineOptions& opts = {});

/// Drive-frequency and record-length choice used by run_pipeline.
struct SweepPlan {
  std::vector<double> omegas;
  TauGrid grid;
};
SweepPlan plan_sweep(const AnnealModel& model, const PipelineOptions& opts);

/// Report object {case, T_ann, t1_fraction, estimates, truth, relative_errors,
/// resolutions, status, seed, ...}.
nlohmann::json to_json(const PipelineResult& r, std::optional<CaseLabel> label = std::nullopt);

}  // namespace anneal_probe
