#pragma once

#include <complex>
#include <span>

#include <json.hpp>

#include "anneal_probe/model.hpp"
#include "anneal_probe/spectral.hpp"

namespace anneal_probe {

/// Exact adiabatic-condition ingredients at t1 for the level pair (k, l).
struct GroundTruth {
  double matrix_element = 0.0;  // |<l| dH_QA |k>|, rad/ns
  double gap = 0.0;             // E_l - E_k, rad/ns
  double criterion = 0.0;       // matrix_element / gap^2
};

/// Throws DegeneracyError when either level is degenerate within 1e-9.
GroundTruth ground_truth(const AnnealModel& model);

struct AdiabaticEstimate {
  double matrix_element_est = 0.0;  // already divided by lambda
  double gap_est = 0.0;
  double matrix_element_true = 0.0;
  double gap_true = 0.0;
  double rel_err_me = 0.0;
  double rel_err_gap = 0.0;
  double resolution_me = 0.0;   // delta Omega / lambda
  double resolution_gap = 0.0;  // drive-frequency step
  double criterion_value = 0.0;
};

/// Estimate from the fitted hyperbola: a / lambda and the vertex position.
/// Throws UnidentifiableError when the fit was not accepted.
AdiabaticEstimate estimate_from_fit(const HyperbolaFit& fit, const AnnealModel& model,
                                    double resolution, double omega_step);

/// The plain discrete estimator: smallest observed Omega and the drive frequency where it occurs.
struct RawEstimate {
  double matrix_element_est = 0.0;
  double gap_est = 0.0;
};
RawEstimate raw_estimate(std::span<const DispersionPoint> points, const AnnealModel& model);

/// First-order non-adiabatic amplitude <n|dH|m> / (E_n - E_m)^2 times the
/// dynamical phase exp(i int_0^t (E_n - E_m) ds), with m = model.k and
/// n = model.l, along the conventional schedule.
std::complex<double> a_mn_diagnostic(const AnnealModel& model, double t);

nlohmann::json to_json(const GroundTruth& truth);
nlohmann::json to_json(const AdiabaticEstimate& est);

}  // namespace anneal_probe
