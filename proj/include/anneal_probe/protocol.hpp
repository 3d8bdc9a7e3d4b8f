#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "anneal_probe/dynamics.hpp"
#include "anneal_probe/model.hpp"

namespace anneal_probe {

/// Uniform grid of drive durations tau_j = j * dtau, j = 0 .. n_samples - 1.
struct TauGrid {
  std::size_t n_samples = 4096;
  double dtau = 0.0;  // ns

  double tau(std::size_t j) const { return static_cast<double>(j) * dtau; }
  /// Length of the sampled record, n_samples * dtau.
  double tau_max() const { return static_cast<double>(n_samples) * dtau; }
  std::vector<double> taus() const;
  void validate() const;
};

/// p_{k,l}(omega, t1, tau) over one tau grid.
struct ProtocolResult {
  double omega = 0.0;
  double t1 = 0.0;
  std::vector<double> taus;
  std::vector<double> probs;
};

struct SweepOptions {
  double dt_max = 0.0;    // ns; 0 selects default_time_step(hamiltonian_norm_bound(model))
  unsigned threads = 1;
};

/// Upper bound on ||H(t)|| over the protocol: max(||H_D||, ||H_P||) + lambda ||dH_QA||.
double hamiltonian_norm_bound(const AnnealModel& model);

/// Time step actually used for `model` under `opts`.
double effective_time_step(const AnnealModel& model, const SweepOptions& opts);

/// Hamiltonians for the three protocol segments. Each is smooth on its own
/// segment so the integrator never straddles a switching edge.
TimeDependentOperator ramp_down_hamiltonian(const AnnealModel& model);   // [0, t1]
TimeDependentOperator drive_hamiltonian(const AnnealModel& model);       // [t1, t1 + tau]
TimeDependentOperator ramp_up_hamiltonian(const AnnealModel& model);     // [t1, 2 t1], shifted by tau

/// One run of the six-step protocol at drive duration tau, integrated segment
/// by segment from scratch.
double run_once(const AnnealModel& model, double tau, const SweepOptions& opts = {});

/// p over a whole tau grid from a single drive trajectory. The preparation
/// (steps one and two) and the return ramp with readout (steps four and five)
/// are computed once and reused for every tau.
ProtocolResult run_tau_sweep(const AnnealModel& model, const TauGrid& grid,
                             const SweepOptions& opts = {});

/// run_tau_sweep for each drive frequency; model.omega is ignored. Work is
/// spread over opts.threads workers and each entry is computed independently.
std::vector<ProtocolResult> run_omega_sweep(const AnnealModel& model, std::span<const double> omegas,
                                            const TauGrid& grid, const SweepOptions& opts = {});

/// `n` points spanning center * (1 -+ rel_span).
std::vector<double> omega_grid(double center, double rel_span = 0.3, std::size_t n = 51);

struct TauGridDesign {
  std::size_t min_samples = 4096;
  double n_periods = 8.0;        // Rabi periods in the record
  double oversampling = 4.0;     // dtau <= pi / (oversampling * omega_max)
  double tau_max_cap = 16384.0;  // ns
  double tau_max = 0.0;          // ns; > 0 overrides the Rabi-period rule
};

/// Record length n_periods * 2 pi / rabi_estimate, sampled finely enough that
/// frequencies up to omega_max are not aliased.
TauGrid design_tau_grid(double rabi_estimate, double omega_max, const TauGridDesign& design = {});

/// CSV with header `omega,t1,tau,probability`, one row per sample.
void write_protocol_csv(std::ostream& out, std::span<const ProtocolResult> results);

}  // namespace anneal_probe
