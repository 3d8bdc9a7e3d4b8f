#pragma once

#include <complex>
#include <vector>

#include "anneal_probe/model.hpp"

namespace anneal_probe {

/// Effective two-level drive in the rotating frame.
struct RwaParameters {
  double Delta = 0.0;                  // E_l - E_k
  std::complex<double> lambda_tilde;   // lambda <l| dH_QA |k>
  double omega = 0.0;
  double s() const { return omega / Delta; }
};

/// RWA parameters for model (levels k, l at t1) driven at omega.
RwaParameters rwa_parameters(const AnnealModel& model, double omega);

/// Detuned Rabi frequency sqrt(|lambda_tilde|^2 + (omega - Delta)^2).
double omega_ana(const RwaParameters& p);
double omega_ana(int k, int l, const AnnealModel& model, double omega);

/// Oscillation amplitude alpha(omega) of the RWA transition probability.
/// 1/2 on resonance, 0 without drive.
double rabi_alpha(const RwaParameters& p);

/// alpha(omega) (1 - cos(Omega_ana tau)). Requires Delta > 0.
double rabi_probability(const RwaParameters& p, double tau);

/// Spectral lines of the exact two-level evolution without the rotating-wave
/// step: {0, W, omega - W, omega, omega + W} with W = Omega_ana.
std::vector<double> nonadiabatic_modes(const RwaParameters& p);

/// Frequencies appearing in the time-dependent perturbation series of the
/// (k, l) amplitude. Order 1: {2 omega, |Delta - omega|, Delta + omega};
/// order 2 adds the slope-two line |Delta - 2 omega|.
std::vector<double> perturbative_modes(const AnnealModel& model, double omega, int order);

}  // namespace anneal_probe
