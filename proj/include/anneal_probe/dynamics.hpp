#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "anneal_probe/algebra.hpp"

namespace anneal_probe {

/// H(t) = sum_i c_i(t) M_i with fixed matrices M_i and analytic coefficients.
/// Coefficients are evaluated exactly at every integrator stage.
class TimeDependentOperator {
 public:
  using Coefficients = std::function<void(double t, std::span<double> out)>;

  TimeDependentOperator(std::vector<Matrix> terms, Coefficients coefficients);
  static TimeDependentOperator constant(Matrix h);

  int dim() const { return static_cast<int>(terms_.front().rows()); }
  const std::vector<Matrix>& terms() const { return terms_; }
  void coefficients(double t, std::span<double> out) const { coefficients_(t, out); }
  Matrix at(double t) const;

 private:
  std::vector<Matrix> terms_;
  Coefficients coefficients_;
};

struct QuantumState {
  Vector amplitudes;

  static QuantumState basis(int dim, int index);
  double norm() const { return amplitudes.norm(); }
};

/// Fidelity |<a|b>|^2 of two pure states.
double fidelity(const QuantumState& a, const QuantumState& b);

struct DensityState {
  Matrix rho;

  static DensityState from_pure(const QuantumState& psi);
  double trace() const { return rho.trace().real(); }
  /// Throws StepSizeError when trace, Hermiticity or positivity is off by
  /// more than 1e-6, 1e-8 and 1e-8 respectively.
  void check_invariants() const;
};

double trace_distance(const Matrix& a, const Matrix& b);

/// Default step: min(0.01 ns, 0.05 / norm_bound).
double default_time_step(double norm_bound);

/// Fourth-order Runge-Kutta integration of i dpsi/dt = H(t) psi.
///
/// The interval is split into ceil((t_end - t_start) / dt) equal steps. The
/// result is renormalised when the norm drifted by less than 1e-8; larger drift
/// raises StepSizeError.
QuantumState evolve_unitary(const TimeDependentOperator& h, const QuantumState& psi0,
                            double t_start, double t_end, double dt);

/// Fourth-order Runge-Kutta integration of the GKSL equation
///   drho/dt = -i[H, rho] + sum_n (L rho L^+ - {L^+ L, rho} / 2).
/// `jumps` holds the already rate-scaled operators L_n.
DensityState evolve_lindblad(const TimeDependentOperator& h, std::span<const Matrix> jumps,
                             const DensityState& rho0, double t_start, double t_end, double dt);

/// Same integrator as evolve_lindblad applied to an arbitrary operator, with no
/// physical-state checks. Used to tabulate linear maps.
Matrix propagate_lindblad_operator(const TimeDependentOperator& h, std::span<const Matrix> jumps,
                                   const Matrix& x0, double t_start, double t_end, double dt);

/// Observers receive the sample index and the state at t_start + j * sample_dt.
using AmplitudeObserver = std::function<void(std::size_t, const Vector&)>;
using DensityObserver = std::function<void(std::size_t, const Matrix&)>;

/// Integrates one trajectory and reports it at n_samples equally spaced times.
/// The integrator step is sample_dt / ceil(sample_dt / dt_max), so samples fall
/// exactly on step boundaries.
QuantumState sample_unitary(const TimeDependentOperator& h, const QuantumState& psi0,
                            double t_start, double sample_dt, std::size_t n_samples,
                            double dt_max, const AmplitudeObserver& observe);

DensityState sample_lindblad(const TimeDependentOperator& h, std::span<const Matrix> jumps,
                             const DensityState& rho0, double t_start, double sample_dt,
                             std::size_t n_samples, double dt_max, const DensityObserver& observe);

}  // namespace anneal_probe
