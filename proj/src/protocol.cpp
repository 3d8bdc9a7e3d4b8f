#include "anneal_probe/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include "anneal_probe/errors.hpp"

namespace anneal_probe {

namespace {

constexpr double kProbabilitySlack = 1e-9;

// State entering the drive window and the readout that follows it.
struct Preparation {
  bool open = false;
  QuantumState psi;
  DensityState rho;
  Vector readout;       // closed: p = |readout^+ psi|^2
  Matrix readout_op;    // open:   p = Re Tr(readout_op rho)
  std::vector<Matrix> jumps;
};

int checked_level(const EigenSystem& es, int level) {
  es.require_nondegenerate(level);
  return level;
}

double clamp_probability(double p) {
  if (!(p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack)) {
    throw StepSizeError("probability " + std::to_string(p) + " outside [0, 1]");
  }
  return std::max(p, 0.0);
}

Preparation prepare(const AnnealModel& model, double dt) {
  Preparation prep;
  prep.open = model.noise == NoiseMode::Open;
  if (prep.open) prep.jumps = jump_operators(model);
  const int dim = model.dim();

  if (model.fidelity == FidelityMode::ExactPrep) {
    const auto es = eigensystem(h_qa_at(model, model.t1, 0.0));
    const Vector ket_k = es.state(checked_level(es, model.k));
    const Vector ket_l = es.state(checked_level(es, model.l));
    prep.psi = QuantumState{ket_k};
    prep.rho = DensityState::from_pure(prep.psi);
    prep.readout = ket_l;
    prep.readout_op = ket_l * ket_l.adjoint();
    return prep;
  }

  const auto es = eigensystem(to_matrix(model.driver));
  const Vector ket_k = es.state(checked_level(es, model.k));
  const Vector ket_l = es.state(checked_level(es, model.l));
  const auto down = ramp_down_hamiltonian(model);
  const auto up = ramp_up_hamiltonian(model);

  if (!prep.open) {
    prep.psi = evolve_unitary(down, QuantumState{ket_k}, 0.0, model.t1, dt);
    // Row j of the return-ramp propagator U: readout_j^* = <l| U |j>.
    prep.readout = Vector(dim);
    for (int j = 0; j < dim; ++j) {
      const auto col = evolve_unitary(up, QuantumState::basis(dim, j), model.t1, 2 * model.t1, dt);
      prep.readout(j) = std::conj(ket_l.dot(col.amplitudes));
    }
    return prep;
  }

  prep.rho = evolve_lindblad(down, prep.jumps, DensityState::from_pure(QuantumState{ket_k}), 0.0,
                             model.t1, dt);
  // Heisenberg-picture readout Q with Tr(Q rho) = Tr(P_l Phi(rho)) for the return map Phi.
  const Matrix projector = ket_l * ket_l.adjoint();
  prep.readout_op = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Matrix unit = Matrix::Zero(dim, dim);
      unit(i, j) = 1.0;
      const Matrix image =
          propagate_lindblad_operator(up, prep.jumps, unit, model.t1, 2 * model.t1, dt);
      prep.readout_op(j, i) = (projector * image).trace();
    }
  }
  return prep;
}

double readout(const Preparation& prep, const Vector& psi) {
  return clamp_probability(std::norm(prep.readout.dot(psi)));
}

double readout(const Preparation& prep, const Matrix& rho) {
  return clamp_probability((prep.readout_op * rho).trace().real());
}

ProtocolResult sweep_prepared(const AnnealModel& model, const Preparation& prep,
                              const TauGrid& grid, double dt) {
  ProtocolResult result;
  result.omega = model.omega;
  result.t1 = model.t1;
  result.taus = grid.taus();
  result.probs.assign(grid.n_samples, 0.0);
  const auto drive = drive_hamiltonian(model);
  if (prep.open) {
    sample_lindblad(drive, prep.jumps, prep.rho, model.t1, grid.dtau, grid.n_samples, dt,
                    [&](std::size_t j, const Matrix& rho) { result.probs[j] = readout(prep, rho); });
  } else {
    sample_unitary(drive, prep.psi, model.t1, grid.dtau, grid.n_samples, dt,
                   [&](std::size_t j, const Vector& psi) { result.probs[j] = readout(prep, psi); });
  }
  return result;
}

}  // namespace

std::vector<double> TauGrid::taus() const {
  std::vector<double> out(n_samples);
  for (std::size_t j = 0; j < n_samples; ++j) out[j] = tau(j);
  return out;
}

void TauGrid::validate() const {
  if (n_samples < 256) throw ContractViolation("tau grid needs at least 256 samples");
  if (!(dtau > 0.0) || !std::isfinite(dtau)) throw ContractViolation("tau spacing must be positive");
}

double hamiltonian_norm_bound(const AnnealModel& model) {
  const double hd = to_matrix(model.driver).spectral_norm();
  const double hp = to_matrix(model.problem).spectral_norm();
  return std::max(hd, hp) + model.lambda() * hdot_qa(model).spectral_norm();
}

double effective_time_step(const AnnealModel& model, const SweepOptions& opts) {
  return opts.dt_max > 0.0 ? opts.dt_max : default_time_step(hamiltonian_norm_bound(model));
}

TimeDependentOperator ramp_down_hamiltonian(const AnnealModel& model) {
  const double t_ann = model.t_ann;
  return TimeDependentOperator({to_matrix(model.driver).matrix(), to_matrix(model.problem).matrix()},
                               [t_ann](double t, std::span<double> c) {
                                 c[0] = 1.0 - t / t_ann;
                                 c[1] = t / t_ann;
                               });
}

TimeDependentOperator drive_hamiltonian(const AnnealModel& model) {
  const double a = 1.0 - model.t1 / model.t_ann;
  const Matrix h = a * to_matrix(model.driver).matrix() + (1.0 - a) * to_matrix(model.problem).matrix();
  const double lambda = model.lambda();
  const double omega = model.omega;
  const double t1 = model.t1;
  return TimeDependentOperator({h, hdot_qa(model).matrix()},
                               [=](double t, std::span<double> c) {
                                 c[0] = 1.0;
                                 c[1] = lambda * std::cos(omega * (t - t1));
                               });
}

TimeDependentOperator ramp_up_hamiltonian(const AnnealModel& model) {
  // A(t) = (t - 2 t1) / T_ann + 1 on [t1, 2 t1], i.e. the third branch with tau removed.
  const double t_ann = model.t_ann;
  const double t1 = model.t1;
  return TimeDependentOperator({to_matrix(model.driver).matrix(), to_matrix(model.problem).matrix()},
                               [=](double t, std::span<double> c) {
                                 const double a = (t - 2.0 * t1) / t_ann + 1.0;
                                 c[0] = a;
                                 c[1] = 1.0 - a;
                               });
}

double run_once(const AnnealModel& model, double tau, const SweepOptions& opts) {
  model.validate();
  if (tau < 0.0) throw RangeError("tau must be >= 0");
  const double dt = effective_time_step(model, opts);
  const bool open = model.noise == NoiseMode::Open;
  const auto jumps = open ? jump_operators(model) : std::vector<Matrix>{};
  const auto drive = drive_hamiltonian(model);

  if (model.fidelity == FidelityMode::ExactPrep) {
    const auto es = eigensystem(h_qa_at(model, model.t1, 0.0));
    const QuantumState ket_k{es.state(checked_level(es, model.k))};
    const Vector ket_l = es.state(checked_level(es, model.l));
    if (open) {
      const auto rho = evolve_lindblad(drive, jumps, DensityState::from_pure(ket_k), model.t1,
                                       model.t1 + tau, dt);
      return clamp_probability((ket_l.adjoint() * rho.rho * ket_l)(0, 0).real());
    }
    const auto psi = evolve_unitary(drive, ket_k, model.t1, model.t1 + tau, dt);
    return clamp_probability(std::norm(ket_l.dot(psi.amplitudes)));
  }

  const auto es = eigensystem(to_matrix(model.driver));
  const QuantumState ket_k{es.state(checked_level(es, model.k))};
  const Vector ket_l = es.state(checked_level(es, model.l));
  const auto down = ramp_down_hamiltonian(model);
  const auto up = ramp_up_hamiltonian(model);
  // The return ramp runs over [t1 + tau, 2 t1 + tau]; the operator is written in
  // tau-free time, so integrate over [t1, 2 t1] instead.
  if (open) {
    auto rho = evolve_lindblad(down, jumps, DensityState::from_pure(ket_k), 0.0, model.t1, dt);
    rho = evolve_lindblad(drive, jumps, rho, model.t1, model.t1 + tau, dt);
    rho = evolve_lindblad(up, jumps, rho, model.t1, 2 * model.t1, dt);
    return clamp_probability((ket_l.adjoint() * rho.rho * ket_l)(0, 0).real());
  }
  auto psi = evolve_unitary(down, ket_k, 0.0, model.t1, dt);
  psi = evolve_unitary(drive, psi, model.t1, model.t1 + tau, dt);
  psi = evolve_unitary(up, psi, model.t1, 2 * model.t1, dt);
  return clamp_probability(std::norm(ket_l.dot(psi.amplitudes)));
}

ProtocolResult run_tau_sweep(const AnnealModel& model, const TauGrid& grid, const SweepOptions& opts) {
  model.validate();
  grid.validate();
  const double dt = effective_time_step(model, opts);
  return sweep_prepared(model, prepare(model, dt), grid, dt);
}

std::vector<ProtocolResult> run_omega_sweep(const AnnealModel& model, std::span<const double> omegas,
                                            const TauGrid& grid, const SweepOptions& opts) {
  if (omegas.empty()) throw ContractViolation("omega sweep needs at least one frequency");
  for (double w : omegas) {
    if (!(w > 0.0)) throw ContractViolation("drive frequencies must be positive");
  }
  model.validate();
  grid.validate();
  const double dt = effective_time_step(model, opts);
  // Steps one, two, four and five do not depend on omega.
  const auto prep = prepare(model, dt);

  std::vector<ProtocolResult> results(omegas.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < omegas.size(); i = next++) {
      try {
        results[i] = sweep_prepared(model.with_omega(omegas[i]), prep, grid, dt);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n_threads =
      std::clamp<unsigned>(opts.threads, 1, static_cast<unsigned>(omegas.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<double> omega_grid(double center, double rel_span, std::size_t n) {
  if (!(center > 0.0) || !(rel_span > 0.0 && rel_span < 1.0) || n == 0) {
    throw ContractViolation("omega grid needs center > 0, 0 < span < 1 and n > 0");
  }
  if (n == 1) return {center};
  std::vector<double> out(n);
  const double lo = center * (1.0 - rel_span);
  const double step = 2.0 * center * rel_span / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

TauGrid design_tau_grid(double rabi_estimate, double omega_max, const TauGridDesign& design) {
  double tau_max = design.tau_max;
  if (tau_max <= 0.0) {
    if (!(rabi_estimate > 0.0)) {
      throw ContractViolation("Rabi frequency estimate must be positive to size the tau grid");
    }
    tau_max = std::min(design.n_periods * 2.0 * std::numbers::pi / rabi_estimate, design.tau_max_cap);
  }
  const double dtau_limit = std::numbers::pi / (design.oversampling * omega_max);
  TauGrid grid;
  grid.n_samples = std::max<std::size_t>(
      design.min_samples, static_cast<std::size_t>(std::ceil(tau_max / dtau_limit)));
  grid.dtau = tau_max / static_cast<double>(grid.n_samples);
  grid.validate();
  return grid;
}

void write_protocol_csv(std::ostream& out, std::span<const ProtocolResult> results) {
  const auto old = out.precision(12);
  out << "omega,t1,tau,probability\n";
  for (const auto& r : results) {
    for (std::size_t j = 0; j < r.probs.size(); ++j) {
      out << r.omega << ',' << r.t1 << ',' << r.taus[j] << ',' << r.probs[j] << '\n';
    }
  }
  out.precision(old);
}

}  // namespace anneal_probe
