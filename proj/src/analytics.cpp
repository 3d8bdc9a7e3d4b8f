#include "anneal_probe/analytics.hpp"

#include <cmath>

#include "anneal_probe/errors.hpp"
#include "anneal_probe/estimate.hpp"

namespace anneal_probe {

RwaParameters rwa_parameters(const AnnealModel& model, double omega) {
  const EigenSystem es = eigensystem(h_qa_at(model, model.t1, 0.0));
  es.require_nondegenerate(model.k);
  es.require_nondegenerate(model.l);
  const Matrix hdot = hdot_qa(model).matrix();
  RwaParameters p;
  p.Delta = es.gap(model.k, model.l);
  p.lambda_tilde = model.lambda() * es.state(model.l).dot(hdot * es.state(model.k));
  p.omega = omega;
  return p;
}

double omega_ana(const RwaParameters& p) { return std::hypot(std::abs(p.lambda_tilde), p.omega - p.Delta); }

double omega_ana(int k, int l, const AnnealModel& model, double omega) {
  AnnealModel m = model;
  m.k = k;
  m.l = l;
  return omega_ana(rwa_parameters(m, omega));
}

double rabi_alpha(const RwaParameters& p) {
  const double lt = std::abs(p.lambda_tilde);
  if (lt == 0.0) return 0.0;
  const double det = p.Delta - p.omega;
  const double root = std::hypot(det, lt);
  // det - root, rewritten to avoid cancellation when det >> |lambda_tilde|
  const double d = det > 0.0 ? -lt * lt / (det + root) : det - root;
  const double ratio = 2.0 * lt * d / (d * d + lt * lt);
  return 0.5 * ratio * ratio;
}

double rabi_probability(const RwaParameters& p, double tau) {
  if (!(p.Delta > 0.0)) throw PreconditionError("rabi_probability needs Delta > 0");
  return rabi_alpha(p) * (1.0 - std::cos(omega_ana(p) * tau));
}

std::vector<double> nonadiabatic_modes(const RwaParameters& p) {
  const double w = omega_ana(p);
  return {0.0, w, p.omega - w, p.omega, p.omega + w};
}

std::vector<double> perturbative_modes(const AnnealModel& model, double omega, int order) {
  if (order != 1 && order != 2) {
    throw ContractViolation("perturbative order " + std::to_string(order) + " not supported");
  }
  const double delta = ground_truth(model).gap;
  std::vector<double> modes{2.0 * omega, std::abs(delta - omega), delta + omega};
  if (order == 2) modes.push_back(std::abs(delta - 2.0 * omega));
  return modes;
}

}  // namespace anneal_probe
