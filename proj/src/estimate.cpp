#include "anneal_probe/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "anneal_probe/errors.hpp"

namespace anneal_probe {

namespace {

void check_levels(const AnnealModel& model, const EigenSystem& es) {
  if (model.k < 0 || model.l < 0 || model.k >= model.dim() || model.l >= model.dim() ||
      model.k == model.l) {
    throw ContractViolation("level pair (" + std::to_string(model.k) + ", " +
                            std::to_string(model.l) + ") is not valid for dimension " +
                            std::to_string(model.dim()));
  }
  es.require_nondegenerate(model.k);
  es.require_nondegenerate(model.l);
}

double relative_error(double est, double truth) {
  if (truth == 0.0) return est == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(est - truth) / std::abs(truth);
}

}  // namespace

GroundTruth ground_truth(const AnnealModel& model) {
  const EigenSystem es = eigensystem(h_qa_at(model, model.t1, 0.0));
  check_levels(model, es);
  const Matrix hdot = hdot_qa(model).matrix();
  GroundTruth g;
  g.matrix_element = std::abs(es.state(model.l).dot(hdot * es.state(model.k)));
  g.gap = es.gap(model.k, model.l);
  g.criterion = g.matrix_element / (g.gap * g.gap);
  return g;
}

AdiabaticEstimate estimate_from_fit(const HyperbolaFit& fit, const AnnealModel& model,
                                    double resolution, double omega_step) {
  if (!fit.accepted) {
    throw UnidentifiableError("hyperbola fit not accepted" +
                              (fit.diagnostic.empty() ? std::string() : ": " + fit.diagnostic));
  }
  const double lambda = model.lambda();
  if (!(lambda > 0.0)) throw UnidentifiableError("no drive (lambda = 0)");
  const GroundTruth truth = ground_truth(model);
  AdiabaticEstimate e;
  e.matrix_element_est = fit.a / lambda;
  e.gap_est = fit.Delta;
  e.matrix_element_true = truth.matrix_element;
  e.gap_true = truth.gap;
  e.rel_err_me = relative_error(e.matrix_element_est, truth.matrix_element);
  e.rel_err_gap = relative_error(e.gap_est, truth.gap);
  e.resolution_me = resolution / lambda;
  e.resolution_gap = omega_step;
  e.criterion_value = truth.criterion;
  return e;
}

RawEstimate raw_estimate(std::span<const DispersionPoint> points, const AnnealModel& model) {
  if (points.empty()) throw PreconditionError("raw estimate needs at least one dispersion point");
  const auto it = std::min_element(points.begin(), points.end(),
                                   [](const auto& p, const auto& q) { return p.Omega < q.Omega; });
  return {it->Omega / model.lambda(), it->omega};
}

std::complex<double> a_mn_diagnostic(const AnnealModel& model, double t) {
  const EigenSystem es = eigensystem(h_qa_at(model, t));
  check_levels(model, es);
  const Matrix hdot = hdot_qa(model).matrix();
  const Complex element = es.state(model.l).dot(hdot * es.state(model.k));
  const double gap = es.gap(model.k, model.l);
  const auto gap_at = [&](double s) {
    return eigensystem(h_qa_at(model, s)).gap(model.k, model.l);
  };
  const double phase =
      t > 0.0 ? boost::math::quadrature::gauss_kronrod<double, 31>::integrate(gap_at, 0.0, t, 8, 1e-12)
              : 0.0;
  return element / (gap * gap) * std::polar(1.0, phase);
}

nlohmann::json to_json(const GroundTruth& truth) {
  return {{"matrix_element", truth.matrix_element},
          {"gap", truth.gap},
          {"criterion", truth.criterion}};
}

nlohmann::json to_json(const AdiabaticEstimate& e) {
  return {{"estimates", {{"matrix_element", e.matrix_element_est}, {"gap", e.gap_est}}},
          {"truth",
           {{"matrix_element", e.matrix_element_true},
            {"gap", e.gap_true},
            {"criterion", e.criterion_value}}},
          {"relative_errors", {{"matrix_element", e.rel_err_me}, {"gap", e.rel_err_gap}}},
          {"resolutions",
           {{"matrix_element", e.resolution_me},
            {"gap", e.resolution_gap},
            {"matrix_element_error_over_resolution",
             std::abs(e.matrix_element_est - e.matrix_element_true) / e.resolution_me},
            {"gap_error_over_resolution",
             e.resolution_gap > 0.0 ? std::abs(e.gap_est - e.gap_true) / e.resolution_gap : 0.0}}}};
}

}  // namespace anneal_probe
