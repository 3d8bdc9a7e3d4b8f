#include <doctest.h>

#include "anneal_probe/errors.hpp"
#include "anneal_probe/pipeline.hpp"

using namespace anneal_probe;

TEST_CASE("case A point is estimated within tolerance") {
  const AnnealModel m = case_preset(CaseLabel::A).make(30.0, 0.3);
  const PipelineResult r = run_pipeline(m);
  REQUIRE(r.status == RunStatus::Ok);
  REQUIRE(r.estimate);
  CHECK(r.estimate->rel_err_me <= 0.015);
  CHECK(r.estimate->rel_err_gap <= 0.0015);
  CHECK(r.stages.size() == 2);

  const auto& top = r.stages.front();
  for (const auto& p : top.selection.points) {
    CHECK(std::abs(p.Omega - std::hypot(m.lambda() * r.truth.matrix_element, p.omega - r.truth.gap)) <=
          top.spectra.front().resolution);
  }

  const nlohmann::json j = to_json(r, CaseLabel::A);
  CHECK(j["case"] == "A");
  CHECK(j["status"] == "ok");
  CHECK(j.contains("seed"));
  CHECK(j["relative_errors"]["matrix_element"].get<double>() == r.estimate->rel_err_me);
}

TEST_CASE("reports are deterministic") {
  const AnnealModel m = case_preset(CaseLabel::A).make(100.0, 0.7);
  PipelineOptions o;
  o.zoom_factor = 0.0;
  CHECK(to_json(run_pipeline(m, o)).dump() == to_json(run_pipeline(m, o)).dump());
}

TEST_CASE("no drive is flagged") {
  const AnnealModel m = case_preset(CaseLabel::A).make(30.0, 0.3, 0.0);
  const PipelineResult r = run_pipeline(m);
  CHECK(r.status == RunStatus::NoDrive);
  CHECK_FALSE(r.estimate);
}

TEST_CASE("enum spellings") {
  CHECK(parse_peak_method("modified") == PeakMethod::Modified);
  CHECK(to_string(PeakMethod::TopPeak) == "top-peak");
  CHECK(parse_run_mode("blind") == RunMode::Blind);
  CHECK_THROWS_AS(parse_peak_method("best"), ConfigError);
}
