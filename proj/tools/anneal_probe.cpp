#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "anneal_probe/config.hpp"
#include "anneal_probe/errors.hpp"
#include "anneal_probe/pipeline.hpp"
#include "anneal_probe/verify.hpp"

namespace fs = std::filesystem;
using namespace anneal_probe;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUnidentifiable = 3;
constexpr int kExitNoDrive = 4;

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw ConfigError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream f(p);
  if (!f) throw ConfigError("cannot open " + p.string() + " for writing");
  return f;
}

std::string point_tag(double t_ann, double frac) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "T%g_f%g", t_ann, frac);
  return buf;
}

// Spectra of the last sweep stage, clipped a little above the peak window.
void write_stage_spectra(const fs::path& path, const PipelineResult& r) {
  if (r.stages.empty()) return;
  const auto& spectra = r.stages.back().spectra;
  double top = 0.0;
  for (const auto& s : spectra) top = std::max(top, s.omega);
  auto f = open_out(path);
  write_spectrum_csv(f, spectra, top);
}

int status_code(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return kExitOk;
    case RunStatus::Unidentifiable: return kExitUnidentifiable;
    case RunStatus::NoDrive: return kExitNoDrive;
  }
  return kExitFailure;
}

void print_summary(const PipelineResult& r, double t_ann, double frac) {
  std::printf("T_ann=%-6g t1/T=%-4g ", t_ann, frac);
  if (r.estimate) {
    std::printf("M=%.6g (true %.6g, %.3f%%)  Delta=%.6g (true %.6g, %.4f%%)\n", r.estimate->matrix_element_est,
                r.truth.matrix_element, 100.0 * r.estimate->rel_err_me, r.estimate->gap_est, r.truth.gap,
                100.0 * r.estimate->rel_err_gap);
  } else {
    std::printf("%s: %s\n", to_string(r.status).c_str(), r.diagnostic.c_str());
  }
  std::fflush(stdout);
}

struct CaseArgs {
  std::string label;
  std::optional<double> t_ann, t1_frac;
  double lambda_ratio = kDefaultLambdaRatio;
  std::string method;
  std::string out = ".";
  unsigned threads = 1;
};

int cmd_case(const CaseArgs& a) {
  const CaseLabel label = parse_case_label(a.label);
  const CasePreset preset = case_preset(label);
  if (a.lambda_ratio < 0.0) throw ConfigError("--lambda-ratio must be >= 0");
  const std::vector<double> t_anns = a.t_ann ? std::vector<double>{*a.t_ann} : preset.t_anns;
  const std::vector<double> fracs = a.t1_frac ? std::vector<double>{*a.t1_frac} : preset.t1_fractions;

  PipelineOptions opts;
  opts.method = a.method.empty() ? (label == CaseLabel::F ? PeakMethod::Modified : PeakMethod::TopPeak)
                                 : parse_peak_method(a.method);
  opts.sweep.threads = a.threads;

  const fs::path dir = fs::path(a.out) / (std::string("case_") + to_char(label));
  nlohmann::json points = nlohmann::json::array();
  double max_me = 0.0, max_gap = 0.0;
  int code = kExitOk;
  for (double t : t_anns) {
    for (double f : fracs) {
      const PipelineResult r = run_pipeline(preset.make(t, f, a.lambda_ratio), opts);
      print_summary(r, t, f);
      write_stage_spectra(dir / ("spectra_" + point_tag(t, f) + ".csv"), r);
      points.push_back(to_json(r, label));
      if (r.estimate) {
        max_me = std::max(max_me, r.estimate->rel_err_me);
        max_gap = std::max(max_gap, r.estimate->rel_err_gap);
      }
      code = std::max(code, status_code(r.status));
    }
  }
  nlohmann::json report{{"case", std::string(1, to_char(label))},
                        {"method", to_string(opts.method)},
                        {"lambda_ratio", a.lambda_ratio},
                        {"max_relative_errors", {{"matrix_element", max_me}, {"gap", max_gap}}},
                        {"points", points}};
  auto f = open_out(dir / "report.json");
  f << report.dump(2) << '\n';
  std::printf("max relative error: matrix element %.3f%%, gap %.4f%%\nreport: %s\n", 100.0 * max_me,
              100.0 * max_gap, (dir / "report.json").string().c_str());
  return code;
}

int cmd_spectrum(const std::string& config_path) {
  const RunConfig cfg = load_config(config_path);
  const PipelineOptions opts = cfg.pipeline_options();
  const SweepPlan plan = plan_sweep(cfg.model, opts);
  const auto runs = run_omega_sweep(cfg.model, plan.omegas, plan.grid, opts.sweep);
  std::vector<PowerSpectrum> spectra;
  double top = 0.0;
  for (const auto& run : runs) {
    spectra.push_back(power_spectrum(run, opts.padding));
    top = std::max(top, run.omega);
  }
  const fs::path dir(cfg.out);
  {
    auto f = open_out(dir / "spectrum.csv");
    write_spectrum_csv(f, spectra, 1.5 * top);
  }
  nlohmann::json axes{{"file", "spectrum.csv"},
                      {"x", {{"column", "omega"}, {"unit", "rad/ns"}, {"values", plan.omegas}}},
                      {"y", {{"column", "Omega"}, {"unit", "rad/ns"}, {"max", 1.5 * top},
                             {"bin_width", spectra.front().bin_width()}}},
                      {"z", {{"column", "magnitude"}, {"unit", "ns"}}},
                      {"resolution", spectra.front().resolution},
                      {"tau_grid", {{"n_samples", plan.grid.n_samples}, {"dtau", plan.grid.dtau}}}};
  auto f = open_out(dir / "spectrum_axes.json");
  f << axes.dump(2) << '\n';
  std::printf("%zu spectra written to %s\n", spectra.size(), (dir / "spectrum.csv").string().c_str());
  return kExitOk;
}

int cmd_estimate(const std::string& config_path) {
  const RunConfig cfg = load_config(config_path);
  const PipelineResult r = run_pipeline(cfg.model, cfg.pipeline_options());
  print_summary(r, cfg.model.t_ann, cfg.t1_fraction);
  const fs::path dir(cfg.out);
  write_stage_spectra(dir / "spectra.csv", r);
  auto f = open_out(dir / "report.json");
  f << to_json(r, cfg.case_label).dump(2) << '\n';
  std::printf("report: %s\n", (dir / "report.json").string().c_str());
  return status_code(r.status);
}

int cmd_verify(const std::vector<std::string>& only, const VerifyOptions& v) {
  const std::vector<std::string> ids = only.empty() ? criterion_ids() : only;
  bool all = true;
  for (const auto& id : ids) {
    const CriterionResult r = run_criterion(id, v);
    std::cout << format_result(r) << std::endl;
    all = all && r.pass;
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectroscopic estimation of annealing gaps and matrix elements"};
  app.require_subcommand(1);

  CaseArgs ca;
  auto* c = app.add_subcommand("case", "run a preset case over its (T_ann, t1/T_ann) grid");
  c->add_option("label", ca.label, "case label A..F")->required();
  c->add_option("--t-ann", ca.t_ann, "single annealing time in ns");
  c->add_option("--t1-frac", ca.t1_frac, "single t1/T_ann");
  c->add_option("--lambda-ratio", ca.lambda_ratio, "drive amplitude over T_ann")->capture_default_str();
  c->add_option("--method", ca.method, "top-peak or modified (default: modified for F)");
  c->add_option("--out", ca.out, "output directory")->capture_default_str();
  c->add_option("--threads", ca.threads, "worker threads")->capture_default_str();

  std::string spectrum_cfg, estimate_cfg;
  auto* s = app.add_subcommand("spectrum", "write the P(omega, Omega) grid of a config");
  s->add_option("--config", spectrum_cfg, "config file")->required()->check(CLI::ExistingFile);
  auto* e = app.add_subcommand("estimate", "run the estimation pipeline of a config");
  e->add_option("--config", estimate_cfg, "config file")->required()->check(CLI::ExistingFile);

  std::vector<std::string> only;
  VerifyOptions vo;
  auto* v = app.add_subcommand("verify", "run the acceptance suite");
  v->add_option("--only", only, "criterion ids to run");
  v->add_option("--dt-scale", vo.dt_scale, "integrator step multiplier")->capture_default_str();
  v->add_option("--tau-scale", vo.tau_scale, "record length multiplier")->capture_default_str();
  v->add_option("--threads", vo.threads, "worker threads")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*c) return cmd_case(ca);
    if (*s) return cmd_spectrum(spectrum_cfg);
    if (*e) return cmd_estimate(estimate_cfg);
    if (*v) return cmd_verify(only, vo);
  } catch (const std::exception& ex) {
    std::cerr << "anneal-probe: " << ex.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
