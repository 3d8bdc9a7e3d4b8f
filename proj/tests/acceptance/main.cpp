#include <CLI11.hpp>

#include <iostream>

#include "anneal_probe/verify.hpp"

using namespace anneal_probe;

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria, one line per criterion"};
  std::vector<std::string> only;
  VerifyOptions v;
  app.add_option("--only", only, "criterion ids");
  app.add_option("--dt-scale", v.dt_scale, "integrator step multiplier");
  app.add_option("--tau-scale", v.tau_scale, "record length multiplier");
  app.add_option("--threads", v.threads, "worker threads");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (const auto& id : only.empty() ? criterion_ids() : only) {
    const CriterionResult r = run_criterion(id, v);
    std::cout << format_result(r) << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
