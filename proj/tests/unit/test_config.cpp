#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "anneal_probe/config.hpp"
#include "anneal_probe/errors.hpp"

using namespace anneal_probe;

namespace {
const char* kCustom = R"(# two-qubit custom model
qubits = 2
T_ann = 20
t1_fraction = 0.45
lambda_ratio = 0.02
fidelity_mode = full-evolution
noise_mode = open
method = modified
omega_min = 0.4
omega_max = 0.6
n_omega = 21
seed = 99
threads = 2
out = results/custom

[driver]
0.5 XI
0.55 IX

[problem]
0.5 ZZ
0.3 ZI

[lindblad]
0.001 ZI
0.002 IZ
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("preset config") {
  const RunConfig c = parse_config("case = C\nT_ann = 100\nt1_fraction = 0.5\nkappa = 0.004\n");
  REQUIRE(c.case_label);
  CHECK(*c.case_label == CaseLabel::C);
  CHECK(c.model.t1 == doctest::Approx(50.0));
  REQUIRE(c.model.lindblad.size() == 1);
  CHECK(c.model.lindblad[0].rate == 0.004);
}

TEST_CASE("custom config") {
  const RunConfig c = parse_config(kCustom);
  CHECK_FALSE(c.case_label);
  CHECK(c.model.n_qubits() == 2);
  CHECK(c.model.fidelity == FidelityMode::FullEvolution);
  CHECK(c.model.lindblad.size() == 2);
  CHECK(c.pipeline.method == PeakMethod::Modified);
  CHECK(c.pipeline.selection.seed == 99);
  const PipelineOptions o = c.pipeline_options();
  REQUIRE(o.omegas.size() == 21);
  CHECK(o.omegas.front() == 0.4);
  CHECK(o.omegas.back() == doctest::Approx(0.6));
  CHECK(o.sweep.threads == 2);
}

TEST_CASE("config round trip") {
  for (const std::string text : {std::string(kCustom), std::string("case = A\nT_ann = 30\nt1_fraction = 0.3\n"),
                                 std::string("case = F\nT_ann = 100\nt1_fraction = 0.1\nlambda_ratio = 0.0333\n")}) {
    const RunConfig c = parse_config(text);
    const RunConfig again = parse_config(serialize(c));
    CHECK(again == c);
    CHECK(serialize(again) == serialize(c));
  }
}

TEST_CASE("config errors carry line numbers") {
  CHECK(error_of("case = A\nT_ann = 30\nt1_fraction = 0.3\ncolour = red\n").find("line 4") != std::string::npos);
  CHECK(error_of("case = A\nT_ann = 30\nT_ann = 31\nt1_fraction = 0.3\n").find("line 3") != std::string::npos);
  CHECK_FALSE(error_of("case = A\nt1_fraction = 0.3\n").empty());
  CHECK_FALSE(error_of("case = A\nqubits = 1\nT_ann = 1\nt1_fraction = 0.3\n").empty());
  CHECK_FALSE(error_of("case = A\nT_ann = 30\nt1_fraction = 1.5\n").empty());
  CHECK_FALSE(error_of("case = A\nT_ann = 30\nt1_fraction = 0.3\nn_omega = 0\n").empty());
  CHECK_FALSE(error_of("qubits = 1\nT_ann = 30\nt1_fraction = 0.3\n[driver]\n0.5 Q\n[problem]\n0.4 Z\n").empty());
}

TEST_CASE("missing config file") {
  CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "anneal_probe_test.cfg";
  std::ofstream(path) << "case = B\nT_ann = 4\nt1_fraction = 0.2\n";
  CHECK(*load_config(path).case_label == CaseLabel::B);
  std::filesystem::remove(path);
}
