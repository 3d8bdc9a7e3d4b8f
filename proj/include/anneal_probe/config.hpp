#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "anneal_probe/pipeline.hpp"

namespace anneal_probe {

/// Linear drive-frequency grid given explicitly in a config.
struct OmegaRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 51;
};

/// A parsed, validated run description: either a case preset at one
/// (T_ann, t1) point or a custom model, plus sweep and analysis controls.
struct RunConfig {
  std::optional<CaseLabel> case_label;  // empty for a custom model
  AnnealModel model;
  double t1_fraction = 0.0;              // as written; model.t1 = t1_fraction * T_ann
  double kappa = kDefaultDephasingRate;  // dephasing rate for open presets
  std::optional<OmegaRange> omega_range;
  PipelineOptions pipeline;  // omegas filled from omega_range by pipeline_options()
  std::string out = ".";

  PipelineOptions pipeline_options() const;
};

/// Parses the text format:
///
///     # comment
///     case = A            # or: qubits = 2 plus [driver] and [problem]
///     T_ann = 30
///     t1_fraction = 0.3
///
///     [driver]
///     0.5 XI
///     0.55 IX
///
/// Throws ConfigError with the offending line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize(c)) == c.
std::string serialize(const RunConfig& c);

/// Semantic equality: identical canonical forms.
bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace anneal_probe
