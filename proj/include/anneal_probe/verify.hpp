#pragma once

#include <algorithm>
#include <string>
#include <thread>
#include <vector>

namespace anneal_probe {

struct VerifyOptions {
  double dt_scale = 1.0;   // integrator step multiplier; large values are a negative control
  double tau_scale = 1.0;  // record-length multiplier; small values degrade resolution
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

struct CriterionResult {
  std::string id;     // "1" .. "9", "10a", "10b", "10c"
  std::string title;
  bool pass = false;
  std::string detail;
};

/// Identifiers of every acceptance criterion, in order.
std::vector<std::string> criterion_ids();

/// Runs one criterion. Unknown ids throw ConfigError; library errors raised
/// while running are reported as a failed criterion.
CriterionResult run_criterion(const std::string& id, const VerifyOptions& opts = {});

/// `[PASS] 3  title  detail` style line.
std::string format_result(const CriterionResult& r);

}  // namespace anneal_probe
