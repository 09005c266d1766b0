#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siegel/io.hpp"

namespace siegel {

struct SuiteOptions {
  uint64_t seed = 1;
  int trials = 50;  // random instances per section 5 identity
  uint64_t gauss_budget = default_gauss_budget();
};

struct CheckResult {
  std::string name;
  int criterion = 0;  // acceptance item, 0 for extra checks
  long long cases = 0, failures = 0;
  json failing = json::array();  // first few failing instances
  json summary = json::object();
  double seconds = 0;
  bool passed() const { return failures == 0 && cases > 0; }

  void record(bool ok, const json& detail = {});
};

struct SuiteReport {
  std::string suite;
  SuiteOptions options;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool passed() const;
  // timings are left out unless asked for, so reports are reproducible byte for byte
  json to_json(bool with_timings = false) const;
};

const std::vector<std::string>& suite_names();  // gauss, sym, theta, cusps, hecke, all
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {});

}  // namespace siegel
