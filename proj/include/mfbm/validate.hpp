#pragma once

#include <string>
#include <vector>

#include "mfbm/report.hpp"

namespace mfbm::validate {

struct Options {
  double tol_scale = 1.0;  // multiplies every tolerance; < 1 tightens
  bool quick = false;      // CI smoke: smaller grids and sample counts
};

struct CheckResult {
  std::string name;
  bool pass;
  std::string details;
  double seconds;
};

/// Run the module property suites (numcore, spectrum, oracle, smallball,
/// sampler).  Deterministic: repeated runs produce identical results.
std::vector<CheckResult> run_all(const Options& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

report::Json to_json(const std::vector<CheckResult>& results, const Options& opt);

}  // namespace mfbm::validate
