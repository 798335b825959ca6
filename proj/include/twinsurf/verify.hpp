#pragma once

#include <string>
#include <vector>

#include "twinsurf/catalog.hpp"
#include "twinsurf/report.hpp"

namespace twinsurf {

struct Check {
  std::string name;
  double value = 0.0;  // NaN when the stage threw
  double tol = 0.0;
  bool pass = false;
  std::string error;   // enum name of the exception, if any
};

struct VerifyReport {
  std::string surface;
  Params params;
  GridDomain grid;
  std::vector<Check> checks;
  bool pass = true;
};

/// Runs the invariant suite on a sampled catalog surface. Module errors do
/// not escape; they turn the affected checks into failures.
VerifyReport verify_all(const std::string& name, const Params& params, const GridDomain& grid);

Json to_json(const VerifyReport& r);

}  // namespace twinsurf
