#pragma once

#include <string>
#include <vector>

namespace turan {

struct ReproRow {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// The full reproduction battery: every row is a value the library must hit
// (exact rows compare rationals, floating rows use the pinned tolerances).
// Pure computation; all reference data is embedded.
std::vector<ReproRow> reproduce_rows();

// The certificate text shipped for the order-3 triangle-free edge problem.
const std::string& shipped_mantel_certificate();

}  // namespace turan
