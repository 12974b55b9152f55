#include <doctest.h>

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "turan/reproduce.hpp"

// Runs the full embedded reproduction battery and reports one line per
// acceptance criterion. Tolerances live next to the reference values in the
// library; this binary only aggregates row outcomes.

TEST_CASE("every acceptance criterion passes") {
  std::vector<turan::ReproRow> rows = turan::reproduce_rows();
  REQUIRE(!rows.empty());

  std::map<int, std::pair<int, int>> tally;  // criterion -> (passed, total)
  std::vector<const turan::ReproRow*> failures;
  for (const auto& row : rows) {
    auto& [pass, total] = tally[row.criterion];
    ++total;
    if (row.passed) {
      ++pass;
    } else {
      failures.push_back(&row);
    }
  }

  for (const auto& [criterion, counts] : tally) {
    const auto& [pass, total] = counts;
    std::printf("criterion %d: %s (%d/%d rows)\n", criterion,
                pass == total ? "PASS" : "FAIL", pass, total);
  }
  std::fflush(stdout);

  for (const turan::ReproRow* row : failures) {
    FAIL_CHECK("criterion " << row->criterion << " row '" << row->name
                            << "' failed: " << row->detail);
  }
  CHECK(failures.empty());
}
