#pragma once

#include <cstdint>
#include <vector>

#include "turan/graph.hpp"
#include "turan/rational.hpp"

namespace turan {

struct OracleResult {
  int order = 0;
  std::uint64_t max_count = 0;
  Rat max_density;
  std::vector<UniformGraph> witnesses;  // attaining classes, canonical order
};

inline constexpr int kMaxOracleOrder3 = 6;
inline constexpr int kMaxOracleOrderDirected = 5;
inline constexpr int kMaxOracleOrder2 = 8;

// Exhaustive maximum of the induced target count over every admissible class
// of the given order. Deliberately the dumb path: enumerate, count, compare.
OracleResult turan_h_number(int order, const ForbiddenFamily& family,
                            const std::vector<UniformGraph>& targets, int arity = 3,
                            bool directed = false);

// max_count/C(n,h) for n in [lo, hi]; throws if the sequence ever increases
// (it is an average over subsets, so it cannot).
std::vector<Rat> density_sequence(const ForbiddenFamily& family,
                                  const std::vector<UniformGraph>& targets, int lo, int hi,
                                  int arity = 3, bool directed = false);

}  // namespace turan
