#pragma once

#include <vector>

#include "turan/graph.hpp"
#include "turan/rational.hpp"

namespace turan {

// A fully labeled type together with its flags (graphs on (N+s)/2 vertices
// whose first s vertices carry the type labels) and, once assembled, the
// averaged flag-pair density matrix for each admissible host graph.
struct TypeBlock {
  UniformGraph sigma;
  std::vector<UniformGraph> flags;
  // coeff[i][p][q]: expected product of the indicators that a random type
  // embedding plus disjoint extensions realize flags p and q inside host i.
  std::vector<std::vector<std::vector<Rat>>> coeff;
};

struct DensityProblem {
  int order = 0;
  int arity = 3;
  bool directed = false;
  ForbiddenFamily forbidden;
  std::vector<UniformGraph> targets;
  std::vector<UniformGraph> graphs;  // admissible classes, canonical order
  std::vector<Rat> target_density;   // induced target-family density per graph
  std::vector<TypeBlock> types;      // sorted by (type order, canonical key)
};

inline constexpr int kMaxFlagOrder3 = 6;
inline constexpr int kMaxFlagOrder2 = 8;
inline constexpr int kMaxFlagOrderDirected = 5;

// Types live on s vertices with s = order mod 2, s <= order-2; flags are
// deduplicated up to isomorphisms fixing the type labels pointwise.
std::vector<TypeBlock> enumerate_types_and_flags(int order, const ForbiddenFamily& forbidden,
                                                 int arity = 3, bool directed = false);

// Expectation over a uniform injective map theta of [s] into the host and
// uniform disjoint extension sets A, B of the product of indicators
// [host restricted to theta+A is flag1, fixing labels] * [same for B].
Rat flag_pair_density(const UniformGraph& host, const UniformGraph& sigma,
                      const UniformGraph& flag1, const UniformGraph& flag2);

// Any feasible (b, {Q_sigma PSD}) with b - d_i - sum_sigma <Q_sigma, coeff_i>
// >= 0 for all admissible i gives target density <= b in the limit.
DensityProblem assemble_problem(int order, const ForbiddenFamily& forbidden,
                                const std::vector<UniformGraph>& targets, int arity = 3,
                                bool directed = false);

}  // namespace turan
