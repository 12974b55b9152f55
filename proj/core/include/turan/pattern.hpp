#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "turan/graph.hpp"
#include "turan/rational.hpp"

namespace turan {

// A weighted blow-up pattern: parts, edge multisets over parts (ordered pairs
// when directed), optional recursive parts, and part weights summing to 1.
// Undirected loop edges {i,i,..,i} mark part i as internally complete; a part
// cannot be both recursive and loop-marked.
struct Pattern {
  int arity = 3;
  bool directed = false;
  int parts = 0;
  std::vector<std::array<int, 3>> edges;  // sorted multisets; [2] == -1 for arity 2
  std::vector<int> recursive;             // sorted distinct part ids
  std::vector<Rat> weights;               // size parts, sum 1

  bool is_recursive(int part) const;
  void validate() const;

  // "parts=2; weights=3/4,1/4; edges=112; recursive=2; directed=0"
  static Pattern parse(std::string_view text);
  std::string to_string() const;

  static Pattern balanced(int arity, bool directed, int parts,
                          const std::vector<std::array<int, 3>>& edges,
                          std::vector<int> recursive = {});
};

// All multisets (arity-sized, over the parts) absent from p; weights kept.
// Undirected, non-recursive patterns only.
Pattern complement_pattern(const Pattern& p);

// Probability that |V(H)| independent weight-distributed vertices of the
// blow-up of p induce a copy of H. Non-recursive patterns only.
Rat blowup_density(const Pattern& p, const UniformGraph& h);
double blowup_density(const Pattern& p, const std::vector<double>& weights,
                      const UniformGraph& h);

// Same in the iterated (recursive) construction; needs >= 1 recursive part.
Rat iterated_density(const Pattern& p, const UniformGraph& h);
double iterated_density(const Pattern& p, const std::vector<double>& weights,
                        const UniformGraph& h);

// Density of p's construction for a single target or a summed family,
// choosing the iterated evaluator exactly when p has recursive parts.
Rat pattern_density(const Pattern& p, const std::vector<UniformGraph>& targets);
double pattern_density(const Pattern& p, const std::vector<double>& weights,
                       const std::vector<UniformGraph>& targets);

struct OptimizeResult {
  std::vector<double> weights;
  DensityValue value;
};

// Maximize the construction density over the weight simplex: coarse grid,
// then local refinement (exact rational bracketing when only one weight is
// free). Ties prefer the lexicographically smallest weight vector.
OptimizeResult optimize_weights(const Pattern& p,
                                const std::vector<UniformGraph>& targets,
                                double tol = 1e-9);

// The t-part-free construction pattern: complement of the two-part chain
// blow-up on t-1 balanced parts. Its blow-up has no K_t homomorphism.
Pattern gt_pattern(int t);

// Is there a map V(g) -> parts sending every edge of g to an edge multiset?
bool pattern_hom_exists(const UniformGraph& g, const Pattern& p);

inline constexpr int kMaxBlowupOrder = 200;

// A concrete n-vertex realization: vertices are apportioned to parts by
// weight (largest remainder), recursive parts are filled by recursing to the
// given depth, with depth 1 the plain blow-up.
UniformGraph build_blowup(const Pattern& p, int n, int depth = 1);

}  // namespace turan
