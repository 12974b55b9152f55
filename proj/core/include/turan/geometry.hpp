#pragma once

#include <cstdint>
#include <vector>

#include "turan/graph.hpp"
#include "turan/rational.hpp"

namespace turan {

struct RatPoint {
  Rat x, y;
};

// The subdivision of the convex hull of h points on the unit circle by all
// C(h,2) chords, built with exact rational arithmetic. Vertices are the
// circle points followed by the interior crossings.
struct Arrangement {
  int points = 0;
  std::vector<RatPoint> circle;                  // in ccw order
  std::vector<RatPoint> vertices;                // circle + crossings
  std::size_t crossings = 0;
  std::vector<std::array<int, 2>> segments;      // chord pieces between vertices
  struct Face {
    std::vector<int> boundary;  // vertex ids, ccw
    RatPoint rep;               // interior point (boundary centroid)
  };
  std::vector<Face> faces;                       // bounded cells only
  // For the triangle of each vertex triple (colex index), the ids of the
  // cells inside it.
  std::vector<std::vector<int>> faces_in_triangle;
  bool euler_ok = false;  // V - E + F == 2 with the outer face counted
};

// Draws circle points from rng (retrying degenerate configurations) and
// builds the subdivision.
Arrangement build_arrangement(int h, std::uint64_t seed);

struct GeometricClassProb {
  UniformGraph rep;
  Rat prob;
};

// Exact distribution of the parity construction: color the bounded cells
// with independent fair bits, make a triple an edge iff the bits of the
// cells inside its triangle xor to 1. Returns every isomorphism class on h
// vertices with nonzero probability (plus explicit zeros for the rest of
// the classes), probabilities dyadic and summing to 1. h in {4,5,6}.
std::vector<GeometricClassProb> geometric_exact(int h);

struct SampleStat {
  UniformGraph rep;
  double mean = 0;
  double stderr_ = 0;
};

struct GeometricSampleReport {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double edge_mean = 0, edge_stderr = 0;
  std::vector<SampleStat> classes4, classes5;
};

// Monte Carlo version on n points (4 <= n <= 12): per-trial RNG streams are
// derived from (seed, trial), so a fixed seed reproduces bit-identical
// output. Reports empirical densities of all 4- and 5-vertex classes with
// standard errors of the mean.
GeometricSampleReport geometric_sample(int n, int trials, std::uint64_t seed);

inline constexpr int kMaxGeometricSampleOrder = 12;

}  // namespace turan
