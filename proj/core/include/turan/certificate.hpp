#pragma once

#include <string>
#include <vector>

#include "turan/flags.hpp"
#include "turan/graph.hpp"
#include "turan/rational.hpp"

namespace turan {

using RatMatrix = std::vector<std::vector<Rat>>;

// Everything needed to re-verify an upper bound from scratch: the problem
// fingerprint, the claimed bound, and one PSD matrix per type (optionally
// with the factor that makes PSD checking an algebraic identity).
struct Certificate {
  int order = 0;
  int arity = 3;
  bool directed = false;
  ForbiddenFamily forbidden;
  std::vector<UniformGraph> targets;
  std::vector<std::string> admissible_keys;  // canonical keys, problem order
  Rat bound;
  std::vector<UniformGraph> types;
  std::vector<RatMatrix> q_matrices;
  std::vector<RatMatrix> r_factors;  // empty, or one factor per type
};

Certificate make_certificate(const DensityProblem& prob, const Rat& bound,
                             std::vector<RatMatrix> q_matrices,
                             std::vector<RatMatrix> r_factors = {});

// JSON with every rational rendered as an exact "p/q" string; no floats.
std::string certificate_to_json(const Certificate& c);
Certificate parse_certificate(const std::string& text);
void save_certificate(const Certificate& c, const std::string& path);
Certificate load_certificate(const std::string& path);

// Problem descriptor JSON (order/arity/directed/forbidden/target); loading
// re-assembles the full problem, so certificates can be checked against a
// freshly computed ground truth rather than stored coefficients.
std::string problem_to_json(const DensityProblem& prob);
void save_problem(const DensityProblem& prob, const std::string& path);
DensityProblem load_problem(const std::string& path);

// Exact PSD decision by rational LDL^T with largest-diagonal pivoting.
bool check_psd(const RatMatrix& m);

struct Verdict {
  bool valid = false;
  Rat certified_bound;
  std::size_t worst_graph = 0;  // constraint attaining the exact maximum
  std::string reason;           // failing invariant when not valid
};

// Fingerprint and dimension mismatches throw; PSD or constraint failures
// come back as an invalid verdict with the exact recomputed bound.
Verdict verify(const Certificate& cert, const DensityProblem& prob);

}  // namespace turan
