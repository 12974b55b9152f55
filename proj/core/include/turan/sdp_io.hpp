#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "turan/certificate.hpp"
#include "turan/flags.hpp"

namespace turan {

struct SolverSolution {
  double bound = 0;
  std::vector<std::vector<std::vector<double>>> q;  // one symmetric matrix per type
};

// Sparse block-diagonal solver text format. Variables are (b, then the upper
// triangles of every Q); blocks are one PSD block per type plus a diagonal
// slack block with one entry per admissible graph. Every constraint row is
// scaled by the least common denominator of its coefficients, so the file
// contains exact integers only.
void export_problem(const DensityProblem& prob, std::ostream& os);
void export_problem(const DensityProblem& prob, const std::string& path);

// Reads the solver's solution file: the first line must carry exactly one
// value per variable (the minimizing vector); remaining lines are ignored.
SolverSolution import_solution(const DensityProblem& prob, std::istream& is);
SolverSolution import_solution(const DensityProblem& prob, const std::string& path);

// Turns a floating solution into an exact certificate: take a symmetric
// square root of each Q, round it entrywise to denominators <= denom_bound,
// square back (PSD by construction), and recompute the bound exactly as the
// max over constraints. Fails if some Q has an eigenvalue below -1e-6.
Certificate round_solution(const DensityProblem& prob, const SolverSolution& sol,
                           std::uint64_t denom_bound);

}  // namespace turan
