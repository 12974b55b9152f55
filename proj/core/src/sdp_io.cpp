#include "turan/sdp_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "turan/errors.hpp"

namespace turan {

namespace {

struct VarLayout {
  std::size_t count = 1;             // variable 1 is the bound b
  std::vector<std::size_t> offset;   // first variable index of each type block
};

VarLayout layout_of(const DensityProblem& prob) {
  VarLayout l;
  for (const auto& tb : prob.types) {
    l.offset.push_back(l.count + 1);  // variables are 1-based in the format
    std::size_t kf = tb.flags.size();
    l.count += kf * (kf + 1) / 2;
  }
  return l;
}

// upper-triangle rank of (p,q), p <= q, within a kf x kf block
std::size_t tri_index(std::size_t p, std::size_t q, std::size_t kf) {
  return p * kf - p * (p - 1) / 2 + (q - p);
}

std::string z_str(const mpz_class& z) { return z.get_str(); }

}  // namespace

void export_problem(const DensityProblem& prob, std::ostream& os) {
  VarLayout layout = layout_of(prob);
  std::size_t nblocks = prob.types.size() + 1;
  std::size_t k = prob.graphs.size();

  // per-constraint integer scaling: lcm of every denominator in the row
  std::vector<mpz_class> lambda(k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    mpz_class l = prob.target_density[i].get_den();
    for (const auto& tb : prob.types) {
      std::size_t kf = tb.flags.size();
      for (std::size_t p = 0; p < kf; ++p)
        for (std::size_t q = p; q < kf; ++q) {
          Rat c = tb.coeff[i][p][q];
          if (p != q) c *= 2;
          mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        }
    }
    lambda[i] = l;
  }

  os << layout.count << "\n";
  os << nblocks << "\n";
  for (const auto& tb : prob.types) os << tb.flags.size() << " ";
  os << "-" << k << "\n";
  os << "1";
  for (std::size_t v = 1; v < layout.count; ++v) os << " 0";
  os << "\n";

  std::size_t slack_block = nblocks;
  // F_0: the constants, lambda_i * d_i on the slack diagonal
  for (std::size_t i = 0; i < k; ++i) {
    Rat c = prob.target_density[i] * Rat(lambda[i]);
    if (sgn(c) == 0) continue;
    os << "0 " << slack_block << " " << i + 1 << " " << i + 1 << " " << z_str(c.get_num()) << "\n";
  }
  // variable 1 (the bound): lambda_i on every slack diagonal entry
  for (std::size_t i = 0; i < k; ++i)
    os << "1 " << slack_block << " " << i + 1 << " " << i + 1 << " " << z_str(lambda[i]) << "\n";
  // Q entries: +1 in the type block, minus the scaled coefficient on slacks
  for (std::size_t t = 0; t < prob.types.size(); ++t) {
    const auto& tb = prob.types[t];
    std::size_t kf = tb.flags.size();
    for (std::size_t p = 0; p < kf; ++p)
      for (std::size_t q = p; q < kf; ++q) {
        std::size_t var = layout.offset[t] + tri_index(p, q, kf);
        os << var << " " << t + 1 << " " << p + 1 << " " << q + 1 << " 1\n";
        for (std::size_t i = 0; i < k; ++i) {
          Rat c = tb.coeff[i][p][q];
          if (p != q) c *= 2;
          c *= Rat(lambda[i]);
          if (sgn(c) == 0) continue;
          Rat neg = -c;
          os << var << " " << slack_block << " " << i + 1 << " " << i + 1 << " "
             << z_str(neg.get_num()) << "\n";
        }
      }
  }
  if (!os) throw ComputeError("problem export failed");
}

void export_problem(const DensityProblem& prob, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw InvalidError("cannot write " + path);
  export_problem(prob, os);
}

SolverSolution import_solution(const DensityProblem& prob, std::istream& is) {
  VarLayout layout = layout_of(prob);
  std::string line;
  if (!std::getline(is, line)) throw InvalidError("empty solution file");
  std::istringstream ls(line);
  std::vector<double> y;
  double v;
  while (ls >> v) y.push_back(v);
  if (y.size() != layout.count)
    throw InvalidError("solution has " + std::to_string(y.size()) + " variables, expected " +
                       std::to_string(layout.count));

  SolverSolution sol;
  sol.bound = y[0];
  for (std::size_t t = 0; t < prob.types.size(); ++t) {
    std::size_t kf = prob.types[t].flags.size();
    std::vector<std::vector<double>> q(kf, std::vector<double>(kf, 0.0));
    for (std::size_t p = 0; p < kf; ++p)
      for (std::size_t c = p; c < kf; ++c) {
        double val = y[layout.offset[t] + tri_index(p, c, kf) - 1];
        q[p][c] = val;
        q[c][p] = val;
      }
    sol.q.push_back(std::move(q));
  }
  return sol;
}

SolverSolution import_solution(const DensityProblem& prob, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidError("cannot read " + path);
  return import_solution(prob, is);
}

Certificate round_solution(const DensityProblem& prob, const SolverSolution& sol,
                           std::uint64_t denom_bound) {
  if (denom_bound < 1) throw InvalidError("denominator bound must be at least 1");
  if (sol.q.size() != prob.types.size()) throw InvalidError("solution type count mismatch");

  std::vector<RatMatrix> qs, rs;
  for (std::size_t t = 0; t < prob.types.size(); ++t) {
    std::size_t kf = prob.types[t].flags.size();
    if (sol.q[t].size() != kf) throw InvalidError("solution block size mismatch");
    for (const auto& row : sol.q[t])
      if (row.size() != kf) throw InvalidError("solution block size mismatch");

    Eigen::MatrixXd a(kf, kf);
    for (std::size_t i = 0; i < kf; ++i)
      for (std::size_t j = 0; j < kf; ++j)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            (sol.q[t][i][j] + sol.q[t][j][i]) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    if (eig.info() != Eigen::Success) throw ComputeError("eigendecomposition failed");
    Eigen::VectorXd ev = eig.eigenvalues();
    if (kf > 0 && ev.minCoeff() < -1e-6)
      throw ComputeError("solver matrix is too far from positive semidefinite");
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
    Eigen::MatrixXd root = eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().transpose();

    RatMatrix r(kf, std::vector<Rat>(kf));
    for (std::size_t i = 0; i < kf; ++i)
      for (std::size_t j = i; j < kf; ++j) {
        Rat v = rational_from_double(
            root(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), denom_bound);
        r[i][j] = v;
        r[j][i] = v;
      }
    RatMatrix q(kf, std::vector<Rat>(kf));
    for (std::size_t i = 0; i < kf; ++i)
      for (std::size_t j = 0; j < kf; ++j) {
        Rat s = 0;
        for (std::size_t l = 0; l < kf; ++l) s += r[i][l] * r[l][j];
        q[i][j] = s;
      }
    rs.push_back(std::move(r));
    qs.push_back(std::move(q));
  }

  Rat bound;
  bool first = true;
  for (std::size_t i = 0; i < prob.graphs.size(); ++i) {
    Rat val = prob.target_density[i];
    for (std::size_t t = 0; t < prob.types.size(); ++t) {
      const auto& d = prob.types[t].coeff[i];
      std::size_t kf = qs[t].size();
      for (std::size_t p = 0; p < kf; ++p)
        for (std::size_t c = 0; c < kf; ++c) val += qs[t][p][c] * d[p][c];
    }
    if (first || cmp(val, bound) > 0) {
      bound = val;
      first = false;
    }
  }
  return make_certificate(prob, bound, std::move(qs), std::move(rs));
}

}  // namespace turan
