#include "turan/flags.hpp"

#include <algorithm>
#include <unordered_map>

#include "turan/errors.hpp"

namespace turan {

namespace {

void check_caps(int order, int arity, bool directed) {
  if (arity == 3) {
    if (directed) throw InvalidError("directed graphs must have arity 2");
    if (order > kMaxFlagOrder3) throw InvalidError("flag assembly capped at order 6 for 3-graphs");
  } else if (arity == 2) {
    if (directed && order > kMaxFlagOrderDirected)
      throw InvalidError("flag assembly capped at order 5 for directed graphs");
    if (!directed && order > kMaxFlagOrder2)
      throw InvalidError("flag assembly capped at order 8 for 2-graphs");
  } else {
    throw InvalidError("arity must be 2 or 3");
  }
  if (order < 2) throw InvalidError("problem order must be at least 2");
}

mpz_class falling(int n, int s) {
  mpz_class r = 1;
  for (int i = 0; i < s; ++i) r *= n - i;
  return r;
}

mpz_class choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

template <class Fn>
void for_each_injection(int n, int s, Fn&& fn) {
  std::vector<int> theta(static_cast<std::size_t>(s));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == s) {
      fn(theta);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      theta[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1);
      used[v] = 0;
    }
  };
  rec(rec, 0);
}

template <class Fn>
void for_each_ext(int n, int k, const std::vector<char>& excluded, Fn&& fn) {
  std::vector<int> pick;
  pick.reserve(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, int start, int left) -> void {
    if (left == 0) {
      fn(pick);
      return;
    }
    for (int v = start; v < n; ++v) {
      if (excluded[v]) continue;
      pick.push_back(v);
      self(self, v + 1, left - 1);
      pick.pop_back();
    }
  };
  rec(rec, 0, k);
}

void check_flag_prefix(const UniformGraph& flag, const UniformGraph& sigma) {
  int s = sigma.order();
  if (flag.arity() != sigma.arity() || flag.directed() != sigma.directed())
    throw InvalidError("flag and type arity or directedness mismatch");
  if (flag.order() < s) throw InvalidError("flag smaller than its type");
  std::vector<int> prefix(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) prefix[static_cast<std::size_t>(i)] = i;
  if (!(flag.induced(prefix) == sigma)) throw InvalidError("flag prefix does not match the type");
}

}  // namespace

std::vector<TypeBlock> enumerate_types_and_flags(int order, const ForbiddenFamily& forbidden,
                                                 int arity, bool directed) {
  check_caps(order, arity, directed);
  std::vector<TypeBlock> out;
  for (int s = order % 2; s <= order - 2; s += 2) {
    int m = (order + s) / 2;
    EnumerateOptions topt;
    topt.order = s;
    topt.arity = arity;
    topt.directed = directed;
    topt.family = forbidden;
    for (auto& sig : enumerate_graphs(topt)) {
      TypeBlock tb;
      tb.sigma = sig;
      std::vector<UniformGraph> level = {sig};
      for (int k = s; k < m && !level.empty(); ++k)
        level = extend_graphs(level, forbidden, false, s);
      tb.flags = std::move(level);
      if (!tb.flags.empty()) out.push_back(std::move(tb));
    }
  }
  return out;
}

Rat flag_pair_density(const UniformGraph& host, const UniformGraph& sigma,
                      const UniformGraph& flag1, const UniformGraph& flag2) {
  check_flag_prefix(flag1, sigma);
  check_flag_prefix(flag2, sigma);
  if (host.arity() != sigma.arity() || host.directed() != sigma.directed())
    throw InvalidError("host arity or directedness mismatch");
  int n = host.order(), s = sigma.order();
  int m1 = flag1.order(), m2 = flag2.order();
  if (m1 + m2 - s > n) throw InvalidError("host too small for both extensions");

  BitVec want1 = canonical_form(flag1, s).bits;
  BitVec want2 = canonical_form(flag2, s).bits;

  mpz_class hits = 0;
  for_each_injection(n, s, [&](const std::vector<int>& theta) {
    if (!(host.induced(theta) == sigma)) return;
    std::vector<char> excl(static_cast<std::size_t>(n), 0);
    for (int v : theta) excl[static_cast<std::size_t>(v)] = 1;
    for_each_ext(n, m1 - s, excl, [&](const std::vector<int>& a) {
      std::vector<int> verts = theta;
      verts.insert(verts.end(), a.begin(), a.end());
      if (!(canonical_form(host.induced(verts), s).bits == want1)) return;
      std::vector<char> excl2 = excl;
      for (int v : a) excl2[static_cast<std::size_t>(v)] = 1;
      for_each_ext(n, m2 - s, excl2, [&](const std::vector<int>& b) {
        std::vector<int> verts2 = theta;
        verts2.insert(verts2.end(), b.begin(), b.end());
        if (canonical_form(host.induced(verts2), s).bits == want2) ++hits;
      });
    });
  });

  mpz_class denom = falling(n, s) * choose(n - s, m1 - s) * choose(n - s - (m1 - s), m2 - s);
  Rat r(hits, denom);
  r.canonicalize();
  return r;
}

DensityProblem assemble_problem(int order, const ForbiddenFamily& forbidden,
                                const std::vector<UniformGraph>& targets, int arity,
                                bool directed) {
  check_caps(order, arity, directed);
  if (targets.empty()) throw InvalidError("no target graphs");
  for (const auto& t : targets) {
    if (t.arity() != arity || t.directed() != directed)
      throw InvalidError("target arity or directedness mismatch");
    if (t.order() > order) throw InvalidError("target larger than the problem order");
  }

  DensityProblem prob;
  prob.order = order;
  prob.arity = arity;
  prob.directed = directed;
  prob.forbidden = forbidden;
  prob.targets = targets;

  EnumerateOptions gopt;
  gopt.order = order;
  gopt.arity = arity;
  gopt.directed = directed;
  gopt.family = forbidden;
  prob.graphs = enumerate_graphs(gopt);
  if (prob.graphs.empty()) throw InvalidError("no admissible graphs at this order");

  prob.target_density.reserve(prob.graphs.size());
  for (const auto& g : prob.graphs) prob.target_density.push_back(family_density(targets, g));

  prob.types = enumerate_types_and_flags(order, forbidden, arity, directed);

  int n = order;
  for (auto& tb : prob.types) {
    int s = tb.sigma.order();
    int m = (order + s) / 2;
    std::size_t kf = tb.flags.size();

    std::unordered_map<BitVec, int, BitVecHash> flag_index;
    for (std::size_t i = 0; i < kf; ++i)
      flag_index.emplace(canonical_form(tb.flags[i], s).bits, static_cast<int>(i));
    std::unordered_map<BitVec, int, BitVecHash> raw_memo;  // induced bits -> flag index

    mpz_class denom = falling(n, s) * choose(n - s, m - s) * choose(n - m, m - s);
    tb.coeff.assign(prob.graphs.size(), {});

    for (std::size_t gi = 0; gi < prob.graphs.size(); ++gi) {
      const UniformGraph& host = prob.graphs[gi];
      std::vector<std::vector<std::uint64_t>> counts(kf, std::vector<std::uint64_t>(kf, 0));

      for_each_injection(n, s, [&](const std::vector<int>& theta) {
        if (!(host.induced(theta) == tb.sigma)) return;
        std::vector<char> excl(static_cast<std::size_t>(n), 0);
        for (int v : theta) excl[static_cast<std::size_t>(v)] = 1;
        // all extensions with their flag class and vertex mask
        std::vector<std::pair<std::uint32_t, int>> ext;
        for_each_ext(n, m - s, excl, [&](const std::vector<int>& a) {
          std::vector<int> verts = theta;
          verts.insert(verts.end(), a.begin(), a.end());
          UniformGraph sub = host.induced(verts);
          auto [it, fresh] = raw_memo.emplace(sub.bits(), -1);
          if (fresh) it->second = flag_index.at(canonical_form(sub, s).bits);
          std::uint32_t mask = 0;
          for (int v : a) mask |= 1u << v;
          ext.emplace_back(mask, it->second);
        });
        for (const auto& [ma, pa] : ext)
          for (const auto& [mb, pb] : ext)
            if (!(ma & mb)) ++counts[static_cast<std::size_t>(pa)][static_cast<std::size_t>(pb)];
      });

      auto& mat = tb.coeff[gi];
      mat.assign(kf, std::vector<Rat>(kf));
      for (std::size_t p = 0; p < kf; ++p)
        for (std::size_t q = 0; q < kf; ++q) {
          Rat v(mpz_class(counts[p][q]), denom);
          v.canonicalize();
          mat[p][q] = v;
        }
    }
  }
  return prob;
}

}  // namespace turan
