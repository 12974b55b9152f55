#include "turan/oracle.hpp"

#include "turan/errors.hpp"

namespace turan {

namespace {

void check_caps(int order, int arity, bool directed) {
  if (arity == 3 && order > kMaxOracleOrder3)
    throw InvalidError("oracle capped at order 6 for 3-graphs");
  if (arity == 2 && directed && order > kMaxOracleOrderDirected)
    throw InvalidError("oracle capped at order 5 for directed graphs");
  if (arity == 2 && !directed && order > kMaxOracleOrder2)
    throw InvalidError("oracle capped at order 8 for 2-graphs");
}

}  // namespace

OracleResult turan_h_number(int order, const ForbiddenFamily& family,
                            const std::vector<UniformGraph>& targets, int arity, bool directed) {
  check_caps(order, arity, directed);
  if (targets.empty()) throw InvalidError("no target graphs");
  int h = targets[0].order();
  for (const auto& t : targets) {
    if (t.order() != h) throw InvalidError("target family members must share their order");
    if (t.arity() != arity || t.directed() != directed)
      throw InvalidError("target arity or directedness mismatch");
  }
  if (h > order) throw InvalidError("target larger than the host order");

  EnumerateOptions opt;
  opt.order = order;
  opt.arity = arity;
  opt.directed = directed;
  opt.family = family;
  auto classes = enumerate_graphs(opt);
  if (classes.empty()) throw InvalidError("no admissible graphs at this order");

  OracleResult res;
  res.order = order;
  bool first = true;
  std::vector<std::uint64_t> counts(classes.size(), 0);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::uint64_t c = 0;
    for (const auto& t : targets) c += induced_count(t, classes[i]);
    counts[i] = c;
    if (first || c > res.max_count) {
      res.max_count = c;
      first = false;
    }
  }
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (counts[i] == res.max_count) res.witnesses.push_back(classes[i]);

  mpz_class total;
  mpz_bin_uiui(total.get_mpz_t(), static_cast<unsigned long>(order),
               static_cast<unsigned long>(h));
  Rat d(mpz_class(static_cast<unsigned long>(res.max_count)), total);
  d.canonicalize();
  res.max_density = d;
  return res;
}

std::vector<Rat> density_sequence(const ForbiddenFamily& family,
                                  const std::vector<UniformGraph>& targets, int lo, int hi,
                                  int arity, bool directed) {
  if (lo > hi) throw InvalidError("empty order range");
  std::vector<Rat> seq;
  for (int n = lo; n <= hi; ++n) {
    seq.push_back(turan_h_number(n, family, targets, arity, directed).max_density);
    if (seq.size() >= 2 && cmp(seq[seq.size() - 2], seq.back()) < 0)
      throw ComputeError("density sequence increased between consecutive orders");
  }
  return seq;
}

}  // namespace turan
