#include <algorithm>
#include <unordered_map>

#include "turan/errors.hpp"
#include "turan/graph.hpp"

namespace turan {

namespace {

// Copy g into a graph with one more vertex. Slots of the first k vertices
// keep their indices.
UniformGraph widen(const UniformGraph& g) {
  UniformGraph out(g.order() + 1, g.arity(), g.directed());
  for (std::size_t s = 0; s < g.slots(); ++s)
    if (g.slot_test(s)) out.slot_set(s);
  return out;
}

}  // namespace

std::vector<UniformGraph> extend_graphs(const std::vector<UniformGraph>& seeds,
                                        const ForbiddenFamily& family, bool allow_digons,
                                        int fixed_prefix) {
  std::unordered_map<BitVec, UniformGraph, BitVecHash> classes;
  for (const auto& parent : seeds) {
    UniformGraph base = widen(parent);
    int old_n = parent.order();
    if (fixed_prefix > old_n) throw InvalidError("fixed prefix exceeds seed order");

    auto keep = [&](UniformGraph& g) {
      if (!family.admits(g)) return;
      CanonicalForm cf = canonical_form(g, fixed_prefix);
      classes.try_emplace(cf.bits, cf.representative());
    };

    if (parent.arity() == 3) {
      std::vector<std::size_t> new_slots;
      for (int b = 1; b < old_n; ++b)
        for (int a = 0; a < b; ++a) new_slots.push_back(UniformGraph::triple_slot(a, b, old_n));
      std::uint64_t combos = std::uint64_t(1) << new_slots.size();
      for (std::uint64_t mask = 0; mask < combos; ++mask) {
        UniformGraph g = base;
        for (std::size_t i = 0; i < new_slots.size(); ++i)
          if ((mask >> i) & 1) g.slot_set(new_slots[i]);
        keep(g);
      }
    } else if (!parent.directed()) {
      std::uint64_t combos = std::uint64_t(1) << old_n;
      for (std::uint64_t mask = 0; mask < combos; ++mask) {
        UniformGraph g = base;
        for (int a = 0; a < old_n; ++a)
          if ((mask >> a) & 1) g.slot_set(UniformGraph::pair_slot(a, old_n));
        keep(g);
      }
    } else {
      // Each old vertex independently gets no arc, an out-arc, an in-arc,
      // or (opt-in) a digon with the new vertex.
      int states = allow_digons ? 4 : 3;
      std::uint64_t combos = 1;
      for (int i = 0; i < old_n; ++i) combos *= states;
      for (std::uint64_t code = 0; code < combos; ++code) {
        UniformGraph g = base;
        std::uint64_t c = code;
        for (int i = 0; i < old_n; ++i) {
          int st = static_cast<int>(c % states);
          c /= states;
          if (st == 1 || st == 3) g.slot_set(UniformGraph::arc_slot(old_n, i));
          if (st == 2 || st == 3) g.slot_set(UniformGraph::arc_slot(i, old_n));
        }
        keep(g);
      }
    }
  }
  std::vector<UniformGraph> out;
  out.reserve(classes.size());
  for (auto& [bits, g] : classes) out.push_back(std::move(g));
  std::sort(out.begin(), out.end(),
            [](const UniformGraph& a, const UniformGraph& b) { return a.bits() < b.bits(); });
  return out;
}

std::vector<UniformGraph> enumerate_graphs(const EnumerateOptions& opt) {
  if (opt.arity == 3) {
    if (opt.directed) throw InvalidError("directed graphs must have arity 2");
    if (opt.order > kMaxEnumerateOrder3)
      throw InvalidError("3-graph enumeration capped at order 7");
  } else if (opt.arity == 2) {
    if (opt.directed && opt.order > kMaxEnumerateOrderDirected)
      throw InvalidError("directed enumeration capped at order 5");
    if (!opt.directed && opt.order > kMaxEnumerateOrder2)
      throw InvalidError("2-graph enumeration capped at order 8");
  } else {
    throw InvalidError("arity must be 2 or 3");
  }
  if (opt.order < 0) throw InvalidError("negative order");
  for (const auto& m : opt.family.members)
    if (m.graph.arity() != opt.arity || m.graph.directed() != opt.directed)
      throw InvalidError("forbidden member arity or directedness mismatch");

  std::vector<UniformGraph> level;
  UniformGraph seed(0, opt.arity, opt.directed);
  if (opt.family.admits(seed)) level.push_back(seed);
  if (opt.order == 0 || level.empty()) return level;

  for (int k = 1; k <= opt.order && !level.empty(); ++k)
    level = extend_graphs(level, opt.family, opt.allow_digons, 0);
  return level;
}

}  // namespace turan
