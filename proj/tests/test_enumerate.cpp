#include <doctest.h>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "turan/errors.hpp"
#include "turan/graph.hpp"

using namespace turan;

namespace {

// Independent oracle: run over every labeled graph and deduplicate by
// canonical key. Kept deliberately dumb; only feasible for small orders.
std::set<std::string> brute_keys(int order, int arity, bool directed, bool allow_digons,
                                 const ForbiddenFamily& fam) {
  std::set<std::string> keys;
  if (!directed) {
    std::size_t slots = UniformGraph::slot_count(order, arity, false);
    REQUIRE(slots <= 16);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
      UniformGraph g(order, arity, false);
      for (std::size_t s = 0; s < slots; ++s)
        if (mask >> s & 1) g.slot_set(s);
      if (fam.admits(g)) keys.insert(canonical_form(g).key());
    }
    return keys;
  }
  int pairs = order * (order - 1) / 2;
  int states = allow_digons ? 4 : 3;
  std::vector<int> st(pairs, 0);
  while (true) {
    UniformGraph g(order, 2, true);
    int idx = 0;
    for (int b = 1; b < order; ++b)
      for (int a = 0; a < b; ++a, ++idx) {
        if (st[idx] == 1 || st[idx] == 3) g.add_arc(a, b);
        if (st[idx] == 2 || st[idx] == 3) g.add_arc(b, a);
      }
    if (fam.admits(g)) keys.insert(canonical_form(g).key());
    int i = 0;
    while (i < pairs && st[i] == states - 1) st[i++] = 0;
    if (i == pairs) break;
    ++st[i];
  }
  return keys;
}

std::set<std::string> keys_of(const std::vector<UniformGraph>& gs) {
  std::set<std::string> keys;
  for (const auto& g : gs) keys.insert(canonical_form(g).key());
  REQUIRE(keys.size() == gs.size());
  return keys;
}

std::vector<UniformGraph> enumerate(int order, int arity, bool directed = false,
                                    bool allow_digons = false, ForbiddenFamily fam = {}) {
  EnumerateOptions opt;
  opt.order = order;
  opt.arity = arity;
  opt.directed = directed;
  opt.allow_digons = allow_digons;
  opt.family = std::move(fam);
  return enumerate_graphs(opt);
}

ForbiddenFamily family_of(const UniformGraph& g, ContainMode mode) {
  ForbiddenFamily fam;
  fam.members.push_back({g, mode});
  return fam;
}

}  // namespace

TEST_CASE("enumeration matches the labeled brute force") {
  for (int n = 1; n <= 5; ++n)
    CHECK(keys_of(enumerate(n, 3)) == brute_keys(n, 3, false, false, {}));
  for (int n = 1; n <= 5; ++n)
    CHECK(keys_of(enumerate(n, 2)) == brute_keys(n, 2, false, false, {}));
  for (int n = 1; n <= 4; ++n)
    CHECK(keys_of(enumerate(n, 2, true)) == brute_keys(n, 2, true, false, {}));
  for (int n = 1; n <= 4; ++n)
    CHECK(keys_of(enumerate(n, 2, true, true)) == brute_keys(n, 2, true, true, {}));
}

TEST_CASE("enumeration matches the brute force under forbidden families") {
  ForbiddenFamily no_k4 = family_of(named_graph("K4"), ContainMode::kSubgraph);
  CHECK(keys_of(enumerate(5, 3, false, false, no_k4)) == brute_keys(5, 3, false, false, no_k4));

  ForbiddenFamily no_k4m_ind = family_of(named_graph("K4-"), ContainMode::kInduced);
  CHECK(keys_of(enumerate(5, 3, false, false, no_k4m_ind)) ==
        brute_keys(5, 3, false, false, no_k4m_ind));

  ForbiddenFamily no_tri = family_of(UniformGraph::parse("3:12,13,23"), ContainMode::kSubgraph);
  for (int n = 3; n <= 6; ++n)
    CHECK(keys_of(enumerate(n, 2, false, false, no_tri)) ==
          brute_keys(n, 2, false, false, no_tri));

  ForbiddenFamily no_s3 = family_of(named_graph("S3"), ContainMode::kInduced);
  CHECK(keys_of(enumerate(4, 2, true, false, no_s3)) == brute_keys(4, 2, true, false, no_s3));
}

TEST_CASE("class counts at orders past the brute-force range") {
  CHECK(enumerate(4, 3).size() == 5);
  CHECK(enumerate(5, 3).size() == 34);
  CHECK(enumerate(6, 3).size() == 2136);

  std::size_t counts2[] = {1, 2, 4, 11, 34, 156, 1044, 12346};
  for (int n = 1; n <= 8; ++n) CHECK(enumerate(n, 2).size() == counts2[n - 1]);

  CHECK(enumerate(3, 2, true).size() == 7);
  CHECK(enumerate(4, 2, true).size() == 42);
  CHECK(enumerate(5, 2, true).size() == 582);
  CHECK(enumerate(3, 2, true, true).size() == 16);
  CHECK(enumerate(4, 2, true, true).size() == 218);

  ForbiddenFamily no_tri = family_of(UniformGraph::parse("3:12,13,23"), ContainMode::kSubgraph);
  CHECK(enumerate(7, 2, false, false, no_tri).size() == 107);
  CHECK(enumerate(8, 2, false, false, no_tri).size() == 410);
}

TEST_CASE("enumeration output is canonical, sorted, and admissible") {
  ForbiddenFamily no_k4 = family_of(named_graph("K4"), ContainMode::kSubgraph);
  auto classes = enumerate(6, 3, false, false, no_k4);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    CHECK(canonical_form(classes[i]).representative() == classes[i]);
    CHECK(no_k4.admits(classes[i]));
    if (i > 0) CHECK(classes[i - 1].bits() < classes[i].bits());
  }
}

TEST_CASE("single-vertex extension reproduces the next order") {
  auto four = enumerate(4, 3);
  auto ext = extend_graphs(four, {});
  CHECK(keys_of(ext) == keys_of(enumerate(5, 3)));

  ForbiddenFamily no_tri = family_of(UniformGraph::parse("3:12,13,23"), ContainMode::kSubgraph);
  auto five = enumerate(5, 2, false, false, no_tri);
  CHECK(keys_of(extend_graphs(five, no_tri)) == keys_of(enumerate(6, 2, false, false, no_tri)));
}

TEST_CASE("enumeration order caps") {
  CHECK_THROWS_AS(enumerate(8, 3), InvalidError);
  CHECK_THROWS_AS(enumerate(9, 2), InvalidError);
  CHECK_THROWS_AS(enumerate(6, 2, true), InvalidError);
  CHECK_THROWS_AS(enumerate(-1, 3), InvalidError);
  CHECK(enumerate(0, 3).size() == 1);
}
