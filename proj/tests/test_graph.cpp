#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "turan/errors.hpp"
#include "turan/graph.hpp"

using namespace turan;

namespace {

UniformGraph random_graph(std::mt19937_64& rng, int order, int arity, bool directed = false) {
  UniformGraph g(order, arity, directed);
  if (directed) {
    for (int b = 1; b < order; ++b)
      for (int a = 0; a < b; ++a) {
        switch (rng() % 3) {
          case 1: g.add_arc(a, b); break;
          case 2: g.add_arc(b, a); break;
          default: break;
        }
      }
  } else {
    for (std::size_t s = 0; s < g.slots(); ++s)
      if (rng() & 1) g.slot_set(s);
  }
  return g;
}

std::vector<int> random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Independent automorphism count: try all n! relabelings.
std::uint64_t brute_aut(const UniformGraph& g, int fixed_prefix = 0) {
  std::vector<int> p(g.order());
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    bool fixes = true;
    for (int i = 0; i < fixed_prefix; ++i) fixes = fixes && p[i] == i;
    if (fixes && g.relabeled(p) == g) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace

TEST_CASE("edge slots follow colex order with the prefix property") {
  CHECK(UniformGraph::pair_slot(0, 1) == 0);
  CHECK(UniformGraph::pair_slot(0, 2) == 1);
  CHECK(UniformGraph::pair_slot(1, 2) == 2);
  CHECK(UniformGraph::pair_slot(2, 3) == 5);
  CHECK(UniformGraph::triple_slot(0, 1, 2) == 0);
  CHECK(UniformGraph::triple_slot(0, 1, 3) == 1);
  CHECK(UniformGraph::triple_slot(0, 2, 3) == 2);
  CHECK(UniformGraph::triple_slot(1, 2, 3) == 3);
  CHECK(UniformGraph::triple_slot(2, 3, 4) == 9);
  CHECK(UniformGraph::arc_slot(0, 1) == 0);
  CHECK(UniformGraph::arc_slot(1, 0) == 1);
  CHECK(UniformGraph::arc_slot(0, 2) == 2);
  CHECK(UniformGraph::arc_slot(2, 0) == 3);

  // slots among the first c vertices fill [0, C(c,r)); vertex c starts there
  for (int c = 2; c < 9; ++c) {
    CHECK(UniformGraph::pair_slot(0, c) == UniformGraph::slot_count(c, 2, false));
    if (c >= 3) CHECK(UniformGraph::triple_slot(0, 1, c) == UniformGraph::slot_count(c, 3, false));
  }
  CHECK(UniformGraph::slot_count(5, 3, false) == 10);
  CHECK(UniformGraph::slot_count(5, 2, false) == 10);
  CHECK(UniformGraph::slot_count(5, 2, true) == 20);
}

TEST_CASE("parse and to_string round trip") {
  for (const char* text : {"4:123,124", "5:123,124,125,345", "3:", "d3:12,23,31", "d4:12,21",
                           "12:12a,2ab,1bc"}) {
    UniformGraph g = UniformGraph::parse(text);
    CHECK(UniformGraph::parse(g.to_string()) == g);
  }
  UniformGraph h7 = named_graph("H7");
  CHECK(UniformGraph::parse(h7.to_string()) == h7);

  UniformGraph e2 = UniformGraph::parse("3:12", 3);
  CHECK(e2.arity() == 2);  // token length wins over the hint
  CHECK(UniformGraph::parse("4:", 2).arity() == 2);

  CHECK_THROWS_AS(UniformGraph::parse("3:11"), InvalidError);
  CHECK_THROWS_AS(UniformGraph::parse("3:124"), InvalidError);
  CHECK_THROWS_AS(UniformGraph::parse("36:123"), InvalidError);
  CHECK_THROWS_AS(UniformGraph::parse("3:1!3"), InvalidError);
  CHECK_THROWS_AS(UniformGraph::parse("d3:123"), InvalidError);
}

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937_64 rng(7);
  struct Shape { int order, arity; bool directed; };
  for (Shape s : {Shape{6, 3, false}, Shape{7, 2, false}, Shape{5, 2, true}}) {
    for (int rep = 0; rep < 10; ++rep) {
      UniformGraph g = random_graph(rng, s.order, s.arity, s.directed);
      CanonicalForm base = canonical_form(g);
      for (int t = 0; t < 10; ++t) {
        UniformGraph h = g.relabeled(random_perm(rng, s.order));
        CanonicalForm cf = canonical_form(h);
        CHECK(cf == base);
        CHECK(cf.aut_size == base.aut_size);
      }
      // the representative is itself in canonical form
      CHECK(canonical_form(base.representative()) == base);
    }
  }
}

TEST_CASE("aut_size matches the brute permutation count") {
  std::mt19937_64 rng(11);
  CHECK(canonical_form(named_graph("K4")).aut_size == 24);
  CHECK(canonical_form(UniformGraph::parse("3:123")).aut_size == 6);
  CHECK(canonical_form(named_graph("C5")).aut_size == 10);
  CHECK(canonical_form(named_graph("H7")).aut_size == brute_aut(named_graph("H7")));
  for (int rep = 0; rep < 8; ++rep) {
    UniformGraph a = random_graph(rng, 5, 3);
    UniformGraph b = random_graph(rng, 6, 2);
    UniformGraph c = random_graph(rng, 4, 2, true);
    CHECK(canonical_form(a).aut_size == brute_aut(a));
    CHECK(canonical_form(b).aut_size == brute_aut(b));
    CHECK(canonical_form(c).aut_size == brute_aut(c));
  }
}

TEST_CASE("fixed-prefix canonical form counts prefix-fixing automorphisms") {
  UniformGraph k4 = named_graph("K4");
  CHECK(canonical_form(k4, 1).aut_size == 6);
  CHECK(canonical_form(k4, 2).aut_size == 2);
  CHECK(canonical_form(k4, 3).aut_size == 1);

  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 6; ++rep) {
    UniformGraph g = random_graph(rng, 5, 3);
    for (int fp = 1; fp <= 3; ++fp) {
      CHECK(canonical_form(g, fp).aut_size == brute_aut(g, fp));
      // relabelings fixing the prefix pointwise keep the rooted form
      std::vector<int> p(5);
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin() + fp, p.end(), rng);
      std::vector<int> inv(5);
      for (int i = 0; i < 5; ++i) inv[p[i]] = i;
      CHECK(canonical_form(g.relabeled(inv), fp) == canonical_form(g, fp));
    }
  }
}

TEST_CASE("induced keeps the requested vertex order") {
  UniformGraph g = UniformGraph::parse("4:123,124");
  UniformGraph ind = g.induced({3, 1, 0});
  CHECK(ind.order() == 3);
  CHECK(ind.edge_count() == 1);
  CHECK(ind.has_edge(0, 1, 2));  // the {1,2,4} edge survives in permuted form
  CHECK(g.induced({0, 1, 2}).edge_count() == 1);
  CHECK_THROWS_AS(g.induced({0, 0, 1}), InvalidError);

  UniformGraph d = UniformGraph::parse("d3:12,23");
  UniformGraph dind = d.induced({1, 2});
  CHECK(dind.has_arc(0, 1));
  CHECK_FALSE(dind.has_arc(1, 0));
}

TEST_CASE("H7 is 6-regular with 6-cycle links") {
  UniformGraph h7 = named_graph("H7");
  REQUIRE(h7.order() == 7);
  CHECK(h7.edge_count() == 14);
  for (auto [d, din] : h7.degrees()) CHECK(d == 6);
  for (int v = 0; v < 7; ++v) {
    UniformGraph lk = h7.link(v);
    CHECK(lk.order() == 6);
    CHECK(lk.edge_count() == 6);
    for (auto [d, din] : lk.degrees()) CHECK(d == 2);
    // 2-regular on 6 vertices is a 6-cycle iff connected
    std::vector<int> comp(6, -1);
    std::vector<int> stack = {0};
    comp[0] = 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w = 0; w < 6; ++w)
        if (w != u && lk.has_edge(std::min(u, w), std::max(u, w)) && comp[w] < 0) {
          comp[w] = 0;
          stack.push_back(w);
        }
    }
    CHECK(std::count(comp.begin(), comp.end(), 0) == 6);
  }
}

TEST_CASE("complement is an involution and density is self-dual") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    UniformGraph g = random_graph(rng, 6, 3);
    CHECK(g.complemented().complemented() == g);
    UniformGraph h = random_graph(rng, 4, 3);
    CHECK(density(h, g) == density(h.complemented(), g.complemented()));
  }
  for (int rep = 0; rep < 10; ++rep) {
    UniformGraph g = random_graph(rng, 7, 2);
    CHECK(g.complemented().complemented() == g);
    UniformGraph h = random_graph(rng, 3, 2);
    CHECK(density(h, g) == density(h.complemented(), g.complemented()));
  }
}

TEST_CASE("containment distinguishes subgraph and induced modes") {
  UniformGraph k5 = named_graph("K5");
  UniformGraph k4 = named_graph("K4");
  UniformGraph k4m = named_graph("K4-");
  CHECK(contains(k5, k4, ContainMode::kSubgraph));
  CHECK(contains(k5, k4m, ContainMode::kSubgraph));
  CHECK_FALSE(contains(k5, k4m, ContainMode::kInduced));
  CHECK(contains(k5, k5, ContainMode::kInduced));
  CHECK_FALSE(contains(k4, k5, ContainMode::kSubgraph));

  CHECK(induced_count(UniformGraph::parse("3:123"), k4) == 4);
  CHECK(density(UniformGraph::parse("3:123"), k4) == Rat(1));
  CHECK(induced_count(k4m, k5) == 0);

  // the 4.k families partition the 4-subsets of any 3-graph
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 5; ++rep) {
    UniformGraph g = random_graph(rng, 6, 3);
    Rat total = 0;
    for (int k = 0; k <= 4; ++k)
      total += family_density(named_family("4." + std::to_string(k)), g);
    CHECK(total == Rat(1));
  }
}

TEST_CASE("named graphs and families") {
  CHECK(is_isomorphic(named_graph("C4"), named_graph("K4")));
  CHECK(is_isomorphic(named_graph("C5"), UniformGraph::parse("5:123,234,345,145,125")));
  CHECK(is_isomorphic(named_graph("K4-"), UniformGraph::parse("4:123,124,134")));
  CHECK(is_isomorphic(named_graph("F32"), UniformGraph::parse("5:123,124,125,345")));
  CHECK(named_graph("H6").order() == 6);
  CHECK(named_graph("H6").edge_count() == 10);
  UniformGraph s3 = named_graph("S3");
  CHECK(s3.directed());
  CHECK(s3.has_arc(0, 1));
  CHECK(s3.has_arc(0, 2));
  CHECK(s3.edge_count() == 2);
  CHECK(named_family("4.2").size() == 1);
  CHECK(named_family("edge").size() == 1);
  CHECK_THROWS_AS(named_family("7.2"), InvalidError);
  CHECK_THROWS_AS(named_graph("K40"), InvalidError);
  CHECK_THROWS_AS(named_graph("nope"), InvalidError);
}

TEST_CASE("the out-star transform marks exactly the out-star triples") {
  CHECK(is_isomorphic(dto3_transform(named_graph("S3")), UniformGraph::parse("3:123")));

  UniformGraph tt3(3, 2, true);
  tt3.add_arc(0, 1);
  tt3.add_arc(0, 2);
  tt3.add_arc(1, 2);
  CHECK(dto3_transform(tt3).edge_count() == 0);

  UniformGraph d(4, 2, true);
  d.add_arc(0, 1);
  d.add_arc(0, 2);
  CHECK(dto3_transform(d).edge_count() == 1);
  CHECK(dto3_transform(d).has_edge(0, 1, 2));

  // triple-by-triple cross-check on random digraphs
  std::mt19937_64 rng(23);
  UniformGraph s3 = named_graph("S3");
  for (int rep = 0; rep < 10; ++rep) {
    UniformGraph dg = random_graph(rng, 6, 2, true);
    UniformGraph g = dto3_transform(dg);
    REQUIRE(g.order() == 6);
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        for (int c = b + 1; c < 6; ++c)
          CHECK(g.has_edge(a, b, c) == is_isomorphic(dg.induced({a, b, c}), s3));
  }
}
