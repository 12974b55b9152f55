#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "turan/errors.hpp"
#include "turan/graph.hpp"
#include "turan/pattern.hpp"
#include "turan/rational.hpp"

using namespace turan;

namespace {

// Independent evaluation: run over every ordered assignment of the target's
// vertices to parts and add up the weight of assignments inducing the target.
Rat direct_blowup(const Pattern& p, const UniformGraph& h) {
  int n = h.order();
  std::vector<int> asg(n, 0);
  auto listed = [&](std::array<int, 3> key) {
    return std::find(p.edges.begin(), p.edges.end(), key) != p.edges.end();
  };
  Rat total = 0;
  while (true) {
    UniformGraph g(n, p.arity, p.directed);
    if (p.arity == 3) {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c) {
            std::array<int, 3> key{asg[a], asg[b], asg[c]};
            std::sort(key.begin(), key.end());
            if (listed(key)) g.add_edge(a, b, c);
          }
    } else {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          if (p.directed) {
            if (listed({asg[a], asg[b], -1})) g.add_arc(a, b);
            if (listed({asg[b], asg[a], -1})) g.add_arc(b, a);
          } else {
            std::array<int, 3> key{std::min(asg[a], asg[b]), std::max(asg[a], asg[b]), -1};
            if (listed(key)) g.add_edge(a, b);
          }
        }
    }
    if (is_isomorphic(g, h)) {
      Rat w = 1;
      for (int v : asg) w *= p.weights[std::size_t(v)];
      total += w;
    }
    int i = 0;
    while (i < n && asg[i] == p.parts - 1) asg[i++] = 0;
    if (i == n) break;
    ++asg[i];
  }
  return total;
}

const char* kTuran = "parts=3; weights=1/3,1/3,1/3; edges=112,223,331,123";

std::vector<UniformGraph> classes_of(int order, int arity, bool directed = false) {
  EnumerateOptions opt;
  opt.order = order;
  opt.arity = arity;
  opt.directed = directed;
  return enumerate_graphs(opt);
}

}  // namespace

TEST_CASE("pattern parse and to_string round trip") {
  Pattern p = Pattern::parse("parts=2; weights=3/4,1/4; edges=112; recursive=2; directed=0");
  CHECK(p.parts == 2);
  CHECK(p.arity == 3);
  CHECK_FALSE(p.directed);
  REQUIRE(p.edges.size() == 1);
  CHECK(p.edges[0] == std::array<int, 3>{0, 0, 1});
  CHECK(p.recursive == std::vector<int>{1});
  CHECK(p.weights == std::vector<Rat>{Rat(3, 4), Rat(1, 4)});

  for (const char* text :
       {kTuran, "parts=2; weights=3/4,1/4; edges=112; recursive=2",
        "parts=2; weights=1/2,1/2; edges=12; recursive=1; directed=1",
        "parts=2; weights=1/3,2/3; edges=111,122"}) {
    Pattern q = Pattern::parse(text);
    Pattern r = Pattern::parse(q.to_string());
    CHECK(r.parts == q.parts);
    CHECK(r.edges == q.edges);
    CHECK(r.recursive == q.recursive);
    CHECK(r.weights == q.weights);
    CHECK(r.directed == q.directed);
  }

  CHECK_THROWS_AS(Pattern::parse("parts=2; weights=1/2,1/3; edges=12"), InvalidError);
  CHECK_THROWS_AS(Pattern::parse("parts=2; weights=1/2,1/2; edges=13"), InvalidError);
  CHECK_THROWS_AS(Pattern::parse("parts=2; weights=1/2,1/2; edges=111; recursive=1"),
                  InvalidError);

  Pattern b = Pattern::balanced(3, false, 3, {{{0, 0, 1}}});
  CHECK(b.weights == std::vector<Rat>(3, Rat(1, 3)));
}

TEST_CASE("blow-up density matches the direct assignment enumeration") {
  Pattern turan = Pattern::parse(kTuran);
  Pattern skew = Pattern::parse("parts=3; weights=1/2,1/3,1/6; edges=111,123,122");
  Pattern bip = Pattern::parse("parts=2; weights=2/5,3/5; edges=12");
  Pattern dir = Pattern::parse("parts=2; weights=1/4,3/4; edges=12; directed=1");

  for (const auto& h : classes_of(4, 3)) {
    CHECK(blowup_density(turan, h) == direct_blowup(turan, h));
    CHECK(blowup_density(skew, h) == direct_blowup(skew, h));
  }
  UniformGraph c5 = named_graph("C5");
  CHECK(blowup_density(turan, c5) == direct_blowup(turan, c5));

  for (const auto& h : classes_of(4, 2))
    CHECK(blowup_density(bip, h) == direct_blowup(bip, h));
  for (const auto& h : classes_of(3, 2, true))
    CHECK(blowup_density(dir, h) == direct_blowup(dir, h));
}

TEST_CASE("blow-up class densities of one order sum to one") {
  Pattern turan = Pattern::parse(kTuran);
  for (int n : {3, 4, 5}) {
    Rat total = 0;
    for (const auto& h : classes_of(n, 3)) total += blowup_density(turan, h);
    CHECK(total == Rat(1));
  }
  Pattern dir = Pattern::parse("parts=2; weights=1/4,3/4; edges=12; directed=1");
  Rat total = 0;
  for (const auto& h : classes_of(3, 2, true)) total += blowup_density(dir, h);
  CHECK(total == Rat(1));
}

TEST_CASE("floating-point weight overloads track the exact evaluator") {
  Pattern turan = Pattern::parse(kTuran);
  std::vector<double> w = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  UniformGraph k4m = named_graph("K4-");
  CHECK(blowup_density(turan, w, k4m) ==
        doctest::Approx(blowup_density(turan, k4m).get_d()).epsilon(1e-12));

  Pattern rec = Pattern::parse("parts=2; weights=3/4,1/4; edges=112; recursive=2");
  UniformGraph edge3 = UniformGraph::parse("3:123");
  CHECK(iterated_density(rec, {0.75, 0.25}, edge3) ==
        doctest::Approx(iterated_density(rec, edge3).get_d()).epsilon(1e-12));
}

TEST_CASE("complement pattern mirrors complement targets") {
  Pattern turan = Pattern::parse(kTuran);
  Pattern co = complement_pattern(turan);
  CHECK(co.edges.size() == 10 - turan.edges.size());  // multisets over 3 parts
  for (const auto& h : classes_of(5, 3))
    CHECK(blowup_density(co, h.complemented()) == blowup_density(turan, h));
}

TEST_CASE("recursive parts with weight zero reduce to the plain blow-up") {
  Pattern plain = Pattern::parse("parts=2; weights=2/3,1/3; edges=112");
  Pattern padded = Pattern::parse("parts=3; weights=2/3,1/3,0; edges=112; recursive=3");
  for (const auto& h : classes_of(4, 3))
    CHECK(iterated_density(padded, h) == blowup_density(plain, h));
}

TEST_CASE("iterated densities match hand-derived geometric series") {
  UniformGraph edge3 = UniformGraph::parse("3:123");

  // q = 3 w1^2 w2 / (1 - w2^3) at (3/4, 1/4)
  Pattern rec = Pattern::parse("parts=2; weights=3/4,1/4; edges=112; recursive=2");
  CHECK(iterated_density(rec, edge3) == Rat(3, 7));

  // both parts recursive: q = 3 w1^2 w2 + (w1^3 + w2^3) q
  Pattern both = Pattern::parse("parts=2; weights=1/2,1/2; edges=112; recursive=1,2");
  CHECK(iterated_density(both, edge3) == Rat(1, 2));

  // directed out-pair: q = 3 w1 w2^2 / (1 - w1^3)
  Pattern s2 = Pattern::parse("parts=2; weights=1/2,1/2; edges=12; recursive=1; directed=1");
  CHECK(iterated_density(s2, named_graph("S3")) == Rat(3, 7));

  // a single recursive part of weight one never terminates
  Pattern bad = Pattern::parse("parts=2; weights=1,0; edges=12; recursive=1; directed=1");
  CHECK_THROWS_AS(iterated_density(bad, named_graph("S3")), ComputeError);

  CHECK_THROWS_AS(blowup_density(rec, edge3), InvalidError);
  CHECK_THROWS_AS(iterated_density(Pattern::parse(kTuran), edge3), InvalidError);
}

TEST_CASE("finite builds converge to the limit densities") {
  UniformGraph edge3 = UniformGraph::parse("3:123");

  Pattern turan = Pattern::parse(kTuran);
  UniformGraph b30 = build_blowup(turan, 30);
  CHECK(b30.order() == 30);
  CHECK_FALSE(contains(b30, named_graph("K4"), ContainMode::kSubgraph));
  CHECK(std::abs(density(edge3, b30).get_d() - Rat(5, 9).get_d()) < 0.05);

  Pattern rec = Pattern::parse("parts=2; weights=3/4,1/4; edges=112; recursive=2");
  UniformGraph b64 = build_blowup(rec, 64, 4);
  CHECK(std::abs(density(edge3, b64).get_d() - Rat(3, 7).get_d()) < 0.02);

  Pattern s2 = Pattern::parse("parts=2; weights=1/2,1/2; edges=12; recursive=1; directed=1");
  UniformGraph d16 = build_blowup(s2, 16, 2);
  CHECK(d16.order() == 16);
  CHECK(std::abs(density(named_graph("S3"), d16).get_d() -
                 density(edge3, dto3_transform(d16)).get_d()) < 1e-15);
}

TEST_CASE("the optimizer reaches known maxima") {
  UniformGraph edge3 = UniformGraph::parse("3:123");

  // 3 w^2 (1-w) peaks at w = 2/3 with value 4/9
  Pattern plain = Pattern::parse("parts=2; weights=1/2,1/2; edges=112");
  OptimizeResult r1 = optimize_weights(plain, {edge3}, 1e-10);
  CHECK(r1.value.approx == doctest::Approx(4.0 / 9).epsilon(1e-8));
  CHECK(r1.weights[0] == doctest::Approx(2.0 / 3).epsilon(1e-5));

  // 3 w (1-w) / (1 + w + w^2) with w the non-recursive weight peaks at
  // 2 sqrt(3) - 3
  Pattern rec = Pattern::parse("parts=2; weights=1/2,1/2; edges=112; recursive=2");
  OptimizeResult r2 = optimize_weights(rec, {edge3}, 1e-10);
  CHECK(r2.value.approx == doctest::Approx(2 * std::sqrt(3.0) - 3).epsilon(1e-8));
  CHECK(r2.weights[1] == doctest::Approx((std::sqrt(3.0) - 1) / 2).epsilon(1e-5));
  CHECK(r2.value.error_bound < 1e-9);
}

TEST_CASE("chain patterns block the clique homomorphism") {
  for (int t = 3; t <= 6; ++t) {
    Pattern gt = gt_pattern(t);
    CHECK(gt.parts == t - 1);
    CHECK_FALSE(pattern_hom_exists(named_graph("K" + std::to_string(t)), gt));
    if (t > 3)
      CHECK(pattern_hom_exists(named_graph("K" + std::to_string(t - 1)), gt));
    UniformGraph b = build_blowup(gt, 12);
    CHECK_FALSE(contains(b, named_graph("K" + std::to_string(t)), ContainMode::kSubgraph));
  }
}

TEST_CASE("pattern homomorphism basics") {
  Pattern turan = Pattern::parse(kTuran);
  CHECK(pattern_hom_exists(UniformGraph::parse("3:123"), turan));
  CHECK_FALSE(pattern_hom_exists(named_graph("K4"), turan));
  Pattern two = Pattern::parse("parts=2; weights=1/2,1/2; edges=112");
  CHECK(pattern_hom_exists(UniformGraph::parse("3:123"), two));
  CHECK_FALSE(pattern_hom_exists(named_graph("K4"), two));
}
