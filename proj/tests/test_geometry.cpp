#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "turan/geometry.hpp"
#include "turan/graph.hpp"
#include "turan/rational.hpp"

using namespace turan;

namespace {

std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
  return r;
}

int orient(const RatPoint& p, const RatPoint& q, const RatPoint& r) {
  Rat d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return sgn(d);
}

bool inside_triangle(const RatPoint& a, const RatPoint& b, const RatPoint& c, const RatPoint& p) {
  int s1 = orient(a, b, p), s2 = orient(b, c, p), s3 = orient(c, a, p);
  return s1 == s2 && s2 == s3 && s1 != 0;
}

// Independent distribution: enumerate every coloring of the bounded cells and
// read each triple's parity straight off the cell lists.
std::map<std::string, Rat> coloring_histogram(int h, std::uint64_t seed) {
  Arrangement ar = build_arrangement(h, seed);
  std::size_t nf = ar.faces.size();
  REQUIRE(nf <= 16);
  std::vector<std::uint32_t> tri_mask(ar.faces_in_triangle.size(), 0);
  for (std::size_t t = 0; t < tri_mask.size(); ++t)
    for (int f : ar.faces_in_triangle[t]) tri_mask[t] |= std::uint32_t(1) << f;

  std::map<std::string, Rat> hist;
  Rat unit(1, mpz_class(1) << nf);
  for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << nf); ++mask) {
    UniformGraph g(h, 3);
    for (int a = 0; a < h; ++a)
      for (int b = a + 1; b < h; ++b)
        for (int c = b + 1; c < h; ++c) {
          std::size_t t = UniformGraph::triple_slot(a, b, c);
          if (__builtin_popcount(mask & tri_mask[t]) & 1) g.add_edge(a, b, c);
        }
    hist[canonical_form(g).key()] += unit;
  }
  return hist;
}

}  // namespace

TEST_CASE("arrangements have the convex-position cell structure") {
  for (int h = 4; h <= 7; ++h) {
    Arrangement ar = build_arrangement(h, 7);
    CHECK(ar.points == h);
    CHECK(ar.circle.size() == std::size_t(h));
    CHECK(ar.crossings == choose(h, 4));
    CHECK(ar.vertices.size() == std::size_t(h) + ar.crossings);
    CHECK(ar.segments.size() == choose(h, 2) + 2 * choose(h, 4));
    CHECK(ar.faces.size() == 1 + choose(h, 2) - std::uint64_t(h) + choose(h, 4));
    CHECK(ar.euler_ok);
    CHECK(ar.faces_in_triangle.size() == choose(h, 3));
    for (const auto& cell_ids : ar.faces_in_triangle) CHECK(!cell_ids.empty());
    // every cell belongs to some triangle, with multiplicity summing over all
    std::set<int> seen;
    for (const auto& cell_ids : ar.faces_in_triangle)
      for (int f : cell_ids) seen.insert(f);
    CHECK(seen.size() == ar.faces.size());
  }
}

TEST_CASE("triangle cell lists agree with exact point-in-triangle tests") {
  for (int h : {4, 5, 6}) {
    Arrangement ar = build_arrangement(h, 3);
    std::size_t t = 0;
    for (int c = 2; c < h; ++c)
      for (int b = 1; b < c; ++b)
        for (int a = 0; a < b; ++a) {
          std::size_t slot = UniformGraph::triple_slot(a, b, c);
          std::set<int> listed(ar.faces_in_triangle[slot].begin(),
                               ar.faces_in_triangle[slot].end());
          std::set<int> inside;
          for (std::size_t f = 0; f < ar.faces.size(); ++f)
            if (inside_triangle(ar.circle[a], ar.circle[b], ar.circle[c], ar.faces[f].rep))
              inside.insert(int(f));
          CHECK(listed == inside);
          ++t;
        }
    CHECK(t == choose(h, 3));
  }
}

TEST_CASE("face representatives sit strictly inside their cells' triangles") {
  // combinatorics is seed-independent in convex position
  Arrangement a1 = build_arrangement(5, 1);
  Arrangement a2 = build_arrangement(5, 2026);
  CHECK(a1.faces.size() == a2.faces.size());
  CHECK(a1.crossings == a2.crossings);
  for (std::size_t t = 0; t < a1.faces_in_triangle.size(); ++t)
    CHECK(a1.faces_in_triangle[t].size() == a2.faces_in_triangle[t].size());
}

TEST_CASE("exact parity distribution matches the coloring brute force") {
  for (int h : {4, 5}) {
    auto rows = geometric_exact(h);
    auto hist = coloring_histogram(h, 17);
    Rat sum = 0;
    for (const auto& r : rows) {
      sum += r.prob;
      auto it = hist.find(canonical_form(r.rep).key());
      Rat want = it == hist.end() ? Rat(0) : it->second;
      CHECK(r.prob == want);
    }
    CHECK(sum == Rat(1));
    EnumerateOptions opt;
    opt.order = h;
    CHECK(rows.size() == enumerate_graphs(opt).size());
  }
}

TEST_CASE("parity distributions marginalize to the next smaller order") {
  auto rows4 = geometric_exact(4);
  auto rows5 = geometric_exact(5);
  auto rows6 = geometric_exact(6);

  for (const auto& r4 : rows4) {
    Rat sum = 0;
    for (const auto& r5 : rows5)
      if (sgn(r5.prob) != 0) sum += r5.prob * density(r4.rep, r5.rep);
    CHECK(sum == r4.prob);
  }
  for (const auto& r5 : rows5) {
    Rat sum = 0;
    for (const auto& r6 : rows6)
      if (sgn(r6.prob) != 0) sum += r6.prob * density(r5.rep, r6.rep);
    CHECK(sum == r5.prob);
  }

  // the edge marginal is 1/2 at every order
  UniformGraph edge3 = UniformGraph::parse("3:123");
  for (const auto* rows : {&rows4, &rows5, &rows6}) {
    Rat marg = 0;
    for (const auto& r : *rows)
      if (sgn(r.prob) != 0) marg += r.prob * density(edge3, r.rep);
    CHECK(marg == Rat(1, 2));
  }
}

TEST_CASE("sampling is reproducible and tracks the exact distribution") {
  GeometricSampleReport a = geometric_sample(6, 400, 99);
  GeometricSampleReport b = geometric_sample(6, 400, 99);
  CHECK(a.edge_mean == b.edge_mean);
  CHECK(a.edge_stderr == b.edge_stderr);
  REQUIRE(a.classes4.size() == b.classes4.size());
  for (std::size_t i = 0; i < a.classes4.size(); ++i) {
    CHECK(a.classes4[i].mean == b.classes4[i].mean);
    CHECK(a.classes4[i].rep == b.classes4[i].rep);
  }
  CHECK(std::abs(a.edge_mean - 0.5) < std::max(6 * a.edge_stderr, 0.05));

  double total4 = 0;
  for (const auto& s : a.classes4) total4 += s.mean;
  CHECK(total4 == doctest::Approx(1.0).epsilon(1e-9));
  double total5 = 0;
  for (const auto& s : a.classes5) total5 += s.mean;
  CHECK(total5 == doctest::Approx(1.0).epsilon(1e-9));

  // at n = 4 each trial is one draw from the exact law
  GeometricSampleReport c = geometric_sample(4, 3000, 5);
  auto rows4 = geometric_exact(4);
  std::map<std::string, double> exact4;
  for (const auto& r : rows4) exact4[canonical_form(r.rep).key()] = r.prob.get_d();
  for (const auto& s : c.classes4) {
    double want = exact4.at(canonical_form(s.rep).key());
    CHECK(std::abs(s.mean - want) < std::max(6 * s.stderr_, 0.05));
  }
}
