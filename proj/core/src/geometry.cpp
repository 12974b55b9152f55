#include "turan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "turan/bits.hpp"
#include "turan/errors.hpp"
#include "turan/parallel.hpp"

namespace turan {

namespace {

int rsgn(const Rat& v) { return sgn(v); }

struct PointKey {
  Rat x, y;
  bool operator<(const PointKey& o) const {
    int c = cmp(x, o.x);
    if (c != 0) return c < 0;
    return cmp(y, o.y) < 0;
  }
};

struct ChordLine {
  int a = 0, b = 0;        // circle point ids
  Rat la, lb, lc;          // la*x + lb*y = lc
  std::vector<int> cross;  // interior vertex ids on this chord
};

int side_of(const ChordLine& c, const RatPoint& p) {
  Rat v = c.la * p.x + c.lb * p.y - c.lc;
  return rsgn(v);
}

bool strictly_between(const Rat& lo, const Rat& v, const Rat& hi) {
  if (cmp(lo, hi) < 0) return cmp(lo, v) < 0 && cmp(v, hi) < 0;
  return cmp(hi, v) < 0 && cmp(v, lo) < 0;
}

// q is known to lie on the line of c; true if strictly inside the segment.
bool inside_segment(const ChordLine& c, const std::vector<RatPoint>& circle, const RatPoint& q) {
  const RatPoint& pa = circle[c.a];
  const RatPoint& pb = circle[c.b];
  if (cmp(pa.x, pb.x) != 0) return strictly_between(pa.x, q.x, pb.x);
  return strictly_between(pa.y, q.y, pb.y);
}

// ccw order of direction vectors, starting from +x axis
bool dir_less(const Rat& dx1, const Rat& dy1, const Rat& dx2, const Rat& dy2) {
  auto half = [](const Rat& dx, const Rat& dy) {
    int sy = sgn(dy);
    if (sy > 0 || (sy == 0 && sgn(dx) > 0)) return 0;
    return 1;
  };
  int h1 = half(dx1, dy1), h2 = half(dx2, dy2);
  if (h1 != h2) return h1 < h2;
  Rat cr = dx1 * dy2 - dx2 * dy1;
  return sgn(cr) > 0;
}

constexpr int kc2(int n) { return n * (n - 1) / 2; }
constexpr int kc3(int n) { return n * (n - 1) * (n - 2) / 6; }

// One attempt with fresh random circle points; false on a degenerate draw.
bool try_build(int h, std::mt19937_64& rng, Arrangement& arr) {
  arr = Arrangement{};
  arr.points = h;

  std::set<long> seen;
  std::vector<Rat> ts;
  while (static_cast<int>(ts.size()) < h) {
    long num = static_cast<long>(rng() % (1ull << 13)) - (1l << 12);
    if (!seen.insert(num).second) continue;
    Rat t(num, 256);
    t.canonicalize();
    ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end(), [](const Rat& u, const Rat& v) { return cmp(u, v) < 0; });
  arr.circle.resize(h);
  for (int i = 0; i < h; ++i) {
    Rat t = ts[i];
    Rat d = 1 + t * t;
    arr.circle[i].x = Rat(1 - t * t) / d;
    arr.circle[i].y = Rat(2 * t) / d;
  }

  int m = kc2(h);
  std::vector<ChordLine> chords(m);
  for (int b = 1; b < h; ++b)
    for (int a = 0; a < b; ++a) {
      ChordLine& c = chords[kc2(b) + a];
      c.a = a;
      c.b = b;
      c.la = arr.circle[b].y - arr.circle[a].y;
      c.lb = arr.circle[a].x - arr.circle[b].x;
      c.lc = c.la * arr.circle[a].x + c.lb * arr.circle[a].y;
    }

  arr.vertices = arr.circle;
  std::map<PointKey, int> cross_id;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const ChordLine& u = chords[i];
      const ChordLine& v = chords[j];
      if (u.a == v.a || u.a == v.b || u.b == v.a || u.b == v.b) continue;
      Rat det = u.la * v.lb - v.la * u.lb;
      if (sgn(det) == 0) continue;
      RatPoint q;
      q.x = Rat(u.lc * v.lb - v.lc * u.lb) / det;
      q.y = Rat(u.la * v.lc - v.la * u.lc) / det;
      if (!inside_segment(u, arr.circle, q) || !inside_segment(v, arr.circle, q)) continue;
      auto [it, fresh] = cross_id.emplace(PointKey{q.x, q.y}, static_cast<int>(arr.vertices.size()));
      if (!fresh) return false;  // three chords through one point
      arr.vertices.push_back(q);
      chords[i].cross.push_back(it->second);
      chords[j].cross.push_back(it->second);
    }
  arr.crossings = arr.vertices.size() - static_cast<std::size_t>(h);
  std::size_t expect_x = h >= 4 ? static_cast<std::size_t>(kc2(h) * (h - 2) * (h - 3) / 12) : 0;
  if (arr.crossings != expect_x) return false;  // C(h,4) interleaving pairs must all cross

  for (ChordLine& c : chords) {
    std::vector<int> line;
    line.push_back(c.a);
    line.insert(line.end(), c.cross.begin(), c.cross.end());
    line.push_back(c.b);
    Rat dx = arr.circle[c.b].x - arr.circle[c.a].x;
    Rat dy = arr.circle[c.b].y - arr.circle[c.a].y;
    std::sort(line.begin(), line.end(), [&](int p, int q) {
      Rat tp = dx * arr.vertices[p].x + dy * arr.vertices[p].y;
      Rat tq = dx * arr.vertices[q].x + dy * arr.vertices[q].y;
      return cmp(tp, tq) < 0;
    });
    for (std::size_t k = 0; k + 1 < line.size(); ++k)
      arr.segments.push_back({line[k], line[k + 1]});
  }

  int nv = static_cast<int>(arr.vertices.size());
  std::vector<std::vector<int>> nbr(nv);
  for (const auto& s : arr.segments) {
    nbr[s[0]].push_back(s[1]);
    nbr[s[1]].push_back(s[0]);
  }
  for (int v = 0; v < nv; ++v) {
    std::sort(nbr[v].begin(), nbr[v].end(), [&](int p, int q) {
      Rat dx1 = arr.vertices[p].x - arr.vertices[v].x;
      Rat dy1 = arr.vertices[p].y - arr.vertices[v].y;
      Rat dx2 = arr.vertices[q].x - arr.vertices[v].x;
      Rat dy2 = arr.vertices[q].y - arr.vertices[v].y;
      return dir_less(dx1, dy1, dx2, dy2);
    });
  }

  // trace each face keeping its interior on the left
  std::vector<std::vector<char>> used(nv);
  for (int v = 0; v < nv; ++v) used[v].assign(nbr[v].size(), 0);
  int outer = 0;
  for (int v0 = 0; v0 < nv; ++v0)
    for (std::size_t k0 = 0; k0 < nbr[v0].size(); ++k0) {
      if (used[v0][k0]) continue;
      std::vector<int> cyc;
      int cu = v0;
      std::size_t ck = k0;
      do {
        used[cu][ck] = 1;
        cyc.push_back(cu);
        int nx = nbr[cu][ck];
        std::size_t j = 0;
        while (nbr[nx][j] != cu) ++j;
        std::size_t deg = nbr[nx].size();
        cu = nx;
        ck = (j + deg - 1) % deg;
      } while (!(cu == v0 && ck == k0));
      Rat area2 = 0;
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        const RatPoint& p = arr.vertices[cyc[k]];
        const RatPoint& q = arr.vertices[cyc[(k + 1) % cyc.size()]];
        area2 += p.x * q.y - q.x * p.y;
      }
      int s = rsgn(area2);
      if (s == 0) return false;
      if (s < 0) {
        ++outer;
        continue;
      }
      Arrangement::Face f;
      f.boundary = cyc;
      Rat sx = 0, sy = 0;
      for (int vid : cyc) {
        sx += arr.vertices[vid].x;
        sy += arr.vertices[vid].y;
      }
      f.rep.x = sx / static_cast<long>(cyc.size());
      f.rep.y = sy / static_cast<long>(cyc.size());
      arr.faces.push_back(std::move(f));
    }

  std::size_t want_faces = 1 + static_cast<std::size_t>(kc2(h)) - h + arr.crossings;
  arr.euler_ok = outer == 1 && arr.faces.size() == want_faces &&
                 static_cast<long>(arr.vertices.size()) - static_cast<long>(arr.segments.size()) +
                         static_cast<long>(arr.faces.size() + 1) ==
                     2;
  if (!arr.euler_ok) return false;

  // sign tables: cells and circle points against every chord line
  int nf = static_cast<int>(arr.faces.size());
  std::vector<std::vector<signed char>> fside(nf, std::vector<signed char>(m));
  std::vector<std::vector<signed char>> pside(h, std::vector<signed char>(m));
  for (int c = 0; c < m; ++c) {
    for (int f = 0; f < nf; ++f) {
      int s = side_of(chords[c], arr.faces[f].rep);
      if (s == 0) return false;  // cell interiors never meet a chord line
      fside[f][c] = static_cast<signed char>(s);
    }
    for (int p = 0; p < h; ++p)
      pside[p][c] = static_cast<signed char>(side_of(chords[c], arr.circle[p]));
  }

  arr.faces_in_triangle.assign(kc3(h), {});
  for (int c = 2; c < h; ++c)
    for (int b = 1; b < c; ++b)
      for (int a = 0; a < b; ++a) {
        int tid = kc3(c) + kc2(b) + a;
        int ab = kc2(b) + a, ac = kc2(c) + a, bc = kc2(c) + b;
        for (int f = 0; f < nf; ++f)
          if (fside[f][ab] == pside[c][ab] && fside[f][ac] == pside[b][ac] &&
              fside[f][bc] == pside[a][bc])
            arr.faces_in_triangle[tid].push_back(f);
      }
  return true;
}

Arrangement build_with_rng(int h, std::mt19937_64& rng) {
  if (h < 3 || h > kMaxGeometricSampleOrder)
    throw InvalidError("arrangement order must be between 3 and 12");
  Arrangement arr;
  for (int attempt = 0; attempt < 64; ++attempt)
    if (try_build(h, rng, arr)) return arr;
  throw ComputeError("could not draw a nondegenerate point configuration");
}

std::mt19937_64 rng_for(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  return std::mt19937_64(seq);
}

}  // namespace

Arrangement build_arrangement(int h, std::uint64_t seed) {
  auto rng = rng_for(seed, 0);
  return build_with_rng(h, rng);
}

std::vector<GeometricClassProb> geometric_exact(int h) {
  if (h < 4 || h > 6) throw InvalidError("exact distribution supported for 4 to 6 points");
  Arrangement arr = build_arrangement(h, 0x5eedULL);
  int t_cnt = kc3(h);
  int nf = static_cast<int>(arr.faces.size());

  std::vector<std::uint32_t> cols(nf, 0);
  for (int t = 0; t < t_cnt; ++t)
    for (int f : arr.faces_in_triangle[t]) cols[f] |= 1u << t;

  std::array<std::uint32_t, 32> lead{};
  int rank = 0;
  for (std::uint32_t col : cols) {
    std::uint32_t v = col;
    for (int i = 31; i >= 0 && v; --i) {
      if (!((v >> i) & 1u)) continue;
      if (!lead[i]) {
        lead[i] = v;
        ++rank;
        v = 0;
      } else {
        v ^= lead[i];
      }
    }
  }
  std::vector<std::uint32_t> basis;
  for (std::uint32_t b : lead)
    if (b) basis.push_back(b);

  EnumerateOptions opts;
  opts.order = h;
  opts.arity = 3;
  auto classes = enumerate_graphs(opts);
  std::unordered_map<BitVec, int, BitVecHash> class_of;
  for (std::size_t i = 0; i < classes.size(); ++i)
    class_of.emplace(canonical_form(classes[i]).bits, static_cast<int>(i));

  std::vector<std::uint64_t> hits(classes.size(), 0);
  std::unordered_map<std::uint32_t, int> memo;
  std::uint32_t vec = 0;
  std::uint64_t total = 1ull << rank;
  for (std::uint64_t it = 0;; ++it) {
    auto [mit, fresh] = memo.emplace(vec, -1);
    if (fresh) {
      UniformGraph g(h, 3);
      for (int t = 0; t < t_cnt; ++t)
        if ((vec >> t) & 1u) g.slot_set(t);
      mit->second = class_of.at(canonical_form(g).bits);
    }
    ++hits[static_cast<std::size_t>(mit->second)];
    if (it + 1 == total) break;
    unsigned low = 0;
    std::uint64_t n = it + 1;
    while (!((n >> low) & 1ull)) ++low;
    vec ^= basis[low];
  }

  Rat denom = 1;
  for (int i = 0; i < rank; ++i) denom *= 2;
  std::vector<GeometricClassProb> out;
  out.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    GeometricClassProb row;
    row.rep = classes[i];
    row.prob = Rat(static_cast<unsigned long>(hits[i])) / denom;
    out.push_back(std::move(row));
  }
  return out;
}

GeometricSampleReport geometric_sample(int n, int trials, std::uint64_t seed) {
  if (n < 4 || n > kMaxGeometricSampleOrder)
    throw InvalidError("sampling order must be between 4 and 12");
  if (trials < 1) throw InvalidError("need at least one trial");

  EnumerateOptions o4;
  o4.order = 4;
  o4.arity = 3;
  auto cls4 = enumerate_graphs(o4);
  EnumerateOptions o5;
  o5.order = 5;
  o5.arity = 3;
  auto cls5 = enumerate_graphs(o5);
  std::unordered_map<BitVec, int, BitVecHash> idx4, idx5;
  for (std::size_t i = 0; i < cls4.size(); ++i)
    idx4.emplace(canonical_form(cls4[i]).bits, static_cast<int>(i));
  for (std::size_t i = 0; i < cls5.size(); ++i)
    idx5.emplace(canonical_form(cls5[i]).bits, static_cast<int>(i));

  std::size_t k4 = cls4.size(), k5 = cls5.size();
  std::vector<std::vector<double>> row4(trials), row5(trials);
  std::vector<double> rowe(trials);

  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    auto rng = rng_for(seed, static_cast<std::uint32_t>(t) + 1);
    Arrangement arr = build_with_rng(n, rng);
    std::vector<unsigned> color(arr.faces.size());
    for (auto& c : color) c = static_cast<unsigned>(rng() & 1ull);
    UniformGraph g(n, 3);
    for (std::size_t tid = 0; tid < arr.faces_in_triangle.size(); ++tid) {
      unsigned parity = 0;
      for (int f : arr.faces_in_triangle[tid]) parity ^= color[static_cast<std::size_t>(f)];
      if (parity & 1u) g.slot_set(tid);
    }

    std::unordered_map<BitVec, int, BitVecHash> memo4, memo5;
    std::vector<double> d4(k4, 0.0), d5(k5, 0.0);
    std::vector<int> verts;
    auto classify = [&](const std::vector<int>& vs, std::unordered_map<BitVec, int, BitVecHash>& memo,
                        const std::unordered_map<BitVec, int, BitVecHash>& idx) {
      UniformGraph sub = g.induced(vs);
      auto [it, fresh] = memo.emplace(sub.bits(), -1);
      if (fresh) it->second = idx.at(canonical_form(sub).bits);
      return it->second;
    };
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            verts = {a, b, c, d};
            d4[static_cast<std::size_t>(classify(verts, memo4, idx4))] += 1.0;
          }
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d)
            for (int e = d + 1; e < n; ++e) {
              verts = {a, b, c, d, e};
              d5[static_cast<std::size_t>(classify(verts, memo5, idx5))] += 1.0;
            }
    double n4 = static_cast<double>(n) * (n - 1) * (n - 2) * (n - 3) / 24.0;
    double n5 = n >= 5 ? n4 * (n - 4) / 5.0 : 0.0;
    for (auto& v : d4) v /= n4;
    if (n >= 5)
      for (auto& v : d5) v /= n5;
    row4[t] = std::move(d4);
    row5[t] = std::move(d5);
    rowe[t] = static_cast<double>(g.edge_count()) /
              (static_cast<double>(n) * (n - 1) * (n - 2) / 6.0);
  });

  GeometricSampleReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  auto mean_se = [&](auto value_at, double& mean, double& se) {
    double s = 0;
    for (int t = 0; t < trials; ++t) s += value_at(t);
    mean = s / trials;
    if (trials > 1) {
      double ss = 0;
      for (int t = 0; t < trials; ++t) {
        double d = value_at(t) - mean;
        ss += d * d;
      }
      se = std::sqrt(ss / (trials - 1) / trials);
    } else {
      se = 0;
    }
  };
  mean_se([&](int t) { return rowe[static_cast<std::size_t>(t)]; }, rep.edge_mean, rep.edge_stderr);
  rep.classes4.resize(k4);
  for (std::size_t i = 0; i < k4; ++i) {
    rep.classes4[i].rep = cls4[i];
    mean_se([&](int t) { return row4[static_cast<std::size_t>(t)][i]; }, rep.classes4[i].mean,
            rep.classes4[i].stderr_);
  }
  rep.classes5.resize(k5);
  for (std::size_t i = 0; i < k5; ++i) {
    rep.classes5[i].rep = cls5[i];
    mean_se([&](int t) { return row5[static_cast<std::size_t>(t)][i]; }, rep.classes5[i].mean,
            rep.classes5[i].stderr_);
  }
  return rep;
}

}  // namespace turan
