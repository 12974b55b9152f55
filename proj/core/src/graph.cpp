#include "turan/graph.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "turan/errors.hpp"

namespace turan {

namespace {

constexpr std::size_t c2(std::size_t n) { return n * (n - 1) / 2; }
constexpr std::size_t c3(std::size_t n) { return n * (n - 1) * (n - 2) / 6; }

char vertex_symbol(int v) {
  if (v < 9) return static_cast<char>('1' + v);
  if (v < 35) return static_cast<char>('a' + (v - 9));
  throw InvalidError("vertex out of printable range");
}

int vertex_value(char c) {
  if (c >= '1' && c <= '9') return c - '1';
  if (c >= 'a' && c <= 'z') return c - 'a' + 9;
  throw InvalidError(std::string("bad vertex symbol '") + c + "'");
}

}  // namespace

UniformGraph::UniformGraph(int order, int arity, bool directed)
    : order_(order), arity_(arity), directed_(directed) {
  if (arity != 2 && arity != 3) throw InvalidError("arity must be 2 or 3");
  if (directed && arity != 2) throw InvalidError("directed graphs must have arity 2");
  if (order < 0) throw InvalidError("negative order");
  slots_ = slot_count(order, arity, directed);
  bits_ = BitVec(slots_);
}

std::size_t UniformGraph::slot_count(int order, int arity, bool directed) {
  std::size_t n = static_cast<std::size_t>(order);
  if (arity == 2) return directed ? 2 * c2(n) : c2(n);
  return c3(n);
}

std::size_t UniformGraph::pair_slot(int a, int b) { return c2(b) + a; }

std::size_t UniformGraph::triple_slot(int a, int b, int c) {
  return c3(c) + c2(b) + a;
}

std::size_t UniformGraph::arc_slot(int from, int to) {
  int a = std::min(from, to), b = std::max(from, to);
  return 2 * (c2(b) + a) + (from > to ? 1 : 0);
}

std::size_t UniformGraph::edge_slot(const Edge& e) const {
  if (arity_ == 3) {
    int a = e[0], b = e[1], c = e[2];
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return triple_slot(a, b, c);
  }
  if (directed_) return arc_slot(e[0], e[1]);
  return pair_slot(std::min(e[0], e[1]), std::max(e[0], e[1]));
}

bool UniformGraph::has_edge(int a, int b, int c) const {
  return bits_.test(edge_slot({a, b, c}));
}
bool UniformGraph::has_edge(int a, int b) const {
  return bits_.test(pair_slot(std::min(a, b), std::max(a, b)));
}
bool UniformGraph::has_arc(int from, int to) const {
  return bits_.test(arc_slot(from, to));
}

namespace {
void check_vertex(int v, int n) {
  if (v < 0 || v >= n) throw InvalidError("vertex out of range");
}
}  // namespace

void UniformGraph::add_edge(int a, int b, int c) {
  if (arity_ != 3) throw InvalidError("3-edges need arity 3");
  check_vertex(a, order_);
  check_vertex(b, order_);
  check_vertex(c, order_);
  if (a == b || b == c || a == c) throw InvalidError("edge vertices must be distinct");
  bits_.set(edge_slot({a, b, c}));
}

void UniformGraph::add_edge(int a, int b) {
  if (arity_ != 2 || directed_) throw InvalidError("undirected 2-edges need undirected arity 2");
  check_vertex(a, order_);
  check_vertex(b, order_);
  if (a == b) throw InvalidError("edge vertices must be distinct");
  bits_.set(pair_slot(std::min(a, b), std::max(a, b)));
}

void UniformGraph::add_arc(int from, int to) {
  if (!directed_) throw InvalidError("arcs need a directed graph");
  check_vertex(from, order_);
  check_vertex(to, order_);
  if (from == to) throw InvalidError("loops are not allowed");
  bits_.set(arc_slot(from, to));
}

std::vector<UniformGraph::Edge> UniformGraph::edges() const {
  std::vector<Edge> out;
  if (arity_ == 3) {
    for (int c = 2; c < order_; ++c)
      for (int b = 1; b < c; ++b)
        for (int a = 0; a < b; ++a)
          if (bits_.test(triple_slot(a, b, c))) out.push_back({a, b, c});
  } else if (!directed_) {
    for (int b = 1; b < order_; ++b)
      for (int a = 0; a < b; ++a)
        if (bits_.test(pair_slot(a, b))) out.push_back({a, b, -1});
  } else {
    for (int b = 1; b < order_; ++b)
      for (int a = 0; a < b; ++a) {
        if (bits_.test(arc_slot(a, b))) out.push_back({a, b, -1});
        if (bits_.test(arc_slot(b, a))) out.push_back({b, a, -1});
      }
  }
  return out;
}

std::vector<std::array<int, 2>> UniformGraph::degrees() const {
  std::vector<std::array<int, 2>> deg(order_, {0, 0});
  for (const Edge& e : edges()) {
    if (arity_ == 3) {
      for (int i = 0; i < 3; ++i) deg[e[i]][0]++;
    } else if (!directed_) {
      deg[e[0]][0]++;
      deg[e[1]][0]++;
    } else {
      deg[e[0]][0]++;  // out
      deg[e[1]][1]++;  // in
    }
  }
  return deg;
}

UniformGraph UniformGraph::induced(const std::vector<int>& verts) const {
  int h = static_cast<int>(verts.size());
  std::vector<char> seen(order_ > 0 ? order_ : 1, 0);
  for (int v : verts) {
    check_vertex(v, order_);
    if (seen[v]++) throw InvalidError("duplicate vertex");
  }
  UniformGraph out(h, arity_, directed_);
  if (arity_ == 3) {
    for (int c = 2; c < h; ++c)
      for (int b = 1; b < c; ++b)
        for (int a = 0; a < b; ++a)
          if (has_edge(verts[a], verts[b], verts[c]))
            out.bits_.set(triple_slot(a, b, c));
  } else if (!directed_) {
    for (int b = 1; b < h; ++b)
      for (int a = 0; a < b; ++a)
        if (has_edge(verts[a], verts[b])) out.bits_.set(pair_slot(a, b));
  } else {
    for (int b = 1; b < h; ++b)
      for (int a = 0; a < b; ++a) {
        if (has_arc(verts[a], verts[b])) out.bits_.set(arc_slot(a, b));
        if (has_arc(verts[b], verts[a])) out.bits_.set(arc_slot(b, a));
      }
  }
  return out;
}

UniformGraph UniformGraph::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != order_) throw InvalidError("bad permutation size");
  std::vector<char> seen(order_, 0);
  for (int p : perm) {
    check_vertex(p, order_);
    if (seen[p]++) throw InvalidError("not a permutation");
  }
  UniformGraph out(order_, arity_, directed_);
  for (const Edge& e : edges()) {
    if (arity_ == 3)
      out.add_edge(perm[e[0]], perm[e[1]], perm[e[2]]);
    else if (!directed_)
      out.add_edge(perm[e[0]], perm[e[1]]);
    else
      out.add_arc(perm[e[0]], perm[e[1]]);
  }
  return out;
}

UniformGraph UniformGraph::complemented() const {
  if (directed_) throw InvalidError("complement is defined for undirected graphs");
  UniformGraph out(order_, arity_, directed_);
  for (std::size_t s = 0; s < slots_; ++s) out.bits_.assign(s, !bits_.test(s));
  return out;
}

UniformGraph UniformGraph::link(int v) const {
  if (arity_ != 3) throw InvalidError("links are defined for 3-graphs");
  check_vertex(v, order_);
  std::vector<int> others;
  for (int u = 0; u < order_; ++u)
    if (u != v) others.push_back(u);
  UniformGraph out(order_ - 1, 2, false);
  for (int b = 1; b < order_ - 1; ++b)
    for (int a = 0; a < b; ++a)
      if (has_edge(others[a], others[b], v)) out.bits_.set(pair_slot(a, b));
  return out;
}

bool UniformGraph::operator==(const UniformGraph& o) const {
  return order_ == o.order_ && arity_ == o.arity_ && directed_ == o.directed_ &&
         bits_ == o.bits_;
}

UniformGraph UniformGraph::parse(std::string_view text, int arity_hint) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool directed = false;
  if (!s.empty() && s.front() == 'd') {
    directed = true;
    s.remove_prefix(1);
  }
  auto colon = s.find(':');
  if (colon == std::string_view::npos)
    throw InvalidError("graph text needs '<n>:' prefix: '" + std::string(text) + "'");
  std::string_view np = s.substr(0, colon);
  if (np.empty()) throw InvalidError("missing order in '" + std::string(text) + "'");
  int n = 0;
  for (char c : np) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InvalidError("bad order in '" + std::string(text) + "'");
    n = n * 10 + (c - '0');
    if (n > 35) throw InvalidError("order exceeds printable vertex symbols (35)");
  }

  std::string_view rest = s.substr(colon + 1);
  std::vector<std::string_view> toks;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    toks.push_back(rest.substr(0, comma));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }

  int arity;
  if (directed) {
    arity = 2;
  } else if (toks.empty()) {
    arity = arity_hint;
  } else {
    arity = static_cast<int>(toks[0].size());
  }
  if (arity != 2 && arity != 3)
    throw InvalidError("edges must have 2 or 3 vertices: '" + std::string(text) + "'");

  UniformGraph g(n, arity, directed);
  for (auto tok : toks) {
    if (static_cast<int>(tok.size()) != arity)
      throw InvalidError("mixed edge sizes in '" + std::string(text) + "'");
    int a = vertex_value(tok[0]);
    int b = vertex_value(tok[1]);
    check_vertex(a, n);
    check_vertex(b, n);
    std::size_t slot;
    if (arity == 3) {
      int c = vertex_value(tok[2]);
      check_vertex(c, n);
      if (a == b || b == c || a == c) throw InvalidError("repeated vertex in edge");
      slot = g.edge_slot({a, b, c});
    } else {
      if (a == b) throw InvalidError("repeated vertex in edge");
      slot = directed ? arc_slot(a, b) : pair_slot(std::min(a, b), std::max(a, b));
    }
    if (g.bits_.test(slot)) throw InvalidError("duplicate edge in '" + std::string(text) + "'");
    g.bits_.set(slot);
  }
  return g;
}

std::string UniformGraph::to_string() const {
  std::string out;
  if (directed_) out += 'd';
  out += std::to_string(order_);
  out += ':';
  bool first = true;
  // Emit in slot order so equal graphs print identically.
  auto emit = [&](std::initializer_list<int> vs) {
    if (!first) out += ',';
    first = false;
    for (int v : vs) out += vertex_symbol(v);
  };
  if (arity_ == 3) {
    for (int c = 2; c < order_; ++c)
      for (int b = 1; b < c; ++b)
        for (int a = 0; a < b; ++a)
          if (bits_.test(triple_slot(a, b, c))) emit({a, b, c});
  } else if (!directed_) {
    for (int b = 1; b < order_; ++b)
      for (int a = 0; a < b; ++a)
        if (bits_.test(pair_slot(a, b))) emit({a, b});
  } else {
    for (int b = 1; b < order_; ++b)
      for (int a = 0; a < b; ++a) {
        if (bits_.test(arc_slot(a, b))) emit({a, b});
        if (bits_.test(arc_slot(b, a))) emit({b, a});
      }
  }
  return out;
}

std::strong_ordering CanonicalForm::operator<=>(const CanonicalForm& o) const {
  if (auto c = arity <=> o.arity; c != 0) return c;
  if (auto c = directed <=> o.directed; c != 0) return c;
  if (auto c = order <=> o.order; c != 0) return c;
  return bits <=> o.bits;
}

UniformGraph CanonicalForm::representative() const {
  UniformGraph g(order, arity, directed);
  for (std::size_t s = 0; s < g.slots(); ++s)
    if (bits.test(s)) g.slot_set(s);
  return g;
}

std::string CanonicalForm::key() const { return representative().to_string(); }

namespace {

// Branch-and-bound minimal labeling. Slots are grouped by the highest
// position they touch; the group of position p is encoded in one 64-bit word
// (low bit = lowest slot), which caps supported orders (12 for 3-graphs).
struct CanonSearch {
  const UniformGraph& g;
  int n;
  int arity;
  bool directed;
  int prefix;
  std::vector<int> perm;
  std::vector<char> used;
  std::vector<std::uint64_t> best;
  std::uint64_t aut = 0;
  std::vector<int> order_hint;

  explicit CanonSearch(const UniformGraph& graph, int fixed_prefix)
      : g(graph),
        n(graph.order()),
        arity(graph.arity()),
        directed(graph.directed()),
        prefix(fixed_prefix),
        perm(n, -1),
        used(n, 0),
        best(n, ~std::uint64_t(0)) {
    std::size_t widest = 0;
    for (int p = 0; p < n; ++p) widest = std::max(widest, block_width(p));
    if (widest > 64) throw ComputeError("canonical labeling limited to 64 slots per vertex group");
    auto deg = g.degrees();
    order_hint.resize(n);
    for (int v = 0; v < n; ++v) order_hint[v] = v;
    std::stable_sort(order_hint.begin(), order_hint.end(), [&](int a, int b) {
      return deg[a] < deg[b];
    });
  }

  std::size_t block_width(int p) const {
    std::size_t q = static_cast<std::size_t>(p);
    if (arity == 3) return c2(q);
    return directed ? 2 * q : q;
  }

  std::uint64_t block_bits(int p, int v) const {
    std::uint64_t blk = 0;
    if (arity == 3) {
      for (int b = 1; b < p; ++b)
        for (int a = 0; a < b; ++a)
          if (g.has_edge(perm[a], perm[b], v)) blk |= std::uint64_t(1) << (c2(b) + a);
    } else if (!directed) {
      for (int a = 0; a < p; ++a)
        if (g.has_edge(perm[a], v)) blk |= std::uint64_t(1) << a;
    } else {
      for (int a = 0; a < p; ++a) {
        if (g.has_arc(perm[a], v)) blk |= std::uint64_t(1) << (2 * a);
        if (g.has_arc(v, perm[a])) blk |= std::uint64_t(1) << (2 * a + 1);
      }
    }
    return blk;
  }

  void run() {
    for (int p = 0; p < prefix; ++p) {
      perm[p] = p;
      used[p] = 1;
      best[p] = block_bits(p, p);
    }
    rec(prefix);
  }

  void rec(int pos) {
    if (pos == n) {
      ++aut;
      return;
    }
    for (int v : order_hint) {
      if (used[v]) continue;
      std::uint64_t blk = block_bits(pos, v);
      int c = cmp_bits64(blk, best[pos]);
      if (c > 0) continue;
      if (c < 0) {
        best[pos] = blk;
        for (int q = pos + 1; q < n; ++q) best[q] = ~std::uint64_t(0);
        aut = 0;
      }
      used[v] = 1;
      perm[pos] = v;
      rec(pos + 1);
      used[v] = 0;
    }
  }
};

}  // namespace

CanonicalForm canonical_form(const UniformGraph& g, int fixed_prefix) {
  if (fixed_prefix < 0 || fixed_prefix > g.order())
    throw InvalidError("fixed_prefix out of range");
  CanonicalForm out;
  out.order = g.order();
  out.arity = g.arity();
  out.directed = g.directed();
  out.bits = BitVec(g.slots());

  CanonSearch search(g, fixed_prefix);
  search.run();
  out.aut_size = search.aut;

  std::size_t slot = 0;
  for (int p = 0; p < g.order(); ++p) {
    std::size_t width = search.block_width(p);
    for (std::size_t i = 0; i < width; ++i, ++slot)
      if ((search.best[p] >> i) & 1) out.bits.set(slot);
  }
  return out;
}

namespace {

// Mapping order for contains(): put well-connected vertices of f early so the
// per-position constraint lists bite as soon as possible.
struct ContainsPlan {
  std::vector<int> order;  // position -> f vertex
  // For each position p, the r-sets of positions with max position p that the
  // map must check, plus whether f has the edge there.
  struct Constraint {
    std::array<int, 3> pos;
    bool edge;
    bool reversed;  // directed: arc pos[1] -> pos[0]
  };
  std::vector<std::vector<Constraint>> checks;
  std::vector<std::array<int, 2>> f_deg;
};

ContainsPlan make_plan(const UniformGraph& f, ContainMode mode) {
  int h = f.order();
  ContainsPlan plan;
  auto deg = f.degrees();
  plan.f_deg = deg;
  std::vector<char> chosen(h, 0);
  auto weight = [&](int v) {
    int w = 0;
    for (const auto& e : f.edges()) {
      bool touches = false, rest_in = true;
      for (int i = 0; i < f.arity(); ++i) {
        int u = e[i];
        if (u < 0) break;
        if (u == v)
          touches = true;
        else if (!chosen[u])
          rest_in = false;
      }
      if (touches && rest_in) ++w;
    }
    return w;
  };
  for (int step = 0; step < h; ++step) {
    int pick = -1, pw = -1, pd = -1;
    for (int v = 0; v < h; ++v) {
      if (chosen[v]) continue;
      int w = weight(v), d = deg[v][0] + deg[v][1];
      if (w > pw || (w == pw && d > pd)) {
        pick = v;
        pw = w;
        pd = d;
      }
    }
    chosen[pick] = 1;
    plan.order.push_back(pick);
  }

  std::vector<int> pos_of(h);
  for (int p = 0; p < h; ++p) pos_of[plan.order[p]] = p;
  plan.checks.resize(h);

  if (f.arity() == 3) {
    for (int c = 2; c < h; ++c)
      for (int b = 1; b < c; ++b)
        for (int a = 0; a < b; ++a) {
          bool edge = f.has_edge(plan.order[a], plan.order[b], plan.order[c]);
          if (mode == ContainMode::kSubgraph && !edge) continue;
          plan.checks[c].push_back({{a, b, c}, edge, false});
        }
  } else if (!f.directed()) {
    for (int b = 1; b < h; ++b)
      for (int a = 0; a < b; ++a) {
        bool edge = f.has_edge(plan.order[a], plan.order[b]);
        if (mode == ContainMode::kSubgraph && !edge) continue;
        plan.checks[b].push_back({{a, b, -1}, edge, false});
      }
  } else {
    for (int b = 1; b < h; ++b)
      for (int a = 0; a < b; ++a) {
        bool fwd = f.has_arc(plan.order[a], plan.order[b]);
        bool bwd = f.has_arc(plan.order[b], plan.order[a]);
        if (mode == ContainMode::kInduced || fwd)
          plan.checks[b].push_back({{a, b, -1}, fwd, false});
        if (mode == ContainMode::kInduced || bwd)
          plan.checks[b].push_back({{a, b, -1}, bwd, true});
      }
  }
  return plan;
}

struct ContainsSearch {
  const UniformGraph& g;
  const UniformGraph& f;
  ContainMode mode;
  const ContainsPlan& plan;
  std::vector<int> assign;  // position -> g vertex
  std::vector<char> used;
  std::vector<std::array<int, 2>> g_deg;

  bool rec(int pos) {
    if (pos == f.order()) return true;
    int fv = plan.order[pos];
    for (int gv = 0; gv < g.order(); ++gv) {
      if (used[gv]) continue;
      if (g_deg[gv][0] < plan.f_deg[fv][0] || g_deg[gv][1] < plan.f_deg[fv][1])
        continue;
      bool ok = true;
      for (const auto& ck : plan.checks[pos]) {
        bool has;
        if (f.arity() == 3) {
          has = g.has_edge(assign[ck.pos[0]], assign[ck.pos[1]], gv);
        } else if (!f.directed()) {
          has = g.has_edge(assign[ck.pos[0]], gv);
        } else {
          has = ck.reversed ? g.has_arc(gv, assign[ck.pos[0]])
                            : g.has_arc(assign[ck.pos[0]], gv);
        }
        if (mode == ContainMode::kSubgraph ? !has : has != ck.edge) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      assign[pos] = gv;
      used[gv] = 1;
      if (rec(pos + 1)) return true;
      used[gv] = 0;
    }
    return false;
  }
};

}  // namespace

bool contains(const UniformGraph& g, const UniformGraph& f, ContainMode mode) {
  if (g.arity() != f.arity() || g.directed() != f.directed())
    throw InvalidError("containment requires matching arity and directedness");
  if (f.order() > g.order()) return false;
  if (f.order() == 0) return true;
  ContainsPlan plan = make_plan(f, mode);
  ContainsSearch search{g, f, mode, plan,
                        std::vector<int>(f.order(), -1),
                        std::vector<char>(g.order(), 0), g.degrees()};
  return search.rec(0);
}

bool is_isomorphic(const UniformGraph& a, const UniformGraph& b) {
  if (a.order() != b.order() || a.arity() != b.arity() || a.directed() != b.directed())
    return false;
  if (a.edge_count() != b.edge_count()) return false;
  auto da = a.degrees(), db = b.degrees();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  return contains(a, b, ContainMode::kInduced);
}

bool ForbiddenFamily::admits(const UniformGraph& g) const {
  for (const auto& m : members) {
    if (m.graph.order() > g.order()) continue;
    if (contains(g, m.graph, m.mode)) return false;
  }
  return true;
}

namespace {

// Iterate all h-subsets of [n]; callback gets the sorted subset.
template <typename F>
void for_each_subset(int n, int h, F&& fn) {
  if (h > n || h < 0) return;
  std::vector<int> idx(h);
  for (int i = 0; i < h; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = h - 1;
    while (i >= 0 && idx[i] == n - h + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < h; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::uint64_t induced_count(const UniformGraph& h_graph, const UniformGraph& g) {
  if (h_graph.arity() != g.arity() || h_graph.directed() != g.directed())
    throw InvalidError("density requires matching arity and directedness");
  int h = h_graph.order();
  if (h > g.order()) return 0;
  CanonicalForm target = canonical_form(h_graph);
  std::unordered_map<BitVec, bool, BitVecHash> memo;
  std::uint64_t count = 0;
  for_each_subset(g.order(), h, [&](const std::vector<int>& sub) {
    UniformGraph ind = g.induced(sub);
    auto it = memo.find(ind.bits());
    bool match;
    if (it != memo.end()) {
      match = it->second;
    } else {
      match = ind.edge_count() == h_graph.edge_count() &&
              canonical_form(ind).bits == target.bits;
      memo.emplace(ind.bits(), match);
    }
    if (match) ++count;
  });
  return count;
}

namespace {
mpz_class binom(int n, int k) {
  mpz_class out;
  if (k < 0 || k > n) return 0;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}
}  // namespace

Rat density(const UniformGraph& h_graph, const UniformGraph& g) {
  int h = h_graph.order();
  if (h > g.order()) return Rat(0);
  Rat out(mpz_class(static_cast<unsigned long>(induced_count(h_graph, g))),
          binom(g.order(), h));
  out.canonicalize();
  return out;
}

Rat family_density(const std::vector<UniformGraph>& family, const UniformGraph& g) {
  if (family.empty()) return Rat(0);
  int h = family[0].order();
  for (const auto& f : family)
    if (f.order() != h || f.arity() != g.arity() || f.directed() != g.directed())
      throw InvalidError("family members must share order, arity and directedness");
  if (h > g.order()) return Rat(0);
  std::vector<CanonicalForm> targets;
  for (const auto& f : family) targets.push_back(canonical_form(f));
  std::unordered_map<BitVec, bool, BitVecHash> memo;
  std::uint64_t count = 0;
  for_each_subset(g.order(), h, [&](const std::vector<int>& sub) {
    UniformGraph ind = g.induced(sub);
    auto it = memo.find(ind.bits());
    bool match;
    if (it != memo.end()) {
      match = it->second;
    } else {
      CanonicalForm cf = canonical_form(ind);
      match = false;
      for (const auto& t : targets)
        if (cf.bits == t.bits) {
          match = true;
          break;
        }
      memo.emplace(ind.bits(), match);
    }
    if (match) ++count;
  });
  Rat out(mpz_class(static_cast<unsigned long>(count)), binom(g.order(), h));
  out.canonicalize();
  return out;
}

UniformGraph dto3_transform(const UniformGraph& d) {
  if (!d.directed()) throw InvalidError("dto3 needs a directed graph");
  int n = d.order();
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a)
      if (d.has_arc(a, b) && d.has_arc(b, a))
        throw InvalidError("dto3 needs a digon-free digraph");
  UniformGraph out(n, 3, false);
  auto arcs_between = [&](int u, int v) { return d.has_arc(u, v) || d.has_arc(v, u); };
  for (int c = 2; c < n; ++c)
    for (int b = 1; b < c; ++b)
      for (int a = 0; a < b; ++a) {
        int tri[3] = {a, b, c};
        for (int center = 0; center < 3; ++center) {
          int x = tri[center], y = tri[(center + 1) % 3], z = tri[(center + 2) % 3];
          if (d.has_arc(x, y) && d.has_arc(x, z) && !arcs_between(y, z) &&
              !d.has_arc(y, x) && !d.has_arc(z, x)) {
            out.add_edge(a, b, c);
            break;
          }
        }
      }
  return out;
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + (c - '0');
    if (v > 1000) return false;
  }
  out = v;
  return true;
}

}  // namespace

UniformGraph named_graph(std::string_view name) {
  if (name.find(':') != std::string_view::npos) return UniformGraph::parse(name);
  if (name == "edge") {
    UniformGraph g(3, 3);
    g.add_edge(0, 1, 2);
    return g;
  }
  if (name == "F32") return UniformGraph::parse("5:123,124,125,345");
  if (name == "H6") return UniformGraph::parse("6:123,234,345,145,125,136,356,256,246,146");
  if (name == "H7")
    return UniformGraph::parse("7:124,137,156,235,267,346,457,356,467,126,245,157,134,237");
  if (!name.empty() && (name[0] == 'K' || name[0] == 'C' || name[0] == 'S')) {
    char kind = name[0];
    std::string_view rest = name.substr(1);
    bool minus = false;
    if (kind == 'K' && !rest.empty() && rest.back() == '-') {
      minus = true;
      rest.remove_suffix(1);
    }
    int t;
    if (parse_int(rest, t)) {
      if (kind == 'K') {
        if (t < 3 || t > 35) throw InvalidError("K_t needs 3 <= t <= 35");
        UniformGraph g(t, 3);
        for (int c = 2; c < t; ++c)
          for (int b = 1; b < c; ++b)
            for (int a = 0; a < b; ++a)
              if (!(minus && a == t - 3 && b == t - 2 && c == t - 1))
                g.add_edge(a, b, c);
        return g;
      }
      if (kind == 'C') {
        if (t < 3 || t > 35) throw InvalidError("C_t needs 3 <= t <= 35");
        UniformGraph g(t, 3);
        for (int i = 0; i < t; ++i) g.add_edge(i, (i + 1) % t, (i + 2) % t);
        return g;
      }
      if (kind == 'S') {
        if (t < 2 || t > 35) throw InvalidError("S_k needs 2 <= k <= 35");
        UniformGraph g(t, 2, true);
        for (int i = 1; i < t; ++i) g.add_arc(0, i);
        return g;
      }
    }
  }
  throw InvalidError("unknown graph name '" + std::string(name) + "'");
}

std::vector<UniformGraph> named_family(std::string_view name) {
  auto dot = name.find('.');
  if (dot != std::string_view::npos && name.find(':') == std::string_view::npos) {
    int m, k;
    if (parse_int(name.substr(0, dot), m) && parse_int(name.substr(dot + 1), k)) {
      if (m < 1 || m > 6) throw InvalidError("m.k families support 1 <= m <= 6");
      if (k < 0 || static_cast<std::size_t>(k) > UniformGraph::slot_count(m, 3, false))
        throw InvalidError("m.k family with impossible edge count");
      EnumerateOptions opt;
      opt.order = m;
      std::vector<UniformGraph> out;
      for (auto& g : enumerate_graphs(opt))
        if (g.edge_count() == static_cast<std::size_t>(k)) out.push_back(std::move(g));
      return out;
    }
  }
  return {named_graph(name)};
}

}  // namespace turan
