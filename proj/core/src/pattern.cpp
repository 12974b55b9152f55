#include "turan/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "turan/errors.hpp"

namespace turan {

namespace {

char part_symbol(int p) {
  return p < 9 ? static_cast<char>('1' + p) : static_cast<char>('a' + (p - 9));
}

int part_value(char c) {
  if (c >= '1' && c <= '9') return c - '1';
  if (c >= 'a' && c <= 'z') return c - 'a' + 9;
  throw InvalidError(std::string("bad part symbol '") + c + "'");
}

// Dense multiset lookup; undirected keys are sorted.
struct EdgeTable {
  int parts;
  int arity;
  bool directed;
  std::vector<char> t;

  explicit EdgeTable(const Pattern& p)
      : parts(p.parts), arity(p.arity), directed(p.directed) {
    std::size_t size = 1;
    for (int i = 0; i < arity; ++i) size *= parts;
    t.assign(size, 0);
    for (const auto& e : p.edges) t[index(e)] = 1;
  }

  std::size_t index(std::array<int, 3> e) const {
    if (arity == 2) return static_cast<std::size_t>(e[0]) * parts + e[1];
    return (static_cast<std::size_t>(e[0]) * parts + e[1]) * parts + e[2];
  }

  bool has3(int a, int b, int c) const {  // any order; sorted internally
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return t[(static_cast<std::size_t>(a) * parts + b) * parts + c];
  }
  bool has2(int a, int b) const {  // undirected
    if (a > b) std::swap(a, b);
    return t[static_cast<std::size_t>(a) * parts + b];
  }
  bool has_arc(int a, int b) const { return t[static_cast<std::size_t>(a) * parts + b]; }
};

// r-sets of [k] in slot order; for directed graphs each entry is an ordered
// pair so entry i corresponds to edge slot i.
struct SlotSpec {
  std::array<int, 3> v;
};

std::vector<SlotSpec> make_slots(int k, int arity, bool directed) {
  std::vector<SlotSpec> out;
  if (arity == 3) {
    for (int c = 2; c < k; ++c)
      for (int b = 1; b < c; ++b)
        for (int a = 0; a < b; ++a) out.push_back({{a, b, c}});
  } else if (!directed) {
    for (int b = 1; b < k; ++b)
      for (int a = 0; a < b; ++a) out.push_back({{a, b, -1}});
  } else {
    for (int b = 1; b < k; ++b)
      for (int a = 0; a < b; ++a) {
        out.push_back({{a, b, -1}});
        out.push_back({{b, a, -1}});
      }
  }
  return out;
}

UniformGraph graph_from_raw(std::uint64_t raw, int k, int arity, bool directed) {
  UniformGraph g(k, arity, directed);
  for (std::size_t s = 0; s < g.slots(); ++s)
    if ((raw >> s) & 1) g.slot_set(s);
  return g;
}

template <typename T>
T scalar_pow(const T& base, int e) {
  if constexpr (std::is_same_v<T, Rat>) {
    return rat_pow(base, static_cast<unsigned long>(e));
  } else {
    T out = 1;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
  }
}

template <typename T>
void check_weights(const Pattern& p, const std::vector<T>& w) {
  if (static_cast<int>(w.size()) != p.parts)
    throw InvalidError("weight count must equal part count");
  if constexpr (std::is_same_v<T, Rat>) {
    Rat sum(0);
    for (const auto& x : w) {
      if (x < 0) throw InvalidError("weights must be nonnegative");
      sum += x;
    }
    if (sum != 1) throw InvalidError("weights must sum to 1");
  } else {
    double sum = 0;
    for (double x : w) {
      if (x < -1e-15) throw InvalidError("weights must be nonnegative");
      sum += x;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw InvalidError("weights must sum to 1");
  }
}

void check_target(const Pattern& p, const UniformGraph& h) {
  if (h.arity() != p.arity || h.directed() != p.directed)
    throw InvalidError("pattern and target must share arity and directedness");
  std::size_t slots = UniformGraph::slot_count(h.order(), h.arity(), h.directed());
  if (slots > 64) throw ComputeError("blow-up targets are limited to 64 edge slots");
}

std::uint64_t pack_counts(const std::vector<int>& counts) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    key |= static_cast<std::uint64_t>(counts[i]) << (4 * i);
  return key;
}

template <typename T>
T blowup_impl(const Pattern& p, const std::vector<T>& w, const UniformGraph& h) {
  p.validate();
  if (!p.recursive.empty())
    throw InvalidError("blowup_density needs a non-recursive pattern");
  check_weights(p, w);
  check_target(p, h);
  int k = h.order();
  int np = p.parts;
  if (np > 15 || k > 15) throw ComputeError("blow-up evaluation too large");

  double combos = std::pow(static_cast<double>(np), k);
  if (combos > 4e8) throw ComputeError("blow-up evaluation too large");

  EdgeTable tbl(p);
  auto slots = make_slots(k, h.arity(), h.directed());
  std::size_t target_edges = h.edge_count();
  BitVec target_bits = canonical_form(h).bits;

  std::unordered_map<std::uint64_t, bool> memo;
  std::unordered_map<std::uint64_t, std::uint64_t> groups;

  std::vector<int> psi(k, 0), counts(np, 0);
  counts[0] = k;
  while (true) {
    std::uint64_t raw = 0;
    int edge_cnt = 0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& sv = slots[i].v;
      bool e;
      if (p.arity == 3)
        e = tbl.has3(psi[sv[0]], psi[sv[1]], psi[sv[2]]);
      else if (!p.directed)
        e = tbl.has2(psi[sv[0]], psi[sv[1]]);
      else
        e = tbl.has_arc(psi[sv[0]], psi[sv[1]]);
      if (e) {
        raw |= std::uint64_t(1) << i;
        ++edge_cnt;
      }
    }
    if (static_cast<std::size_t>(edge_cnt) == target_edges) {
      auto it = memo.find(raw);
      bool match;
      if (it != memo.end()) {
        match = it->second;
      } else {
        match = canonical_form(graph_from_raw(raw, k, h.arity(), h.directed())).bits ==
                target_bits;
        memo.emplace(raw, match);
      }
      if (match) ++groups[pack_counts(counts)];
    }
    int i = k - 1;
    while (i >= 0) {
      counts[psi[i]]--;
      if (++psi[i] < np) {
        counts[psi[i]]++;
        break;
      }
      psi[i] = 0;
      counts[0]++;
      --i;
    }
    if (i < 0) break;
  }

  T total = T(0);
  for (const auto& [key, cnt] : groups) {
    T term;
    if constexpr (std::is_same_v<T, Rat>) {
      term = Rat(mpz_class(static_cast<unsigned long>(cnt)));
    } else {
      term = static_cast<double>(cnt);
    }
    for (int i = 0; i < np; ++i) {
      int c = static_cast<int>((key >> (4 * i)) & 0xf);
      if (c) term *= scalar_pow(w[i], c);
    }
    total += term;
  }
  return total;
}

// Isomorphism classes of the induced subgraphs of h, bottom-up by size, with
// a per-class table mapping vertex subsets of the representative to the class
// of the induced subgraph.
struct IterClasses {
  struct Cls {
    UniformGraph rep;
    int size;
    std::vector<int> sub;  // indexed by nonzero vertex mask
  };
  std::vector<Cls> classes;
  int target = -1;

  explicit IterClasses(const UniformGraph& h) {
    int n = h.order();
    std::vector<std::unordered_map<BitVec, int, BitVecHash>> index(n + 1);
    for (int k = 1; k <= n; ++k) {
      std::vector<int> sel(k);
      for (int i = 0; i < k; ++i) sel[i] = i;
      while (true) {
        CanonicalForm cf = canonical_form(h.induced(sel));
        if (!index[k].count(cf.bits)) {
          index[k].emplace(cf.bits, static_cast<int>(classes.size()));
          classes.push_back({cf.representative(), k, {}});
        }
        int i = k - 1;
        while (i >= 0 && sel[i] == n - k + i) --i;
        if (i < 0) break;
        ++sel[i];
        for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
      }
    }
    for (auto& c : classes) {
      c.sub.assign(std::size_t(1) << c.size, -1);
      for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << c.size); ++mask) {
        std::vector<int> verts;
        for (int v = 0; v < c.size; ++v)
          if ((mask >> v) & 1) verts.push_back(v);
        CanonicalForm cf = canonical_form(c.rep.induced(verts));
        c.sub[mask] = index[verts.size()].at(cf.bits);
      }
    }
    target = index[n].at(canonical_form(h).bits);
  }
};

struct IterKey {
  BitVec bits;
  int order;
  int arity;
  bool directed;
  bool operator==(const IterKey&) const = default;
};

struct IterKeyHash {
  std::size_t operator()(const IterKey& k) const {
    return BitVecHash{}(k.bits) ^ (static_cast<std::size_t>(k.order) * 31 +
                                   static_cast<std::size_t>(k.arity) * 7 + (k.directed ? 1 : 0));
  }
};

// The decomposition depends only on the target, and the optimizer evaluates
// the same target at many weight vectors.
const IterClasses& iter_classes_for(const UniformGraph& h) {
  static std::mutex mu;
  static std::unordered_map<IterKey, std::unique_ptr<IterClasses>, IterKeyHash> cache;
  IterKey key{h.bits(), h.order(), h.arity(), h.directed()};
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<IterClasses>(h);
  return *slot;
}

template <typename T>
bool is_zero_denom(const T& d) {
  if constexpr (std::is_same_v<T, Rat>)
    return d == 0;
  else
    return std::fabs(d) < 1e-14;
}

template <typename T>
T iterated_impl(const Pattern& p, const std::vector<T>& w, const UniformGraph& h) {
  p.validate();
  if (p.recursive.empty())
    throw InvalidError("iterated_density needs at least one recursive part");
  check_weights(p, w);
  check_target(p, h);
  if (h.order() < 1) throw InvalidError("target must have vertices");
  int np = p.parts;
  if (np > 15 || h.order() > 15) throw ComputeError("iterated evaluation too large");

  EdgeTable tbl(p);
  std::vector<char> rec(np, 0);
  for (int i : p.recursive) rec[i] = 1;

  const IterClasses& cls = iter_classes_for(h);
  std::vector<T> qhat(cls.classes.size(), T(0));

  for (std::size_t ci = 0; ci < cls.classes.size(); ++ci) {
    const auto& c = cls.classes[ci];
    int k = c.size;
    if (k == 1) {
      // The single-vertex class has density 1; its recursion is 0/0 when all
      // parts are recursive.
      qhat[ci] = T(1);
      continue;
    }

    T denom = T(1);
    for (int i : p.recursive) denom -= scalar_pow(w[i], k);
    if (is_zero_denom(denom))
      throw ComputeError("iterated construction diverges: one recursive part has weight 1");

    auto slots = make_slots(k, p.arity, p.directed);
    std::vector<bool> want(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& sv = slots[i].v;
      if (p.arity == 3)
        want[i] = c.rep.has_edge(sv[0], sv[1], sv[2]);
      else if (!p.directed)
        want[i] = c.rep.has_edge(sv[0], sv[1]);
      else
        want[i] = c.rep.has_arc(sv[0], sv[1]);
    }

    T acc = T(0);
    std::vector<int> psi(k, 0);
    while (true) {
      // Skip the all-in-one-recursive-part assignments; they form the fixed
      // point handled by the denominator.
      bool uniform_rec = rec[psi[0]];
      for (int j = 1; uniform_rec && j < k; ++j)
        if (psi[j] != psi[0]) uniform_rec = false;
      if (!uniform_rec) {
        bool ok = true;
        for (std::size_t i = 0; ok && i < slots.size(); ++i) {
          const auto& sv = slots[i].v;
          int pa = psi[sv[0]], pb = psi[sv[1]];
          int pc = p.arity == 3 ? psi[sv[2]] : pa;
          if (pa == pb && pb == pc && rec[pa]) continue;  // inside a recursive copy
          bool e;
          if (p.arity == 3)
            e = tbl.has3(pa, pb, psi[sv[2]]);
          else if (!p.directed)
            e = tbl.has2(pa, pb);
          else
            e = tbl.has_arc(pa, pb);
          if (e != static_cast<bool>(want[i])) ok = false;
        }
        if (ok) {
          T term = T(1);
          for (int j = 0; j < k; ++j) term *= w[psi[j]];
          for (int part : p.recursive) {
            std::uint32_t mask = 0;
            for (int j = 0; j < k; ++j)
              if (psi[j] == part) mask |= std::uint32_t(1) << j;
            if (mask) term *= qhat[c.sub[mask]];
          }
          acc += term;
        }
      }
      int i = k - 1;
      while (i >= 0 && ++psi[i] == np) psi[i--] = 0;
      if (i < 0) break;
    }
    qhat[ci] = acc / denom;
  }

  mpz_class fact = 1;
  for (int i = 2; i <= h.order(); ++i) fact *= i;
  mpz_class copies = fact / mpz_class(static_cast<unsigned long>(canonical_form(h).aut_size));
  if constexpr (std::is_same_v<T, Rat>) {
    return qhat[cls.target] * Rat(copies);
  } else {
    return qhat[cls.target] * copies.get_d();
  }
}

}  // namespace

bool Pattern::is_recursive(int part) const {
  return std::find(recursive.begin(), recursive.end(), part) != recursive.end();
}

void Pattern::validate() const {
  if (parts < 1) throw InvalidError("pattern needs at least one part");
  if (arity != 2 && arity != 3) throw InvalidError("pattern arity must be 2 or 3");
  if (directed && arity != 2) throw InvalidError("directed patterns must have arity 2");
  if (static_cast<int>(weights.size()) != parts)
    throw InvalidError("pattern needs one weight per part");
  Rat sum(0);
  for (const auto& x : weights) {
    if (x < 0) throw InvalidError("pattern weights must be nonnegative");
    sum += x;
  }
  if (sum != 1) throw InvalidError("pattern weights must sum to 1");

  std::vector<char> loop(parts, 0);
  std::vector<std::array<int, 3>> sorted_edges = edges;
  std::sort(sorted_edges.begin(), sorted_edges.end());
  for (std::size_t i = 0; i + 1 < sorted_edges.size(); ++i)
    if (sorted_edges[i] == sorted_edges[i + 1])
      throw InvalidError("duplicate pattern edge");
  for (const auto& e : edges) {
    int m = arity;
    for (int i = 0; i < m; ++i)
      if (e[i] < 0 || e[i] >= parts) throw InvalidError("pattern edge part out of range");
    if (arity == 2 && e[2] != -1) throw InvalidError("2-ary pattern edges are pairs");
    if (!directed) {
      for (int i = 0; i + 1 < m; ++i)
        if (e[i] > e[i + 1]) throw InvalidError("undirected pattern edges must be sorted");
      if (m == 3 && e[0] == e[1] && e[1] == e[2]) loop[e[0]] = 1;
      if (m == 2 && e[0] == e[1]) loop[e[0]] = 1;
    } else {
      if (e[0] == e[1]) throw InvalidError("directed pattern edges cannot be loops");
      if (e[2] != -1) throw InvalidError("directed pattern edges are pairs");
    }
  }
  std::vector<char> seen(parts, 0);
  for (std::size_t i = 0; i < recursive.size(); ++i) {
    int r = recursive[i];
    if (r < 0 || r >= parts) throw InvalidError("recursive part out of range");
    if (seen[r]++) throw InvalidError("duplicate recursive part");
    if (i && recursive[i - 1] > r) throw InvalidError("recursive parts must be sorted");
    if (loop[r]) throw InvalidError("a part cannot be both recursive and loop-complete");
  }
}

Pattern Pattern::balanced(int arity, bool directed, int parts,
                          const std::vector<std::array<int, 3>>& edges,
                          std::vector<int> recursive) {
  Pattern p;
  p.arity = arity;
  p.directed = directed;
  p.parts = parts;
  p.edges = edges;
  for (auto& e : p.edges) {
    if (!directed) {
      int m = arity;
      std::sort(e.begin(), e.begin() + m);
    }
    if (arity == 2) e[2] = -1;
  }
  std::sort(p.edges.begin(), p.edges.end());
  std::sort(recursive.begin(), recursive.end());
  p.recursive = std::move(recursive);
  Rat each(1, static_cast<unsigned long>(parts));
  each.canonicalize();
  p.weights.assign(parts, each);
  p.validate();
  return p;
}

Pattern Pattern::parse(std::string_view text) {
  Pattern p;
  bool have_parts = false, have_weights = false, have_arity = false;
  std::vector<std::string> weight_toks;
  std::vector<std::string> edge_toks;
  std::vector<int> rec;

  std::string_view rest = text;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  while (!rest.empty()) {
    auto semi = rest.find(';');
    std::string_view item = trim(rest.substr(0, semi));
    if (semi == std::string_view::npos)
      rest = {};
    else
      rest.remove_prefix(semi + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw InvalidError("pattern items look like key=value: '" + std::string(item) + "'");
    std::string_view key = trim(item.substr(0, eq));
    std::string_view val = trim(item.substr(eq + 1));
    auto split_commas = [&](std::string_view v) {
      std::vector<std::string> out;
      while (!v.empty()) {
        auto comma = v.find(',');
        out.emplace_back(trim(v.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
      }
      return out;
    };
    if (key == "parts") {
      p.parts = static_cast<int>(parse_rational(val).get_num().get_si());
      have_parts = true;
    } else if (key == "weights") {
      weight_toks = split_commas(val);
      have_weights = true;
    } else if (key == "edges") {
      edge_toks = split_commas(val);
    } else if (key == "recursive") {
      for (const auto& tok : split_commas(val)) {
        if (tok.size() != 1) throw InvalidError("recursive takes part symbols");
        rec.push_back(part_value(tok[0]));
      }
    } else if (key == "directed") {
      if (val == "1")
        p.directed = true;
      else if (val != "0")
        throw InvalidError("directed must be 0 or 1");
    } else if (key == "arity") {
      if (val == "2")
        p.arity = 2;
      else if (val == "3")
        p.arity = 3;
      else
        throw InvalidError("arity must be 2 or 3");
      have_arity = true;
    } else {
      throw InvalidError("unknown pattern key '" + std::string(key) + "'");
    }
  }
  if (!have_parts) throw InvalidError("pattern needs parts=<k>");

  if (!edge_toks.empty()) {
    std::size_t len = edge_toks[0].size();
    for (const auto& tok : edge_toks)
      if (tok.size() != len) throw InvalidError("mixed pattern edge sizes");
    int inferred = static_cast<int>(len);
    if (have_arity && p.arity != inferred)
      throw InvalidError("pattern arity conflicts with edge size");
    p.arity = inferred;
  } else if (!have_arity) {
    p.arity = p.directed ? 2 : 3;
  }
  if (p.directed) p.arity = 2;

  for (const auto& tok : edge_toks) {
    std::array<int, 3> e = {-1, -1, -1};
    for (std::size_t i = 0; i < tok.size(); ++i) e[i] = part_value(tok[i]);
    if (!p.directed) std::sort(e.begin(), e.begin() + p.arity);
    p.edges.push_back(e);
  }
  std::sort(p.edges.begin(), p.edges.end());

  if (have_weights) {
    for (const auto& tok : weight_toks) p.weights.push_back(parse_rational(tok));
  } else {
    Rat each(1, static_cast<unsigned long>(std::max(p.parts, 1)));
    each.canonicalize();
    p.weights.assign(std::max(p.parts, 0), each);
  }
  std::sort(rec.begin(), rec.end());
  p.recursive = std::move(rec);
  p.validate();
  return p;
}

std::string Pattern::to_string() const {
  std::string out = "parts=" + std::to_string(parts);
  out += "; weights=";
  for (int i = 0; i < parts; ++i) {
    if (i) out += ',';
    out += rational_to_string(weights[i]);
  }
  if (!edges.empty()) {
    out += "; edges=";
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i) out += ',';
      for (int j = 0; j < arity; ++j) out += part_symbol(edges[i][j]);
    }
  }
  if (!recursive.empty()) {
    out += "; recursive=";
    for (std::size_t i = 0; i < recursive.size(); ++i) {
      if (i) out += ',';
      out += part_symbol(recursive[i]);
    }
  }
  out += "; directed=";
  out += directed ? '1' : '0';
  return out;
}

Pattern complement_pattern(const Pattern& p) {
  p.validate();
  if (p.directed) throw InvalidError("complement patterns are undirected");
  if (!p.recursive.empty()) throw InvalidError("complement patterns cannot be recursive");
  Pattern out = p;
  out.edges.clear();
  EdgeTable tbl(p);
  if (p.arity == 3) {
    for (int a = 0; a < p.parts; ++a)
      for (int b = a; b < p.parts; ++b)
        for (int c = b; c < p.parts; ++c)
          if (!tbl.has3(a, b, c)) out.edges.push_back({a, b, c});
  } else {
    for (int a = 0; a < p.parts; ++a)
      for (int b = a; b < p.parts; ++b)
        if (!tbl.has2(a, b)) out.edges.push_back({a, b, -1});
  }
  out.validate();
  return out;
}

Rat blowup_density(const Pattern& p, const UniformGraph& h) {
  return blowup_impl<Rat>(p, p.weights, h);
}

double blowup_density(const Pattern& p, const std::vector<double>& weights,
                      const UniformGraph& h) {
  return blowup_impl<double>(p, weights, h);
}

Rat iterated_density(const Pattern& p, const UniformGraph& h) {
  return iterated_impl<Rat>(p, p.weights, h);
}

double iterated_density(const Pattern& p, const std::vector<double>& weights,
                        const UniformGraph& h) {
  return iterated_impl<double>(p, weights, h);
}

namespace {

Rat pattern_density_rat(const Pattern& p, const std::vector<Rat>& w,
                        const std::vector<UniformGraph>& targets) {
  if (targets.empty()) throw InvalidError("no targets");
  Rat sum(0);
  for (const auto& h : targets)
    sum += p.recursive.empty() ? blowup_impl<Rat>(p, w, h) : iterated_impl<Rat>(p, w, h);
  return sum;
}

}  // namespace

Rat pattern_density(const Pattern& p, const std::vector<UniformGraph>& targets) {
  return pattern_density_rat(p, p.weights, targets);
}

double pattern_density(const Pattern& p, const std::vector<double>& weights,
                       const std::vector<UniformGraph>& targets) {
  if (targets.empty()) throw InvalidError("no targets");
  double sum = 0;
  for (const auto& h : targets)
    sum += p.recursive.empty() ? blowup_impl<double>(p, weights, h)
                               : iterated_impl<double>(p, weights, h);
  return sum;
}

namespace {

// Grid points: compositions of m into `parts` nonnegative counts, visited in
// lexicographic order so ties keep the lexicographically smallest weights.
template <typename F>
void for_each_composition(int m, int parts, F&& fn) {
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto&& self, int idx, int left) -> void {
    if (idx == parts - 1) {
      cur[idx] = left;
      fn(cur);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      cur[idx] = c;
      self(self, idx + 1, left - c);
    }
  };
  rec(rec, 0, m);
}

}  // namespace

OptimizeResult optimize_weights(const Pattern& p,
                                const std::vector<UniformGraph>& targets,
                                double tol) {
  Pattern q = p;
  if (q.weights.empty() || static_cast<int>(q.weights.size()) != q.parts) {
    Rat each(1, static_cast<unsigned long>(std::max(q.parts, 1)));
    each.canonicalize();
    q.weights.assign(q.parts, each);
  }
  q.validate();
  if (targets.empty()) throw InvalidError("no targets");
  if (q.parts < 2) throw InvalidError("optimization needs at least two parts");
  if (tol <= 0 || tol > 0.1) throw InvalidError("tol must lie in (0, 0.1]");

  auto eval_double = [&](const std::vector<double>& w) -> double {
    try {
      return pattern_density(q, w, targets);
    } catch (const ComputeError&) {
      return -1.0;  // divergent corner of the simplex
    }
  };

  int parts = q.parts;
  // Power-of-two grid so the two-part refinement can stay dyadic.
  int m = parts == 2 ? 1024 : 1000;
  if (parts > 2) {
    // Keep the grid near a million points.
    double budget = 1.2e6;
    while (m > 4) {
      double points = 1;
      for (int i = 1; i < parts; ++i) points = points * (m + i) / i;
      if (points <= budget) break;
      m = m * 9 / 10;
    }
  }

  std::vector<int> best_counts;
  double best_val = -2;
  std::vector<double> w(parts);
  for_each_composition(m, parts, [&](const std::vector<int>& c) {
    for (int i = 0; i < parts; ++i) w[i] = static_cast<double>(c[i]) / m;
    double v = eval_double(w);
    if (v > best_val) {
      best_val = v;
      best_counts = c;
    }
  });
  if (best_counts.empty()) throw ComputeError("no feasible grid point");

  OptimizeResult out;
  if (parts == 2) {
    // One free weight: exact rational bracketing.
    auto eval_exact = [&](const Rat& x) -> Rat {
      std::vector<Rat> rw = {x, Rat(1) - x};
      try {
        return pattern_density_rat(q, rw, targets);
      } catch (const ComputeError&) {
        return Rat(-1);
      }
    };
    // Dyadic ternary search: the bracket is [a, a+2]/den with den a power of
    // two, so exact evaluation points keep small denominators.
    mpz_class a = std::max(0, std::min(best_counts[0] - 1, m - 2));
    mpz_class den = m;  // 2^10
    auto point = [&](int off) {
      mpz_class num = a + off;
      Rat r(num, den);
      r.canonicalize();
      return r;
    };
    double width = 2.0 / m;
    double want = std::min(tol, 1e-10);
    Rat fc = eval_exact(point(1));
    while (width > want) {
      a *= 2;
      den *= 2;
      width /= 2;
      Rat f1 = eval_exact(point(1));
      Rat f3 = eval_exact(point(3));
      if (f1 >= fc && f1 >= f3) {
        fc = f1;  // bracket [a, a+2]
      } else if (f3 >= fc && f3 >= f1) {
        fc = f3;
        a += 2;
      } else {
        a += 1;
      }
    }
    Rat mid = point(1);
    Rat fl = eval_exact(point(0)), fh = eval_exact(point(2));
    Rat spread = fc - std::min(fl, fh);
    Rat rest = Rat(1) - mid;
    out.weights = {mid.get_d(), rest.get_d()};
    out.value = approx_value(fc.get_d(), std::max(spread.get_d(), 0.0) + 1e-15);
    return out;
  }

  // Multi-part: floating pairwise-transfer descent from the best grid point.
  std::vector<double> cur(parts);
  for (int i = 0; i < parts; ++i) cur[i] = static_cast<double>(best_counts[i]) / m;
  double cur_val = best_val;
  double step = 1.0 / m;
  double floor_step = std::max(tol, 1e-12);
  int iterations = 0;
  while (step > floor_step / 2) {
    bool improved = false;
    for (int i = 0; i < parts; ++i) {
      for (int j = 0; j < parts; ++j) {
        if (i == j) continue;
        if (cur[j] < step) continue;
        std::vector<double> trial = cur;
        trial[i] += step;
        trial[j] -= step;
        double v = eval_double(trial);
        if (v > cur_val) {
          cur = trial;
          cur_val = v;
          improved = true;
        }
        if (++iterations > 2000000) throw ComputeError("optimizer failed to converge");
      }
    }
    if (!improved) step /= 2;
  }
  out.weights = cur;
  out.value = approx_value(cur_val, std::max(step * step, 1e-12));
  return out;
}

Pattern gt_pattern(int t) {
  if (t < 3 || t > 9) throw InvalidError("gt_pattern supports 3 <= t <= 9");
  // Chain patterns on s parts, loops on every part plus pair multisets
  // linking consecutive part pairs.
  auto chain_edges = [](int s) {
    std::vector<std::array<int, 3>> edges;
    if (s == 2) {
      edges = {{0, 0, 0}, {1, 1, 1}, {0, 0, 1}, {0, 1, 1}};
    } else if (s == 3) {
      edges = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {0, 0, 1}, {1, 1, 2}, {0, 2, 2}};
    } else {
      std::vector<std::array<int, 3>> prev;
      // Build iteratively from the base case of the same parity.
      int base = (s % 2 == 0) ? 2 : 3;
      if (base == 2)
        prev = {{0, 0, 0}, {1, 1, 1}, {0, 0, 1}, {0, 1, 1}};
      else
        prev = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {0, 0, 1}, {1, 1, 2}, {0, 2, 2}};
      for (int k = base + 2; k <= s; k += 2) {
        int a = k - 2, b = k - 1;  // the two new parts, 0-based
        prev.push_back({a, a, a});
        prev.push_back({b, b, b});
        prev.push_back({a, a, b});
        prev.push_back({a, b, b});
      }
      edges = prev;
    }
    for (auto& e : edges) std::sort(e.begin(), e.end());
    std::sort(edges.begin(), edges.end());
    return edges;
  };

  Pattern chain = Pattern::balanced(3, false, t - 1, chain_edges(t - 1));
  return complement_pattern(chain);
}

bool pattern_hom_exists(const UniformGraph& g, const Pattern& p) {
  p.validate();
  if (g.arity() != p.arity || g.directed() != p.directed)
    throw InvalidError("pattern and graph must share arity and directedness");
  int n = g.order();
  EdgeTable tbl(p);
  auto edges = g.edges();
  std::vector<std::vector<UniformGraph::Edge>> by_max(n);
  for (const auto& e : edges) {
    int mx = std::max({e[0], e[1], g.arity() == 3 ? e[2] : -1});
    by_max[mx].push_back(e);
  }
  std::vector<int> asg(n, -1);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int part = 0; part < p.parts; ++part) {
      asg[v] = part;
      bool ok = true;
      for (const auto& e : by_max[v]) {
        bool has;
        if (g.arity() == 3)
          has = tbl.has3(asg[e[0]], asg[e[1]], asg[e[2]]);
        else if (!g.directed())
          has = tbl.has2(asg[e[0]], asg[e[1]]);
        else
          has = tbl.has_arc(asg[e[0]], asg[e[1]]);
        if (!has) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, v + 1)) return true;
    }
    asg[v] = -1;
    return false;
  };
  return rec(rec, 0);
}

namespace {

std::vector<int> apportion(const std::vector<Rat>& w, int n) {
  int parts = static_cast<int>(w.size());
  std::vector<int> counts(parts, 0);
  std::vector<Rat> rem(parts);
  int assigned = 0;
  for (int i = 0; i < parts; ++i) {
    Rat quota = w[i] * n;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), quota.get_num().get_mpz_t(), quota.get_den().get_mpz_t());
    counts[i] = static_cast<int>(fl.get_si());
    rem[i] = quota - Rat(fl);
    assigned += counts[i];
  }
  while (assigned < n) {
    int pick = -1;
    for (int i = 0; i < parts; ++i)
      if (pick < 0 || rem[i] > rem[pick]) pick = i;
    counts[pick]++;
    rem[pick] = -1;
    assigned++;
  }
  return counts;
}

void fill_blowup(const Pattern& p, const EdgeTable& tbl, UniformGraph& g,
                 const std::vector<int>& verts, int depth) {
  int L = static_cast<int>(verts.size());
  std::vector<int> counts = apportion(p.weights, L);
  std::vector<int> part_of(L);
  std::vector<std::vector<int>> segment(p.parts);
  {
    int at = 0;
    for (int i = 0; i < p.parts; ++i)
      for (int c = 0; c < counts[i]; ++c) {
        part_of[at] = i;
        segment[i].push_back(verts[at]);
        ++at;
      }
  }
  std::vector<char> rec(p.parts, 0);
  for (int i : p.recursive) rec[i] = 1;

  if (p.arity == 3) {
    for (int c = 2; c < L; ++c)
      for (int b = 1; b < c; ++b)
        for (int a = 0; a < b; ++a) {
          int pa = part_of[a], pb = part_of[b], pc = part_of[c];
          if (pa == pb && pb == pc && rec[pa]) continue;
          if (tbl.has3(pa, pb, pc)) g.add_edge(verts[a], verts[b], verts[c]);
        }
  } else if (!p.directed) {
    for (int b = 1; b < L; ++b)
      for (int a = 0; a < b; ++a) {
        int pa = part_of[a], pb = part_of[b];
        if (pa == pb && rec[pa]) continue;
        if (tbl.has2(pa, pb)) g.add_edge(verts[a], verts[b]);
      }
  } else {
    for (int b = 1; b < L; ++b)
      for (int a = 0; a < b; ++a) {
        int pa = part_of[a], pb = part_of[b];
        if (pa == pb && rec[pa]) continue;
        if (tbl.has_arc(pa, pb)) g.add_arc(verts[a], verts[b]);
        if (tbl.has_arc(pb, pa)) g.add_arc(verts[b], verts[a]);
      }
  }

  if (depth > 1)
    for (int i : p.recursive)
      if (!segment[i].empty()) fill_blowup(p, tbl, g, segment[i], depth - 1);
}

}  // namespace

UniformGraph build_blowup(const Pattern& p, int n, int depth) {
  p.validate();
  if (n < 0 || n > kMaxBlowupOrder)
    throw InvalidError("build_blowup supports 0 <= n <= 200");
  if (depth < 1) throw InvalidError("depth must be >= 1");
  UniformGraph g(n, p.arity, p.directed);
  std::vector<int> verts(n);
  for (int i = 0; i < n; ++i) verts[i] = i;
  EdgeTable tbl(p);
  if (n > 0) fill_blowup(p, tbl, g, verts, depth);
  return g;
}

}  // namespace turan
