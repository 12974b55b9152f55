#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turan/bits.hpp"
#include "turan/rational.hpp"

namespace turan {

// An r-uniform hypergraph, r in {2,3}; r=2 may be directed. Vertices are
// 0-based internally, 1-based in all text I/O. Edges are stored as an
// indicator over edge slots in colex order:
//   r=2 undirected: slot(a<b)   = C(b,2) + a
//   r=3 undirected: slot(a<b<c) = C(c,3) + C(b,2) + a
//   r=2 directed:   arcs of the pair a<b sit at 2*(C(b,2)+a) for a->b
//                   and 2*(C(b,2)+a)+1 for b->a
// All slots among the first k vertices precede slots touching vertex k.
class UniformGraph {
 public:
  using Edge = std::array<int, 3>;  // [2] == -1 for arity 2

  UniformGraph() : UniformGraph(0, 3, false) {}
  UniformGraph(int order, int arity, bool directed = false);

  static std::size_t slot_count(int order, int arity, bool directed);
  static std::size_t pair_slot(int a, int b);                // a < b
  static std::size_t triple_slot(int a, int b, int c);       // a < b < c
  static std::size_t arc_slot(int from, int to);

  int order() const { return order_; }
  int arity() const { return arity_; }
  bool directed() const { return directed_; }
  std::size_t slots() const { return slots_; }
  const BitVec& bits() const { return bits_; }

  std::size_t edge_slot(const Edge& e) const;  // e need not be sorted
  bool slot_test(std::size_t s) const { return bits_.test(s); }
  void slot_set(std::size_t s, bool v = true) { bits_.assign(s, v); }

  bool has_edge(int a, int b, int c) const;  // r=3, any order
  bool has_edge(int a, int b) const;         // r=2 undirected, any order
  bool has_arc(int from, int to) const;      // r=2 directed
  void add_edge(int a, int b, int c);
  void add_edge(int a, int b);
  void add_arc(int from, int to);

  std::size_t edge_count() const { return bits_.count(); }
  std::vector<Edge> edges() const;

  // Degree = number of edges containing the vertex; directed graphs report
  // out-degree in first and in-degree in second.
  std::vector<std::array<int, 2>> degrees() const;

  // Induced subgraph on the given vertices; vertex i of the result is verts[i]
  // (order matters, duplicates rejected).
  UniformGraph induced(const std::vector<int>& verts) const;

  // Image under a relabeling: vertex v of *this becomes perm[v].
  UniformGraph relabeled(const std::vector<int>& perm) const;

  UniformGraph complemented() const;  // undirected only

  // 2-graph on order()-1 vertices: the link of v (r=3 only). Vertices keep
  // their relative order.
  UniformGraph link(int v) const;

  bool operator==(const UniformGraph& o) const;

  // Text form "<n>:<e1>,<e2>,..." with vertex symbols 1-9 then a-z and a
  // leading 'd' for directed graphs. arity_hint disambiguates edgeless input.
  static UniformGraph parse(std::string_view text, int arity_hint = 3);
  std::string to_string() const;

 private:
  int order_;
  int arity_;
  bool directed_;
  std::size_t slots_;
  BitVec bits_;
};

struct CanonicalForm {
  int order = 0;
  int arity = 3;
  bool directed = false;
  BitVec bits;              // minimal edge indicator over all labelings
  std::uint64_t aut_size = 1;

  bool operator==(const CanonicalForm& o) const {
    return order == o.order && arity == o.arity && directed == o.directed &&
           bits == o.bits;
  }
  std::strong_ordering operator<=>(const CanonicalForm& o) const;

  UniformGraph representative() const;
  std::string key() const;  // text form of the representative
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& c) const {
    return c.bits.hash() ^ (static_cast<std::size_t>(c.order) << 1) ^
           (static_cast<std::size_t>(c.arity) << 8) ^
           (c.directed ? 0x5851f42d4c957f2dull : 0);
  }
};

// Minimal-bitstring canonical labeling by branch and bound over vertex
// orderings; aut_size counts the labelings attaining the minimum. Positions
// below fixed_prefix keep their vertices (used for rooted flags), and
// aut_size then counts only prefix-fixing automorphisms.
CanonicalForm canonical_form(const UniformGraph& g, int fixed_prefix = 0);

bool is_isomorphic(const UniformGraph& a, const UniformGraph& b);

enum class ContainMode { kSubgraph, kInduced };

// Does g contain a copy of f (not necessarily induced / induced)?
bool contains(const UniformGraph& g, const UniformGraph& f, ContainMode mode);

struct ForbiddenMember {
  UniformGraph graph;
  ContainMode mode = ContainMode::kSubgraph;
};

struct ForbiddenFamily {
  std::vector<ForbiddenMember> members;

  bool empty() const { return members.empty(); }
  bool admits(const UniformGraph& g) const;
};

// Number of h-subsets of V(g) inducing a graph isomorphic to h_graph.
std::uint64_t induced_count(const UniformGraph& h_graph, const UniformGraph& g);

// induced_count / C(n, h) as an exact rational; h > n gives 0.
Rat density(const UniformGraph& h_graph, const UniformGraph& g);

// Density of a family: the probability that a random |V|-subset induces a
// member (members must share order, arity, directedness).
Rat family_density(const std::vector<UniformGraph>& family, const UniformGraph& g);

// 3-graph on V(D) whose edges are the triples inducing an out-star S3 in the
// digon-free digraph D.
UniformGraph dto3_transform(const UniformGraph& d);

// Named graphs: "edge" (single 3-edge), "Kt", "Kt-", "Ct" (tight cycle),
// "F32", "H6", "H7", "Sk" (directed out-star), plus any literal graph string.
// Family names "m.k" (all 3-graphs on m vertices with k edges) are only
// accepted by named_family.
UniformGraph named_graph(std::string_view name);
std::vector<UniformGraph> named_family(std::string_view name);

inline constexpr int kMaxEnumerateOrder3 = 7;
inline constexpr int kMaxEnumerateOrderDirected = 5;
inline constexpr int kMaxEnumerateOrder2 = 8;

struct EnumerateOptions {
  int order = 0;
  int arity = 3;
  bool directed = false;
  bool allow_digons = false;
  ForbiddenFamily family;
};

// All isomorphism classes of graphs of the given order admitting the family,
// as canonical representatives sorted by canonical key. Generation extends by
// one vertex at a time and prunes by forbidden containment.
std::vector<UniformGraph> enumerate_graphs(const EnumerateOptions& opt);

// All family-admitting one-vertex extensions of the seeds, deduplicated by
// canonical form fixing the first fixed_prefix labels pointwise and sorted
// by edge indicator. Seeds must share order/arity/directedness.
std::vector<UniformGraph> extend_graphs(const std::vector<UniformGraph>& seeds,
                                        const ForbiddenFamily& family, bool allow_digons = false,
                                        int fixed_prefix = 0);

}  // namespace turan
