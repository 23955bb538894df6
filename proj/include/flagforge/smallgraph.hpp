#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "flagforge/parallel.hpp"

namespace flagforge {

using Rational = mpq_class;
using BigInt = mpz_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected simple graph on at most 32 vertices, one adjacency word per
// vertex. Vertices are 0-based internally and 1-based in graph strings.
class SmallGraph {
 public:
  static constexpr int kMaxOrder = 32;
  using Row = std::uint32_t;

  SmallGraph() = default;
  explicit SmallGraph(int order);

  static SmallGraph complete(int order);
  static SmallGraph empty(int order) { return SmallGraph(order); }
  static SmallGraph cycle(int order);

  int order() const { return order_; }
  Row vertex_mask() const { return order_ == 32 ? ~Row{0} : (Row{1} << order_) - 1; }
  Row neighbours(int v) const { return adj_[v]; }
  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1u; }
  int degree(int v) const;
  int edge_count() const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  // Subgraph induced on the listed vertices, renumbered in list order.
  SmallGraph induced(std::span<const int> vertices) const;
  SmallGraph induced(Row mask) const;
  // New vertex i is old vertex perm[i].
  SmallGraph relabelled(std::span<const int> perm) const;
  // Appends one vertex adjacent to the vertices in `mask`.
  SmallGraph with_vertex(Row mask) const;

  // Edge-list string "<order>:<pairs>", pairs sorted by (min, max).
  std::string to_string() const;

  bool operator==(const SmallGraph& other) const = default;

 private:
  int order_ = 0;
  std::array<Row, kMaxOrder> adj_{};
};

char vertex_char(int index);
int vertex_index(char c);

SmallGraph parse_graph(std::string_view text);

// Canonical relabelling: perm[position] = original vertex. The first
// `fixed_prefix` vertices keep their positions (flag labels).
struct CanonicalLabeling {
  SmallGraph graph;
  std::vector<int> perm;
};

CanonicalLabeling canonical_labeling(const SmallGraph& g, int fixed_prefix = 0);
std::string canonical_key(const SmallGraph& g);

// Lexicographically least string over all |V|! relabelings. Test oracle for
// canonical_key; factorial time.
std::string canonical_key_bruteforce(const SmallGraph& g);

bool isomorphic(const SmallGraph& a, const SmallGraph& b);

int independence_number(const SmallGraph& g);
int clique_number(const SmallGraph& g);
int independence_number(const SmallGraph& g, SmallGraph::Row within);
int clique_number(const SmallGraph& g, SmallGraph::Row within);
bool has_independent_set(const SmallGraph& g, int size);

SmallGraph complement(const SmallGraph& g);

// Number of k-cliques.
BigInt count_cliques(const SmallGraph& g, int k);

// P(F, G): number of v(F)-subsets of V(G) inducing a copy of F.
BigInt count_induced(const SmallGraph& f, const SmallGraph& g, Execution ex = Execution::parallel);
// p(F, G) = P(F, G) / C(v(G), v(F)).
Rational density(const SmallGraph& f, const SmallGraph& g, Execution ex = Execution::parallel);

// Injective maps V(F) -> V(G) preserving edges and non-edges.
BigInt count_embeddings(const SmallGraph& f, const SmallGraph& g);
BigInt automorphism_count(const SmallGraph& g);

BigInt binomial(int n, int k);

// Helpers for iterating k-subsets of a bitmask.
std::vector<SmallGraph::Row> subsets_of_size(SmallGraph::Row universe, int k);

}  // namespace flagforge
