#include "flagforge/smallgraph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace flagforge {

using Row = SmallGraph::Row;

namespace {

constexpr Row bit(int v) { return Row{1} << v; }

void check_vertex(int order, int v) {
  if (v < 0 || v >= order) throw std::out_of_range("vertex index out of range");
}

}  // namespace

SmallGraph::SmallGraph(int order) : order_(order) {
  if (order < 0 || order > kMaxOrder) throw std::domain_error("graph order must be in [0, 32]");
}

SmallGraph SmallGraph::complete(int order) {
  SmallGraph g(order);
  for (int v = 0; v < order; ++v) g.adj_[v] = g.vertex_mask() & ~bit(v);
  return g;
}

SmallGraph SmallGraph::cycle(int order) {
  SmallGraph g(order);
  if (order >= 3)
    for (int v = 0; v < order; ++v) g.add_edge(v, (v + 1) % order);
  return g;
}

int SmallGraph::degree(int v) const { return std::popcount(adj_[v]); }

int SmallGraph::edge_count() const {
  int twice = 0;
  for (int v = 0; v < order_; ++v) twice += std::popcount(adj_[v]);
  return twice / 2;
}

void SmallGraph::add_edge(int u, int v) {
  check_vertex(order_, u);
  check_vertex(order_, v);
  if (u == v) throw std::invalid_argument("loops are not allowed");
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
}

void SmallGraph::remove_edge(int u, int v) {
  check_vertex(order_, u);
  check_vertex(order_, v);
  adj_[u] &= ~bit(v);
  adj_[v] &= ~bit(u);
}

SmallGraph SmallGraph::induced(std::span<const int> vertices) const {
  SmallGraph h(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (adjacent(vertices[i], vertices[j])) {
        h.adj_[i] |= bit(static_cast<int>(j));
        h.adj_[j] |= bit(static_cast<int>(i));
      }
  return h;
}

SmallGraph SmallGraph::induced(Row mask) const {
  std::array<int, kMaxOrder> verts{};
  int count = 0;
  for (Row m = mask; m; m &= m - 1) verts[count++] = std::countr_zero(m);
  return induced(std::span<const int>(verts.data(), count));
}

SmallGraph SmallGraph::relabelled(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != order_) throw std::invalid_argument("permutation size mismatch");
  return induced(perm);
}

SmallGraph SmallGraph::with_vertex(Row mask) const {
  SmallGraph h(order_ + 1);
  for (int v = 0; v < order_; ++v) h.adj_[v] = adj_[v];
  for (Row m = mask & vertex_mask(); m; m &= m - 1) {
    const int v = std::countr_zero(m);
    h.adj_[v] |= bit(order_);
    h.adj_[order_] |= bit(v);
  }
  return h;
}

char vertex_char(int index) {
  if (index >= 0 && index < 9) return static_cast<char>('1' + index);
  if (index >= 9 && index < 32) return static_cast<char>('a' + (index - 9));
  throw std::out_of_range("vertex index out of range for graph strings");
}

int vertex_index(char c) {
  if (c >= '1' && c <= '9') return c - '1';
  if (c >= 'a' && c <= 'w') return c - 'a' + 9;
  return -1;
}

std::string SmallGraph::to_string() const {
  std::string s;
  s.reserve(2 + 2 * static_cast<std::size_t>(edge_count()));
  s += order_ == 0 ? '0' : vertex_char(order_ - 1);
  s += ':';
  for (int u = 0; u < order_; ++u)
    for (Row m = adj_[u] & ~((bit(u) << 1) - 1); m; m &= m - 1) {
      s += vertex_char(u);
      s += vertex_char(std::countr_zero(m));
    }
  return s;
}

SmallGraph parse_graph(std::string_view text) {
  if (text.size() < 2 || text[1] != ':')
    throw ParseError("graph string '" + std::string(text) + "' must look like <order>:<edges>");
  int order = 0;
  if (text[0] != '0') {
    const int idx = vertex_index(text[0]);
    if (idx < 0) throw ParseError("bad order character '" + std::string(1, text[0]) + "'");
    order = idx + 1;
  }
  const std::string_view pairs = text.substr(2);
  if (pairs.size() % 2 != 0)
    throw ParseError("odd number of edge characters in '" + std::string(text) + "'");
  SmallGraph g(order);
  for (std::size_t i = 0; i < pairs.size(); i += 2) {
    const std::string token(pairs.substr(i, 2));
    const int u = vertex_index(pairs[i]);
    const int v = vertex_index(pairs[i + 1]);
    if (u < 0 || v < 0 || u >= order || v >= order)
      throw ParseError("edge '" + token + "' names a vertex outside 1.." + std::to_string(order));
    if (u == v) throw ParseError("edge '" + token + "' is a loop");
    if (g.adjacent(u, v)) throw ParseError("edge '" + token + "' is repeated");
    g.add_edge(u, v);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Canonical labelling.
//
// The key is the least edge string over all relabellings. Reading the
// upper triangle row by row, that is the relabelling whose row sequence is
// lexicographically largest when a row is a bit string over later positions
// (earlier positions more significant). Positions are filled in order; the
// vertex at position p must come from the first cell of the ordered
// partition of unplaced vertices, and its row depends only on the number of
// its neighbours in each cell. Ties are branched, pruned by automorphisms
// found at equal leaves.

namespace {

Row position_bits(int start, int count) {
  if (count == 0) return 0;
  const Row run = count >= 32 ? ~Row{0} : (bit(count) - 1);
  return run << (32 - start - count);
}

class CanonicalSearch {
 public:
  CanonicalSearch(const SmallGraph& g, int fixed_prefix) : g_(g), n_(g.order()), fixed_(fixed_prefix) {
    perm_.assign(n_, -1);
    rows_.assign(n_, 0);
  }

  CanonicalLabeling run() {
    std::vector<Row> cells;
    for (int v = 0; v < fixed_; ++v) cells.push_back(bit(v));
    const Row rest = g_.vertex_mask() & ~(fixed_ >= 32 ? ~Row{0} : bit(fixed_) - 1);
    if (rest) cells.push_back(rest);
    search(cells, 0);
    CanonicalLabeling out{g_.relabelled(best_perm_), best_perm_};
    return out;
  }

 private:
  struct Child {
    int vertex;
    Row row;
    std::vector<Row> cells;
  };

  Child individualize(const std::vector<Row>& cells, int pos, int x) const {
    Child c{x, 0, {}};
    c.cells.reserve(cells.size() + 4);
    int start = pos + 1;
    const Row nb = g_.neighbours(x);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const Row cell = i == 0 ? cells[0] & ~bit(x) : cells[i];
      if (!cell) continue;
      const Row in = cell & nb;
      const Row out = cell & ~nb;
      c.row |= position_bits(start, std::popcount(in));
      start += std::popcount(cell);
      if (in) c.cells.push_back(in);
      if (out) c.cells.push_back(out);
    }
    return c;
  }

  // -1, 0, +1 comparing rows_[0..len) against best_rows_[0..len).
  int compare_prefix(int len) const {
    for (int i = 0; i < len; ++i) {
      if (rows_[i] != best_rows_[i]) return rows_[i] > best_rows_[i] ? 1 : -1;
    }
    return 0;
  }

  int find(std::vector<int>& parent, int x) const {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  std::vector<int> orbit_roots(int pos) const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& gamma : automorphisms_) {
      bool fixes = true;
      for (int j = 0; j < pos && fixes; ++j) fixes = gamma[perm_[j]] == perm_[j];
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        int a = find(parent, v), b = find(parent, gamma[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n_; ++v) parent[v] = find(parent, v);
    return parent;
  }

  void leaf() {
    const int cmp = have_best_ ? compare_prefix(n_) : 1;
    if (cmp > 0) {
      best_rows_ = rows_;
      best_perm_ = perm_;
      have_best_ = true;
    } else if (cmp == 0) {
      std::vector<int> gamma(n_);
      bool identity = true;
      for (int j = 0; j < n_; ++j) {
        gamma[best_perm_[j]] = perm_[j];
        identity = identity && best_perm_[j] == perm_[j];
      }
      if (!identity) automorphisms_.push_back(std::move(gamma));
    }
  }

  void search(const std::vector<Row>& cells, int pos) {
    if (pos == n_) {
      leaf();
      return;
    }
    std::vector<Child> children;
    Row best_row = 0;
    for (Row m = cells[0]; m; m &= m - 1) {
      Child c = individualize(cells, pos, std::countr_zero(m));
      if (children.empty() || c.row > best_row) {
        best_row = c.row;
        children.clear();
        children.push_back(std::move(c));
      } else if (c.row == best_row) {
        children.push_back(std::move(c));
      }
    }
    rows_[pos] = best_row;
    if (have_best_ && compare_prefix(pos + 1) < 0) return;

    std::vector<int> explored;
    for (auto& child : children) {
      if (!explored.empty() && !automorphisms_.empty()) {
        const auto roots = orbit_roots(pos);
        const bool covered = std::any_of(explored.begin(), explored.end(),
                                         [&](int e) { return roots[e] == roots[child.vertex]; });
        if (covered) continue;
      }
      rows_[pos] = best_row;
      if (have_best_ && compare_prefix(pos + 1) < 0) return;
      perm_[pos] = child.vertex;
      search(child.cells, pos + 1);
      explored.push_back(child.vertex);
    }
  }

  const SmallGraph& g_;
  int n_;
  int fixed_;
  std::vector<int> perm_;
  std::vector<Row> rows_;
  std::vector<int> best_perm_;
  std::vector<Row> best_rows_;
  bool have_best_ = false;
  std::vector<std::vector<int>> automorphisms_;
};

}  // namespace

CanonicalLabeling canonical_labeling(const SmallGraph& g, int fixed_prefix) {
  if (fixed_prefix < 0 || fixed_prefix > g.order()) throw std::invalid_argument("fixed prefix out of range");
  if (g.order() == 0) return {g, {}};
  return CanonicalSearch(g, fixed_prefix).run();
}

std::string canonical_key(const SmallGraph& g) { return canonical_labeling(g).graph.to_string(); }

std::string canonical_key_bruteforce(const SmallGraph& g) {
  std::vector<int> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best = g.to_string();
  do {
    std::string s = g.relabelled(perm).to_string();
    if (s < best) best = std::move(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool isomorphic(const SmallGraph& a, const SmallGraph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  return canonical_key(a) == canonical_key(b);
}

// ---------------------------------------------------------------------------

namespace {

void max_clique_rec(const SmallGraph& g, Row cand, int size, int& best) {
  if (!cand) {
    best = std::max(best, size);
    return;
  }
  if (size + std::popcount(cand) <= best) return;
  const int v = std::countr_zero(cand);
  max_clique_rec(g, cand & g.neighbours(v), size + 1, best);
  max_clique_rec(g, cand & ~bit(v), size, best);
}

void max_independent_rec(const SmallGraph& g, Row cand, int size, int& best) {
  if (!cand) {
    best = std::max(best, size);
    return;
  }
  if (size + std::popcount(cand) <= best) return;
  const int v = std::countr_zero(cand);
  max_independent_rec(g, cand & ~g.neighbours(v) & ~bit(v), size + 1, best);
  max_independent_rec(g, cand & ~bit(v), size, best);
}

std::uint64_t clique_count_rec(const SmallGraph& g, Row cand, int remaining) {
  if (remaining == 0) return 1;
  if (std::popcount(cand) < remaining) return 0;
  std::uint64_t total = 0;
  for (Row m = cand; m; m &= m - 1) {
    const int v = std::countr_zero(m);
    const Row later = cand & ~((bit(v) << 1) - 1);
    total += clique_count_rec(g, later & g.neighbours(v), remaining - 1);
  }
  return total;
}

}  // namespace

int clique_number(const SmallGraph& g, Row within) {
  int best = 0;
  max_clique_rec(g, within & g.vertex_mask(), 0, best);
  return best;
}

int independence_number(const SmallGraph& g, Row within) {
  int best = 0;
  max_independent_rec(g, within & g.vertex_mask(), 0, best);
  return best;
}

int clique_number(const SmallGraph& g) { return clique_number(g, g.vertex_mask()); }
int independence_number(const SmallGraph& g) { return independence_number(g, g.vertex_mask()); }

bool has_independent_set(const SmallGraph& g, int size) { return independence_number(g) >= size; }

SmallGraph complement(const SmallGraph& g) {
  SmallGraph h(g.order());
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (!g.adjacent(u, v)) h.add_edge(u, v);
  return h;
}

BigInt count_cliques(const SmallGraph& g, int k) {
  if (k < 0) return 0;
  BigInt out;
  const std::uint64_t c = clique_count_rec(g, g.vertex_mask(), k);
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(c), 0, 0, &c);
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

namespace {

template <class Fn>
void for_each_subset_rec(Row universe, int k, Row chosen, Fn& fn) {
  if (k == 0) {
    fn(chosen);
    return;
  }
  if (std::popcount(universe) < k) return;
  const int v = std::countr_zero(universe);
  const Row rest = universe & ~bit(v);
  for_each_subset_rec(rest, k - 1, chosen | bit(v), fn);
  for_each_subset_rec(rest, k, chosen, fn);
}

struct InducedMatcher {
  explicit InducedMatcher(const SmallGraph& f) : order(f.order()), edges(f.edge_count()), key(canonical_key(f)) {
    for (int v = 0; v < f.order(); ++v) degrees.push_back(f.degree(v));
    std::sort(degrees.begin(), degrees.end());
  }
  bool matches(const SmallGraph& h) const {
    if (h.edge_count() != edges) return false;
    std::vector<int> d;
    d.reserve(order);
    for (int v = 0; v < order; ++v) d.push_back(h.degree(v));
    std::sort(d.begin(), d.end());
    if (d != degrees) return false;
    if (edges == 0 || edges == order * (order - 1) / 2) return true;
    return canonical_key(h) == key;
  }
  int order;
  int edges;
  std::string key;
  std::vector<int> degrees;
};

}  // namespace

std::vector<Row> subsets_of_size(Row universe, int k) {
  std::vector<Row> out;
  auto push = [&](Row s) { out.push_back(s); };
  for_each_subset_rec(universe, k, 0, push);
  return out;
}

BigInt count_induced(const SmallGraph& f, const SmallGraph& g, Execution ex) {
  if (f.order() > g.order()) throw std::domain_error("count_induced: v(F) > v(G)");
  if (f.order() == 0) return 1;
  const InducedMatcher matcher(f);
  const int n = g.order();
  const int k = f.order();
  // Split by the smallest vertex of the subset.
  const auto counts = map_indices<std::uint64_t>(
      static_cast<std::size_t>(n),
      [&](std::size_t first) {
        std::uint64_t count = 0;
        const int v = static_cast<int>(first);
        const Row later = g.vertex_mask() & ~((bit(v) << 1) - 1);
        auto visit = [&](Row s) {
          if (matcher.matches(g.induced(s | bit(v)))) ++count;
        };
        for_each_subset_rec(later, k - 1, 0, visit);
        return count;
      },
      ex);
  BigInt total = 0;
  for (auto c : counts) total += static_cast<unsigned long>(c);
  return total;
}

Rational density(const SmallGraph& f, const SmallGraph& g, Execution ex) {
  Rational d(count_induced(f, g, ex), binomial(g.order(), f.order()));
  d.canonicalize();
  return d;
}

namespace {

void embed_rec(const SmallGraph& f, const SmallGraph& g, std::vector<int>& image, int next, Row used,
               std::uint64_t& count) {
  if (next == f.order()) {
    ++count;
    return;
  }
  for (Row m = g.vertex_mask() & ~used; m; m &= m - 1) {
    const int w = std::countr_zero(m);
    bool ok = true;
    for (int u = 0; u < next && ok; ++u) ok = f.adjacent(u, next) == g.adjacent(image[u], w);
    if (!ok) continue;
    image[next] = w;
    embed_rec(f, g, image, next + 1, used | bit(w), count);
  }
}

}  // namespace

BigInt count_embeddings(const SmallGraph& f, const SmallGraph& g) {
  if (f.order() > g.order()) return 0;
  std::vector<int> image(f.order(), -1);
  std::uint64_t count = 0;
  embed_rec(f, g, image, 0, 0, count);
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(count), 0, 0, &count);
  return out;
}

BigInt automorphism_count(const SmallGraph& g) { return count_embeddings(g, g); }

}  // namespace flagforge
