#include "flagforge/constructions.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "flagforge/exactlin.hpp"

namespace flagforge {

using Row = SmallGraph::Row;

namespace {

Row bit(int v) { return Row{1} << v; }

template <class Fn>
void for_each_bit(Row mask, Fn fn) {
  while (mask) {
    fn(std::countr_zero(mask));
    mask &= mask - 1;
  }
}

// Number of maps from an n-set onto a j-set.
BigInt surjections(int n, int j) {
  BigInt s = 0;
  for (int i = 0; i <= j; ++i) {
    BigInt term = binomial(j, i);
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), BigInt(j - i).get_mpz_t(), static_cast<unsigned long>(n));
    term *= p;
    if (i % 2) s -= term;
    else s += term;
  }
  return s;
}

BigInt power(long base, int e) {
  BigInt p;
  mpz_pow_ui(p.get_mpz_t(), BigInt(base).get_mpz_t(), static_cast<unsigned long>(e));
  return p;
}

// Probability that `draws` weighted part draws restricted to `allowed` are
// pairwise adjacent, same part allowed iff `repeat_ok`.
Rational draw_probability(const SmallGraph& f, const std::vector<Rational>& w, Row allowed, int draws,
                          bool repeat_ok) {
  std::map<std::pair<Row, int>, Rational> memo;
  std::function<Rational(Row, Rational, int)> go = [&](Row s, const Rational& inside, int r) -> Rational {
    if (r == 0) return 1;
    const auto key = std::make_pair(s, r);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Rational total = 0;
    if (repeat_ok && inside != 0) total += inside * go(s, inside, r - 1);
    Row cand = allowed & ~s;
    for_each_bit(s, [&](int u) { cand &= f.neighbours(u); });
    for_each_bit(cand, [&](int j) {
      if (w[j] > 0) total += w[j] * go(s | bit(j), inside + w[j], r - 1);
    });
    memo.emplace(key, total);
    return total;
  };
  return go(0, Rational(0), draws);
}

void collect_cliques(const SmallGraph& f, Row current, Row cand, std::vector<Row>& out) {
  out.push_back(current);
  while (cand) {
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    collect_cliques(f, current | bit(v), cand & f.neighbours(v), out);
  }
}

std::string pattern_weights_string(const PatternGraph& p) {
  std::string out;
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    if (i) out += ',';
    out += p.weights[i].get_str();
  }
  return out;
}

}  // namespace

PatternGraph PatternGraph::uniform(SmallGraph f, PatternMode mode) {
  const int m = f.order();
  if (m == 0) throw std::invalid_argument("pattern needs at least one part");
  PatternGraph p{std::move(f), std::vector<Rational>(m, Rational(1, m)), mode, {}};
  return p;
}

void PatternGraph::validate() const {
  if (static_cast<int>(weights.size()) != base.order())
    throw std::invalid_argument("pattern has " + std::to_string(weights.size()) + " weights for " +
                                std::to_string(base.order()) + " parts");
  if (!singleton.empty() && static_cast<int>(singleton.size()) != base.order())
    throw std::invalid_argument("singleton flags do not match the part count");
  Rational sum = 0;
  for (int i = 0; i < base.order(); ++i) {
    if (weights[i] < 0) throw std::invalid_argument("negative pattern weight");
    if (is_singleton(i) && weights[i] != 0) throw std::invalid_argument("singleton part must have weight 0");
    sum += weights[i];
  }
  if (sum != 1) throw std::invalid_argument("pattern weights sum to " + sum.get_str() + ", not 1");
}

std::string PatternGraph::to_string() const {
  return std::string(mode == PatternMode::expansion ? "expansion" : "blowup") + ":" + base.to_string() + ":" +
         pattern_weights_string(*this);
}

PatternGraph parse_pattern(std::string_view text) {
  const auto first = text.find(':');
  const auto last = text.rfind(':');
  if (first == std::string_view::npos || first == last)
    throw ParseError("pattern '" + std::string(text) + "' must look like <mode>:<graph>:<weights>");
  const auto mode_text = text.substr(0, first);
  const auto graph_text = text.substr(first + 1, last - first - 1);
  const auto weight_text = text.substr(last + 1);

  PatternMode mode;
  if (mode_text == "expansion") mode = PatternMode::expansion;
  else if (mode_text == "blowup") mode = PatternMode::blowup;
  else throw ParseError("unknown pattern mode '" + std::string(mode_text) + "'");

  SmallGraph f;
  if (graph_text == "clebsch") f = clebsch_graph();
  else if (graph_text == "coclebsch") f = complement(clebsch_graph());
  else f = parse_graph(graph_text);

  PatternGraph p = PatternGraph::uniform(f, mode);
  if (weight_text != "uniform") {
    p.weights.clear();
    std::size_t pos = 0;
    while (pos <= weight_text.size()) {
      const auto comma = std::min(weight_text.find(',', pos), weight_text.size());
      p.weights.push_back(parse_rational(weight_text.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("pattern '") + std::string(text) + "': " + e.what());
  }
  return p;
}

PatternGraph phantom_pattern(int l) {
  if (l < 3) throw std::domain_error("phantom pattern needs l >= 3");
  const int m = l - 1;
  SmallGraph f(m + 2);
  const int p1 = m, p2 = m + 1;
  f.add_edge(p1, 0);
  f.add_edge(p2, 1);
  f.add_edge(p1, p2);
  PatternGraph p{f, std::vector<Rational>(m + 2, Rational(1, m)), PatternMode::expansion,
                 std::vector<bool>(m + 2, false)};
  p.weights[p1] = p.weights[p2] = 0;
  p.singleton[p1] = p.singleton[p2] = true;
  return p;
}

SmallGraph expansion_graph(const PatternGraph& pattern, const std::vector<int>& sizes) {
  if (static_cast<int>(sizes.size()) != pattern.parts())
    throw std::invalid_argument("expansion_graph: one size per part required");
  int total = 0;
  for (int i = 0; i < pattern.parts(); ++i) {
    if (sizes[i] < 0) throw std::invalid_argument("expansion_graph: negative part size");
    if (pattern.is_singleton(i) && sizes[i] > 1) throw std::invalid_argument("singleton part holds one vertex");
    total += sizes[i];
  }
  if (total > SmallGraph::kMaxOrder) throw std::domain_error("expansion order exceeds 32");
  std::vector<int> part_of;
  for (int i = 0; i < pattern.parts(); ++i) part_of.insert(part_of.end(), sizes[i], i);
  SmallGraph g(total);
  for (int a = 0; a < total; ++a)
    for (int b = a + 1; b < total; ++b)
      if (pattern.joined(part_of[a], part_of[b])) g.add_edge(a, b);
  return g;
}

Rational clique_density_limit(const PatternGraph& pattern, int k) {
  pattern.validate();
  if (k <= 0) return 1;
  return draw_probability(pattern.base, pattern.weights, pattern.base.vertex_mask(), k,
                          pattern.mode == PatternMode::expansion);
}

Rational uniform_clique_density(const SmallGraph& f, int k, PatternMode mode) {
  const int m = f.order();
  BigInt count = 0;
  for (Row c : all_cliques(f)) {
    const int size = std::popcount(c);
    if (mode == PatternMode::expansion) count += surjections(k, size);
    else if (size == k) count += surjections(k, k);
  }
  Rational out(count, power(m, k));
  out.canonicalize();
  return out;
}

BigInt expansion_clique_count(const PatternGraph& pattern, const std::vector<int>& sizes, int k) {
  if (static_cast<int>(sizes.size()) != pattern.parts())
    throw std::invalid_argument("expansion_clique_count: one size per part required");
  if (k < 0) return 0;
  const SmallGraph& f = pattern.base;
  std::vector<std::vector<BigInt>> factor(f.order(), std::vector<BigInt>(k + 1, BigInt(0)));
  for (int v = 0; v < f.order(); ++v) {
    if (pattern.mode == PatternMode::expansion)
      for (int m = 1; m <= std::min(k, sizes[v]); ++m) factor[v][m] = binomial(sizes[v], m);
    else if (k >= 1)
      factor[v][1] = sizes[v];
  }
  BigInt total = 0;
  std::function<void(int, Row, const std::vector<BigInt>&)> dfs = [&](int, Row cand,
                                                                      const std::vector<BigInt>& poly) {
    total += poly[k];
    while (cand) {
      const int v = std::countr_zero(cand);
      cand &= cand - 1;
      std::vector<BigInt> next(k + 1, BigInt(0));
      bool any = false;
      for (int a = 0; a <= k; ++a) {
        if (poly[a] == 0) continue;
        for (int b = 1; a + b <= k; ++b)
          if (factor[v][b] != 0) {
            next[a + b] += poly[a] * factor[v][b];
            any = true;
          }
      }
      if (any) dfs(v, cand & f.neighbours(v), next);
    }
  };
  std::vector<BigInt> start(k + 1, BigInt(0));
  start[0] = 1;
  dfs(-1, f.vertex_mask(), start);
  return total;
}

std::uint32_t clebsch_code(int vertex) {
  int seen = 0;
  for (std::uint32_t c = 0; c < 32; ++c)
    if (std::popcount(c) % 2 == 0 && seen++ == vertex) return c;
  throw std::out_of_range("Clebsch vertex index out of range");
}

std::string clebsch_label(int vertex) {
  const auto c = clebsch_code(vertex);
  std::string s(5, '0');
  for (int i = 0; i < 5; ++i)
    if ((c >> (4 - i)) & 1u) s[i] = '1';
  return s;
}

int clebsch_vertex(std::string_view label) {
  if (label.size() != 5) throw ParseError("Clebsch label must have 5 binary digits: '" + std::string(label) + "'");
  std::uint32_t c = 0;
  for (char ch : label) {
    if (ch != '0' && ch != '1') throw ParseError("Clebsch label must be binary: '" + std::string(label) + "'");
    c = (c << 1) | static_cast<std::uint32_t>(ch == '1');
  }
  if (std::popcount(c) % 2) throw ParseError("Clebsch label must have even weight: '" + std::string(label) + "'");
  int index = 0;
  for (std::uint32_t d = 0; d < c; ++d)
    if (std::popcount(d) % 2 == 0) ++index;
  return index;
}

SmallGraph clebsch_graph() {
  SmallGraph g(16);
  for (int a = 0; a < 16; ++a)
    for (int b = a + 1; b < 16; ++b)
      if (std::popcount(clebsch_code(a) ^ clebsch_code(b)) == 4) g.add_edge(a, b);
  return g;
}

Rational clebsch_clique_formula(int k) {
  if (k < 1) throw std::domain_error("clebsch_clique_formula: k >= 1");
  const BigInt num = 5 * power(5, k - 1) + 10 * power(4, k - 1) - 30 * power(3, k - 1) + 20 * power(2, k - 1) - 4;
  Rational out(num, power(16, k - 1));
  out.canonicalize();
  return out;
}

std::vector<Row> all_cliques(const SmallGraph& f) {
  std::vector<Row> out;
  collect_cliques(f, 0, f.vertex_mask(), out);
  return out;
}

std::vector<Row> maximal_independent_sets(const SmallGraph& g, int through_vertex) {
  // Bron-Kerbosch on the complement.
  const SmallGraph h = complement(g);
  std::vector<Row> out;
  std::function<void(Row, Row, Row)> bk = [&](Row r, Row p, Row x) {
    if (!p && !x) {
      out.push_back(r);
      return;
    }
    while (p) {
      const int v = std::countr_zero(p);
      bk(r | bit(v), p & h.neighbours(v), x & h.neighbours(v));
      p &= ~bit(v);
      x |= bit(v);
    }
  };
  if (through_vertex >= 0)
    bk(bit(through_vertex), h.neighbours(through_vertex), 0);
  else
    bk(0, g.vertex_mask(), 0);
  std::sort(out.begin(), out.end());
  return out;
}

Rational gradient(const SmallGraph& f, Row x, int k) {
  const int m = f.order();
  if (m == 0) throw std::domain_error("gradient: empty pattern");
  BigInt count = 0;
  for (Row c : all_cliques(f))
    if ((c & ~x) == 0) count += surjections(k - 1, std::popcount(c));
  Rational out(count, power(m, k - 1));
  out.canonicalize();
  return out;
}

Rational gradient_weighted(const PatternGraph& pattern, Row x, int draws) {
  pattern.validate();
  return draw_probability(pattern.base, pattern.weights, x & pattern.base.vertex_mask(), draws, true);
}

std::vector<LegalSetReport> legal_sets(const SmallGraph& f, int l, int k, Execution ex) {
  const int m = f.order();
  if (m > 24) throw std::domain_error("legal_sets: pattern too large for subset scan");
  if (l < 2) throw std::domain_error("legal_sets: l >= 2");
  const Row all = f.vertex_mask();
  const auto cliques = all_cliques(f);
  std::vector<BigInt> surj(m + 1);
  for (int j = 0; j <= m; ++j) surj[j] = surjections(k - 1, j);
  const BigInt denom = power(m, k - 1);
  std::vector<Row> closed;
  for (int i = 0; i < m; ++i) closed.push_back(f.neighbours(i) | bit(i));

  const std::size_t total = std::size_t{1} << m;
  std::vector<LegalSetReport> out(total);
  for_each_index(
      total,
      [&](std::size_t idx) {
        const Row x = static_cast<Row>(idx);
        LegalSetReport& rep = out[idx];
        rep.set = x;
        rep.legal = independence_number(f, all & ~x) < l - 1;
        std::vector<unsigned long long> by_size(m + 1, 0);
        for (Row c : cliques)
          if ((c & ~x) == 0) ++by_size[std::popcount(c)];
        BigInt count = 0;
        for (int j = 0; j <= m; ++j)
          if (by_size[j]) count += surj[j] * BigInt(static_cast<unsigned long>(by_size[j]));
        rep.gradient = Rational(count, denom);
        rep.gradient.canonicalize();
        rep.is_closed_neighbourhood = std::find(closed.begin(), closed.end(), x) != closed.end();
      },
      ex);
  return out;
}

StrictnessReport check_strict(const SmallGraph& f, int l, int k, const Rational& c, Execution ex) {
  StrictnessReport rep;
  for (const auto& s : legal_sets(f, l, k, ex)) {
    if (!s.legal) continue;
    ++rep.legal_count;
    if (!s.is_closed_neighbourhood && s.gradient <= c) rep.violations.push_back(s.set);
  }
  rep.strict = rep.violations.empty();
  return rep;
}

namespace {

// Backtracking over maps V(H) -> parts; `visit` returns false to stop.
void search_embeddings(const SmallGraph& h, const PatternGraph& p,
                       const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = h.order();
  std::vector<int> phi(n, -1);
  Row used_singletons = 0;
  bool stop = false;
  std::function<void(int)> go = [&](int v) {
    if (stop) return;
    if (v == n) {
      if (!visit(phi)) stop = true;
      return;
    }
    for (int part = 0; part < p.parts() && !stop; ++part) {
      if (!p.usable(part)) continue;
      if (p.is_singleton(part) && (used_singletons & bit(part))) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = h.adjacent(u, v) == p.joined(phi[u], part);
      if (!ok) continue;
      phi[v] = part;
      if (p.is_singleton(part)) used_singletons |= bit(part);
      go(v + 1);
      if (p.is_singleton(part)) used_singletons &= ~bit(part);
    }
  };
  go(0);
}

}  // namespace

bool embeds_in_blowup(const SmallGraph& h, const PatternGraph& pattern) {
  bool found = false;
  search_embeddings(h, pattern, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

std::vector<std::vector<int>> pattern_embeddings(const SmallGraph& h, const PatternGraph& pattern) {
  std::vector<std::vector<int>> out;
  search_embeddings(h, pattern, [&](const std::vector<int>& phi) {
    out.push_back(phi);
    return true;
  });
  return out;
}

std::vector<std::string> sharp_list_from_pattern(const PatternGraph& pattern, int n, int l, Execution ex) {
  const auto keys = admissible_graphs(n, l, ex);
  const auto keep = map_indices<char>(
      keys.size(), [&](std::size_t i) { return static_cast<char>(embeds_in_blowup(parse_graph(keys[i]), pattern)); },
      ex);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (keep[i]) out.push_back(keys[i]);
  return out;
}

std::vector<std::string> phantom_sharp_list(int l, int n, Execution ex) {
  if (l < 4) throw std::domain_error("phantom_sharp_list: l >= 4");
  return sharp_list_from_pattern(phantom_pattern(l), n, l, ex);
}

std::vector<std::string> clebsch_x_set() { return {"00000", "00011", "01100", "10001", "00110", "11000"}; }

namespace {

Row clebsch_mask(const std::vector<std::string>& labels) {
  Row m = 0;
  for (const auto& s : labels) m |= bit(clebsch_vertex(s));
  return m;
}

std::vector<std::string> labels_of(Row mask) {
  std::vector<std::string> out;
  for_each_bit(mask, [&](int v) { out.push_back(clebsch_label(v)); });
  return out;
}

Row class_mask(const SmallGraph& l, int x, Row z) {
  Row out = 0;
  for (int y = 0; y < 16; ++y)
    if ((l.neighbours(y) & z) == (l.neighbours(x) & z)) out |= bit(y);
  return out;
}

std::uint32_t permute_code(std::uint32_t c, const std::array<int, 5>& perm) {
  // Position i of the result takes position perm[i] of the input (MSB = 0).
  std::uint32_t out = 0;
  for (int i = 0; i < 5; ++i)
    if ((c >> (4 - perm[i])) & 1u) out |= 1u << (4 - i);
  return out;
}

}  // namespace

std::vector<std::string> clebsch_class(std::string_view vertex, std::string_view removed) {
  const SmallGraph l = clebsch_graph();
  Row z = clebsch_mask(clebsch_x_set());
  if (!removed.empty()) z &= ~bit(clebsch_vertex(removed));
  return labels_of(class_mask(l, clebsch_vertex(vertex), z));
}

std::vector<ClebschWitness> clebsch_witnesses(std::string_view x, std::string_view y) {
  const SmallGraph l = clebsch_graph();
  const int xi = clebsch_vertex(x), yi = clebsch_vertex(y);
  const auto xs = clebsch_x_set();
  const Row full = clebsch_mask(xs);
  std::vector<ClebschWitness> out;
  for (std::size_t t = 1; t < xs.size(); ++t) {
    const Row z = full & ~bit(clebsch_vertex(xs[t]));
    const Row cx = class_mask(l, xi, z), cy = class_mask(l, yi, z);
    if (cx & bit(yi)) continue;
    bool all = true, none = true;
    for_each_bit(cx, [&](int a) {
      for_each_bit(cy, [&](int b) {
        if (l.adjacent(a, b)) none = false;
        else all = false;
      });
    });
    if (all || none) out.push_back({std::string(x), std::string(y), xs[t], labels_of(cx), labels_of(cy)});
  }
  return out;
}

std::optional<ClebschWitness> clebsch_witness(std::string_view x, std::string_view y) {
  const auto all = clebsch_witnesses(x, y);
  if (all.empty()) return std::nullopt;
  return *std::min_element(all.begin(), all.end(), [](const ClebschWitness& a, const ClebschWitness& b) {
    return a.x_class.size() + a.y_class.size() < b.x_class.size() + b.y_class.size();
  });
}

ClebschAudit clebsch_equivalence_audit() {
  ClebschAudit audit;
  const SmallGraph l = clebsch_graph();
  const Row x = clebsch_mask(clebsch_x_set());
  audit.x_equivalence_trivial = true;
  for (int v = 0; v < 16; ++v)
    if (class_mask(l, v, x) != bit(v)) audit.x_equivalence_trivial = false;

  // Cyclic shifts and reversals of the five coordinates.
  std::vector<std::array<int, 5>> group;
  for (int s = 0; s < 5; ++s) {
    std::array<int, 5> rot{}, ref{};
    for (int i = 0; i < 5; ++i) {
      rot[i] = (i + s) % 5;
      ref[i] = (4 - i + s) % 5;
    }
    group.push_back(rot);
    group.push_back(ref);
  }

  for (int a = 0; a < 16; ++a)
    for (int b = a + 1; b < 16; ++b) {
      const auto xa = clebsch_label(a), yb = clebsch_label(b);
      auto w = clebsch_witness(xa, yb);
      if (!w) {
        audit.failures.emplace_back(xa, yb);
        continue;
      }
      audit.full.push_back(*w);
      const std::uint32_t ca = clebsch_code(a), cb = clebsch_code(b);
      bool representative = true;
      for (const auto& g : group) {
        auto pa = permute_code(ca, g), pb = permute_code(cb, g);
        if (pa > pb) std::swap(pa, pb);
        if (std::make_pair(pa, pb) < std::make_pair(ca, cb)) representative = false;
      }
      if (representative) audit.reduced.push_back(*w);
    }
  return audit;
}

namespace {

struct Monomial {
  double coef;
  std::vector<std::pair<int, int>> powers;  // (part, exponent)
};

std::vector<Monomial> clique_polynomial(const SmallGraph& f, int k) {
  std::vector<Monomial> out;
  std::vector<int> tuple;
  std::vector<double> fact(k + 1, 1.0);
  for (int i = 1; i <= k; ++i) fact[i] = fact[i - 1] * i;
  std::function<void(int)> go = [&](int start) {
    if (static_cast<int>(tuple.size()) == k) {
      Monomial m{fact[k], {}};
      for (int v : tuple) {
        if (!m.powers.empty() && m.powers.back().first == v) ++m.powers.back().second;
        else m.powers.push_back({v, 1});
      }
      for (auto& [v, e] : m.powers) m.coef /= fact[e];
      out.push_back(std::move(m));
      return;
    }
    for (int v = start; v < f.order(); ++v) {
      bool ok = true;
      for (int u : tuple) ok = ok && (u == v || f.adjacent(u, v));
      if (!ok) continue;
      tuple.push_back(v);
      go(v);
      tuple.pop_back();
    }
  };
  go(0);
  return out;
}

double poly_value(const std::vector<Monomial>& poly, const std::vector<double>& w) {
  double s = 0;
  for (const auto& m : poly) {
    double t = m.coef;
    for (auto [v, e] : m.powers) t *= std::pow(w[v], e);
    s += t;
  }
  return s;
}

std::vector<double> poly_gradient(const std::vector<Monomial>& poly, const std::vector<double>& w) {
  std::vector<double> g(w.size(), 0.0);
  for (const auto& m : poly)
    for (std::size_t a = 0; a < m.powers.size(); ++a) {
      double t = m.coef * m.powers[a].second * std::pow(w[m.powers[a].first], m.powers[a].second - 1);
      for (std::size_t b = 0; b < m.powers.size(); ++b)
        if (b != a) t *= std::pow(w[m.powers[b].first], m.powers[b].second);
      g[m.powers[a].first] += t;
    }
  return g;
}

std::vector<std::vector<double>> poly_hessian(const std::vector<Monomial>& poly, const std::vector<double>& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
  for (const auto& m : poly)
    for (std::size_t a = 0; a < m.powers.size(); ++a)
      for (std::size_t b = 0; b < m.powers.size(); ++b) {
        const auto [va, ea] = m.powers[a];
        const auto [vb, eb] = m.powers[b];
        double t = m.coef;
        if (a == b) {
          if (ea < 2) continue;
          t *= ea * (ea - 1) * std::pow(w[va], ea - 2);
        } else {
          t *= ea * std::pow(w[va], ea - 1) * eb * std::pow(w[vb], eb - 1);
        }
        for (std::size_t c = 0; c < m.powers.size(); ++c)
          if (c != a && c != b) t *= std::pow(w[m.powers[c].first], m.powers[c].second);
        h[va][vb] += t;
      }
  return h;
}

std::vector<double> project_simplex(std::vector<double> y) {
  std::vector<double> u = y;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0, theta = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - 1) / static_cast<double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  for (auto& v : y) v = std::max(v - theta, 0.0);
  return y;
}

// KKT residual on the simplex: spread of the gradient over the support plus
// any off-support coordinate whose gradient is below the support level.
double kkt_residual(const std::vector<double>& w, const std::vector<double>& g) {
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] > 1e-12) {
      lo = std::min(lo, g[i]);
      hi = std::max(hi, g[i]);
    }
  double r = hi - lo;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] <= 1e-12) r = std::max(r, lo - g[i]);
  return r;
}

// Dense Gaussian elimination with partial pivoting; false if singular.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-14) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return true;
}

void newton_polish(const std::vector<Monomial>& poly, std::vector<double>& w) {
  for (int it = 0; it < 50; ++it) {
    std::vector<int> support;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] > 1e-12) support.push_back(static_cast<int>(i));
    const std::size_t s = support.size();
    const auto g = poly_gradient(poly, w);
    const auto h = poly_hessian(poly, w);
    std::vector<std::vector<double>> a(s + 1, std::vector<double>(s + 1, 0.0));
    std::vector<double> rhs(s + 1, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) a[i][j] = h[support[i]][support[j]];
      a[i][s] = a[s][i] = 1.0;
      rhs[i] = -g[support[i]];
    }
    std::vector<double> step;
    if (!solve_dense(a, rhs, step)) return;
    std::vector<double> trial = w;
    for (std::size_t i = 0; i < s; ++i) trial[support[i]] += step[i];
    if (*std::min_element(trial.begin(), trial.end()) < 0) return;
    const double before = kkt_residual(w, g);
    const double after = kkt_residual(trial, poly_gradient(poly, trial));
    if (!(after < before) || poly_value(poly, trial) > poly_value(poly, w) + 1e-15) return;
    w = trial;
    if (after < 1e-15) return;
  }
}

}  // namespace

WeightOptimum optimize_weights(const SmallGraph& f, int k, double tolerance, std::uint64_t seed, int restarts) {
  if (tolerance <= 0) throw std::invalid_argument("optimize_weights: tolerance must be positive");
  const int m = f.order();
  if (m == 0) throw std::invalid_argument("optimize_weights: empty pattern");
  const auto poly = clique_polynomial(f, k);
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(1.0, 1.0);

  WeightOptimum best;
  best.density = std::numeric_limits<double>::infinity();
  constexpr int kMaxIterations = 20000;
  for (int start = 0; start <= restarts; ++start) {
    std::vector<double> w(m, 1.0 / m);
    if (start > 0) {
      double sum = 0;
      for (auto& v : w) sum += (v = gamma(rng));
      for (auto& v : w) v /= sum;
    }
    double step = 1.0;
    double value = poly_value(poly, w);
    int it = 0;
    for (; it < kMaxIterations; ++it) {
      const auto g = poly_gradient(poly, w);
      if (kkt_residual(w, g) < tolerance * 1e-3) break;
      std::vector<double> next;
      double next_value = 0;
      for (int tries = 0; tries < 60; ++tries) {
        std::vector<double> y(m);
        for (int i = 0; i < m; ++i) y[i] = w[i] - step * g[i];
        next = project_simplex(y);
        next_value = poly_value(poly, next);
        double lin = 0, sq = 0;
        for (int i = 0; i < m; ++i) {
          lin += g[i] * (next[i] - w[i]);
          sq += (next[i] - w[i]) * (next[i] - w[i]);
        }
        if (next_value <= value + lin + sq / (2 * step)) break;
        step /= 2;
      }
      double moved = 0;
      for (int i = 0; i < m; ++i) moved = std::max(moved, std::abs(next[i] - w[i]));
      w = std::move(next);
      value = next_value;
      step *= 2;
      if (moved < 1e-16) break;
    }
    newton_polish(poly, w);
    value = poly_value(poly, w);
    const double residual = kkt_residual(w, poly_gradient(poly, w));
    if (value < best.density) {
      best.weights = w;
      best.density = value;
      best.iterations = it;
      best.converged = residual < tolerance;
    }
  }
  return best;
}

}  // namespace flagforge
