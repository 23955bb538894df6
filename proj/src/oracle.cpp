#include "flagforge/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <unordered_map>

#include "flagforge/constructions.hpp"
#include "flagforge/flagcalc.hpp"

namespace flagforge {

using Row = SmallGraph::Row;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Level-wise canonical augmentation keeping children accepted by `keep`,
// which sees the child with its newest vertex last. `keep` must describe a
// hereditary property. Returns nullopt if the budget runs out.
std::optional<std::vector<SmallGraph>> grow(int n, const std::function<bool(const SmallGraph&)>& keep,
                                            Clock::time_point start, double budget, Execution ex) {
  std::vector<SmallGraph> level{SmallGraph(0)};
  for (int m = 0; m < n; ++m) {
    if (elapsed(start) > budget) return std::nullopt;
    auto children = map_indices<std::vector<std::pair<std::string, SmallGraph>>>(
        level.size(),
        [&](std::size_t i) {
          std::vector<std::pair<std::string, SmallGraph>> out;
          for (Row mask = 0; mask < (Row{1} << m); ++mask) {
            SmallGraph child = level[i].with_vertex(mask);
            if (!keep(child)) continue;
            auto canon = canonical_labeling(child);
            out.emplace_back(canon.graph.to_string(), std::move(canon.graph));
          }
          return out;
        },
        ex);
    std::map<std::string, SmallGraph> merged;
    for (auto& batch : children)
      for (auto& [key, g] : batch) merged.emplace(std::move(key), std::move(g));
    level.clear();
    for (auto& [key, g] : merged) level.push_back(std::move(g));
  }
  return level;
}

// alpha < l for the child, given the parent satisfied it.
bool alpha_ok(const SmallGraph& g, int l) {
  const int last = g.order() - 1;
  const Row non_nb = g.vertex_mask() & ~g.neighbours(last) & ~(Row{1} << last);
  return independence_number(g, non_nb) + 1 < l;
}

bool clique_ok(const SmallGraph& g, int s) {
  const int last = g.order() - 1;
  return clique_number(g, g.neighbours(last)) + 1 < s;
}

}  // namespace

ExtremalResult brute_force_f(int n, int k, int l, double budget_seconds, Execution ex) {
  if (n < 1 || k < 1 || l < 2) throw std::domain_error("brute_force_f: need n, k >= 1 and l >= 2");
  if (n > SmallGraph::kMaxOrder) throw std::domain_error("brute_force_f: n exceeds 32");
  const auto start = Clock::now();
  ExtremalResult res{n, k, l, false, std::nullopt, {}, 0, 0};

  // Complement of the Turan graph: l-1 near-equal cliques, alpha = l-1 < l.
  const int parts = std::min(l - 1, n);
  std::vector<int> sizes(parts, n / parts);
  for (int i = 0; i < n % parts; ++i) ++sizes[i];
  res.pruning_bound = expansion_clique_count(PatternGraph::uniform(SmallGraph(parts)), sizes, k);

  // Clique counts never drop when vertices are added, so any ancestor of a
  // graph beating the bound also stays within it.
  const BigInt bound = res.pruning_bound;
  auto level = grow(
      n, [&](const SmallGraph& g) { return alpha_ok(g, l) && count_cliques(g, k) <= bound; }, start,
      budget_seconds, ex);
  res.seconds = elapsed(start);
  if (!level) return res;
  res.complete = true;
  for (const auto& g : *level) {
    const BigInt c = count_cliques(g, k);
    if (!res.value || c < *res.value) {
      res.value = c;
      res.extremal_keys.clear();
    }
    if (c == *res.value) res.extremal_keys.push_back(g.to_string());
  }
  return res;
}

RamseyResult ramsey_check(int s, int t, int n, double budget_seconds, Execution ex) {
  if (s < 1 || t < 1 || n < 0) throw std::domain_error("ramsey_check: bad parameters");
  RamseyResult res{s, t, n, false, false, std::nullopt};
  const auto start = Clock::now();
  auto level = grow(
      n, [&](const SmallGraph& g) { return clique_ok(g, s) && alpha_ok(g, t); }, start, budget_seconds, ex);
  if (!level) return res;
  res.complete = true;
  res.exists = !level->empty();
  if (res.exists) res.witness = level->front();
  return res;
}

Skeleton full_skeleton(int order, int l) {
  Skeleton sk{order, l, enumerate_types(order, l), {}};
  for (const auto& tau : sk.types) sk.flags.push_back(enumerate_flags(tau, flag_order_for(order, tau), l));
  return sk;
}

namespace {

SmallGraph random_admissible(int n, int l, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(0.65);
  while (true) {
    SmallGraph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (edge(rng)) g.add_edge(a, b);
    if (independence_number(g) < l) return g;
  }
}

// Injections [v] -> V(g) inducing tau, by plain backtracking.
std::vector<std::vector<int>> injections(const SmallGraph& tau, const SmallGraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> psi;
  std::function<void()> go = [&]() {
    const int i = static_cast<int>(psi.size());
    if (i == tau.order()) {
      out.push_back(psi);
      return;
    }
    for (int x = 0; x < g.order(); ++x) {
      if (std::find(psi.begin(), psi.end(), x) != psi.end()) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = g.adjacent(psi[j], x) == tau.adjacent(j, i);
      if (!ok) continue;
      psi.push_back(x);
      go();
      psi.pop_back();
    }
  };
  go();
  return out;
}

// Direct count of (psi, X1, X2) in g: psi induces tau, X1 and X2 are the
// image of psi plus disjoint (M - v)-sets.
IntMatrix direct_pair_counts(const TypeSpec& tau, const std::vector<FlagSpec>& flags, const SmallGraph& g) {
  const std::size_t nf = flags.size();
  IntMatrix out(nf, nf, 0);
  if (nf == 0) return out;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nf; ++i) index.emplace(canonical_flag_key(flags[i]), i);
  const int v = tau.order(), half = flags[0].order() - v;
  for (const auto& chi : injections(tau.graph, g)) {
    Row image = 0;
    for (int x : chi) image |= Row{1} << x;
    const Row rest = g.vertex_mask() & ~image;
    std::unordered_map<Row, std::ptrdiff_t> memo;
    auto lookup = [&](Row s) -> std::ptrdiff_t {
      if (auto it = memo.find(s); it != memo.end()) return it->second;
      std::vector<int> verts = chi;
      for (Row t = s; t; t &= t - 1) verts.push_back(std::countr_zero(t));
      const auto it = index.find(canonical_flag_key(FlagSpec{g.induced(verts), v}));
      const std::ptrdiff_t idx = it == index.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
      memo.emplace(s, idx);
      return idx;
    };
    for (Row a : subsets_of_size(rest, half))
      for (Row b : subsets_of_size(rest & ~a, half)) {
        const auto ia = lookup(a), ib = lookup(b);
        if (ia < 0 || ib < 0) throw std::invalid_argument("identity_audit: extension outside the flag list");
        ++out(ia, ib);
      }
  }
  return out;
}

}  // namespace

IdentityReport identity_audit(const Skeleton& sk, int trials, std::uint64_t seed, const CoefficientTable& table,
                              Execution ex) {
  IdentityReport rep;
  rep.order = sk.order;
  rep.l = sk.l;
  rep.seed = seed;
  rep.max_discrepancy = 0;
  if (sk.types.empty()) return rep;
  const CoefficientTable coef = table ? table : CoefficientTable(pair_coefficients);

  const auto keys = admissible_graphs(sk.order, sk.l, ex);
  std::unordered_map<std::string, std::size_t> graph_index;
  for (std::size_t i = 0; i < keys.size(); ++i) graph_index.emplace(keys[i], i);
  // tables[i][t] = coef_t(G_i)
  const auto tables = map_indices<std::vector<IntMatrix>>(
      keys.size(),
      [&](std::size_t i) {
        std::vector<IntMatrix> per;
        const SmallGraph gi = parse_graph(keys[i]);
        for (std::size_t t = 0; t < sk.types.size(); ++t) per.push_back(coef(sk.types[t], sk.flags[t], gi));
        return per;
      },
      ex);

  std::vector<SmallGraph> hosts;
  std::mt19937_64 rng(seed);
  for (int n : {sk.order, sk.order + 1}) {
    if (trials == 0) {
      for (const auto& k : admissible_graphs(n, sk.l, ex)) hosts.push_back(parse_graph(k));
    } else {
      for (int i = 0; i < trials; ++i) hosts.push_back(random_admissible(n, sk.l, rng));
    }
  }

  struct Outcome {
    BigInt worst = 0;
    std::size_t checks = 0;
    bool bad = false;
  };
  const auto outcomes = map_indices<Outcome>(
      hosts.size(),
      [&](std::size_t h) {
        const SmallGraph& g = hosts[h];
        Outcome o;
        // Sum of coef tables over the N-subsets of g.
        std::vector<Matrix<BigInt>> rhs;
        for (const auto& f : sk.flags) rhs.emplace_back(f.size(), f.size(), BigInt(0));
        for (Row u : subsets_of_size(g.vertex_mask(), sk.order)) {
          const auto it = graph_index.find(canonical_key(g.induced(u)));
          if (it == graph_index.end()) throw std::logic_error("identity_audit: inadmissible subgraph");
          for (std::size_t t = 0; t < sk.types.size(); ++t)
            for (std::size_t a = 0; a < rhs[t].rows(); ++a)
              for (std::size_t b = 0; b < rhs[t].cols(); ++b)
                rhs[t](a, b) += static_cast<long>(tables[it->second][t](a, b));
        }
        for (std::size_t t = 0; t < sk.types.size(); ++t) {
          const IntMatrix lhs = direct_pair_counts(sk.types[t], sk.flags[t], g);
          for (std::size_t a = 0; a < lhs.rows(); ++a)
            for (std::size_t b = 0; b < lhs.cols(); ++b) {
              BigInt d = rhs[t](a, b) - static_cast<long>(lhs(a, b));
              d = abs(d);
              ++o.checks;
              if (d > o.worst) o.worst = d;
              if (d != 0) o.bad = true;
            }
        }
        return o;
      },
      ex);

  rep.cases = hosts.size();
  for (std::size_t h = 0; h < hosts.size(); ++h) {
    rep.checks += outcomes[h].checks;
    if (outcomes[h].worst > rep.max_discrepancy) rep.max_discrepancy = outcomes[h].worst;
    if (outcomes[h].bad && !rep.counterexample) rep.counterexample = hosts[h].to_string();
  }
  return rep;
}

}  // namespace flagforge
