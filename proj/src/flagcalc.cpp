#include "flagforge/flagcalc.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "flagforge/certificate.hpp"

namespace flagforge {

using Row = SmallGraph::Row;

namespace {

// Every injection [v] -> V(h) inducing tau (as a labelled graph).
void for_each_type_injection(const SmallGraph& tau, const SmallGraph& h,
                             const std::function<void(const std::vector<int>&)>& fn) {
  const int v = tau.order();
  std::vector<int> chi(v, -1);
  Row used = 0;
  std::function<void(int)> go = [&](int i) {
    if (i == v) {
      fn(chi);
      return;
    }
    for (int x = 0; x < h.order(); ++x) {
      if (used & (Row{1} << x)) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = h.adjacent(chi[j], x) == tau.adjacent(j, i);
      if (!ok) continue;
      chi[i] = x;
      used |= Row{1} << x;
      go(i + 1);
      used &= ~(Row{1} << x);
    }
  };
  go(0);
}

std::unordered_map<std::string, std::size_t> flag_index(const std::vector<FlagSpec>& flags) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < flags.size(); ++i) index.emplace(canonical_flag_key(flags[i]), i);
  return index;
}

}  // namespace

BigInt flag_count(const FlagSpec& f, const FlagSpec& host) {
  if (f.labeled != host.labeled || !(f.type() == host.type()))
    throw std::invalid_argument("flag_count: flags " + f.to_string() + " and " + host.to_string() +
                                " are over different types");
  if (f.order() > host.order()) return 0;
  const int v = f.labeled;
  const Row labelled = v == 0 ? 0 : (Row{1} << v) - 1;
  const std::string key = canonical_flag_key(f);
  BigInt count = 0;
  for (Row s : subsets_of_size(host.graph.vertex_mask() & ~labelled, f.order() - v)) {
    const FlagSpec sub{host.graph.induced(labelled | s), v};
    if (canonical_flag_key(sub) == key) ++count;
  }
  return count;
}

IntMatrix pair_coefficients(const TypeSpec& tau, const std::vector<FlagSpec>& flags, const SmallGraph& h) {
  const std::size_t g = flags.size();
  IntMatrix coef(g, g, 0);
  if (g == 0) return coef;
  const int v = tau.order();
  const int m = flags[0].order();
  for (const auto& f : flags)
    if (f.order() != m || f.labeled != v)
      throw std::invalid_argument("pair_coefficients: flags must share order and type size");
  if (2 * m - v != h.order())
    throw std::invalid_argument("pair_coefficients: host order " + std::to_string(h.order()) + " is not 2M - v = " +
                                std::to_string(2 * m - v));
  const auto index = flag_index(flags);
  const int half = m - v;

  for_each_type_injection(tau.graph, h, [&](const std::vector<int>& chi) {
    Row image = 0;
    for (int x : chi) image |= Row{1} << x;
    const Row rest = h.vertex_mask() & ~image;
    std::unordered_map<Row, std::size_t> memo;
    auto lookup = [&](Row s) {
      if (auto it = memo.find(s); it != memo.end()) return it->second;
      std::vector<int> verts = chi;
      for (Row t = s; t; t &= t - 1) verts.push_back(std::countr_zero(t));
      const std::string key = canonical_flag_key(FlagSpec{h.induced(verts), v});
      const auto it = index.find(key);
      if (it == index.end())
        throw std::invalid_argument("pair_coefficients: extension " + key + " is not among the listed flags");
      memo.emplace(s, it->second);
      return it->second;
    };
    for (Row s1 : subsets_of_size(rest, half)) ++coef(lookup(s1), lookup(rest & ~s1));
  });
  return coef;
}

RationalVector alpha_coefficients(const Certificate& cert, Execution ex) {
  std::vector<RationalMatrix> q;
  for (const auto& b : cert.blocks) q.push_back(assemble(b));
  return map_indices<Rational>(
      cert.admissible_graphs.size(),
      [&](std::size_t i) {
        Rational a = 0;
        for (std::size_t t = 0; t < cert.types.size(); ++t)
          a += frobenius(q[t], pair_coefficients(cert.types[t], cert.flags[t], cert.admissible_graphs[i]));
        return a;
      },
      ex);
}

BoundReport derive_bound(const std::vector<SmallGraph>& graphs, int k, const RationalVector& alpha,
                         const Rational& claimed) {
  if (graphs.empty()) throw std::domain_error("derive_bound: no admissible graphs");
  if (alpha.size() != graphs.size()) throw DimensionError("derive_bound: one alpha per graph required");
  BoundReport rep;
  rep.claimed_bound = claimed;
  rep.alpha = alpha;
  const SmallGraph kk = SmallGraph::complete(k);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    rep.clique_density.push_back(density(kk, graphs[i], Execution::serial));
    const Rational gap = rep.clique_density[i] - alpha[i];
    if (i == 0 || gap < rep.derived_bound) rep.derived_bound = gap;
    if (!rep.violating && gap < claimed) rep.violating = i;
  }
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    rep.slack.push_back(rep.clique_density[i] - alpha[i] - rep.derived_bound);
    if (rep.slack.back() == 0) rep.sharp.push_back(i);
  }
  rep.ok = rep.derived_bound >= claimed;
  return rep;
}

BoundReport derive_bound(const Certificate& cert, Execution ex) {
  return derive_bound(cert.admissible_graphs, cert.problem.k, alpha_coefficients(cert, ex), cert.claimed_bound);
}

RationalVector forced_vector(const PatternGraph& pattern, const TypeSpec& tau, const std::vector<FlagSpec>& flags,
                             const std::vector<int>& embedding) {
  const int v = tau.order();
  if (static_cast<int>(embedding.size()) != v) throw std::domain_error("forced_vector: embedding has wrong length");
  Row singles = 0;
  for (int i = 0; i < v; ++i) {
    const int p = embedding[i];
    if (p < 0 || p >= pattern.parts() || !pattern.usable(p))
      throw std::domain_error("forced_vector: label " + std::to_string(i + 1) + " mapped to an unusable part");
    if (pattern.is_singleton(p)) {
      if (singles & (Row{1} << p)) throw std::domain_error("forced_vector: singleton part used twice");
      singles |= Row{1} << p;
    }
    for (int j = 0; j < i; ++j)
      if (tau.graph.adjacent(i, j) != pattern.joined(embedding[j], p))
        throw std::domain_error("forced_vector: embedding does not realize type " + tau.to_string());
  }
  RationalVector out(flags.size(), Rational(0));
  if (flags.empty()) return out;
  const int draws = flags[0].order() - v;
  const auto index = flag_index(flags);

  std::vector<int> positive;
  for (int p = 0; p < pattern.parts(); ++p)
    if (pattern.weights[p] > 0) positive.push_back(p);
  std::vector<std::size_t> odo(draws, 0);
  std::vector<int> parts(embedding);
  parts.resize(v + draws);
  while (true) {
    Rational prob = 1;
    for (int d = 0; d < draws; ++d) {
      parts[v + d] = positive[odo[d]];
      prob *= pattern.weights[parts[v + d]];
    }
    SmallGraph g(v + draws);
    for (int a = 0; a < v + draws; ++a)
      for (int b = a + 1; b < v + draws; ++b)
        if (a < v && b < v ? tau.graph.adjacent(a, b) : pattern.joined(parts[a], parts[b])) g.add_edge(a, b);
    const std::string key = canonical_flag_key(FlagSpec{g, v});
    const auto it = index.find(key);
    if (it == index.end()) throw std::domain_error("forced_vector: extension " + key + " is not among the flags");
    out[it->second] += prob;

    int d = 0;
    while (d < draws && ++odo[d] == positive.size()) odo[d++] = 0;
    if (d == draws) break;
  }
  return out;
}

std::vector<RationalVector> forced_vectors(const PatternGraph& pattern, const TypeSpec& tau,
                                           const std::vector<FlagSpec>& flags) {
  std::vector<RationalVector> out;
  for (const auto& e : pattern_embeddings(tau.graph, pattern)) {
    auto vec = forced_vector(pattern, tau, flags, e);
    if (std::find(out.begin(), out.end(), vec) == out.end()) out.push_back(std::move(vec));
  }
  return out;
}

ForcedKernelReport check_forced_kernel(const Certificate& cert, const PatternGraph& pattern, Execution ex) {
  auto per_type = map_indices<std::vector<ForcedKernelEntry>>(
      cert.types.size(),
      [&](std::size_t t) {
        std::vector<ForcedKernelEntry> entries;
        const RationalMatrix q = assemble(cert.blocks[t]);
        for (auto& vec : forced_vectors(pattern, cert.types[t], cert.flags[t])) {
          const bool ok = in_kernel(q, vec);
          entries.push_back({t, std::move(vec), ok});
        }
        return entries;
      },
      ex);
  ForcedKernelReport rep;
  for (auto& entries : per_type)
    for (auto& e : entries) {
      rep.ok = rep.ok && e.in_kernel;
      rep.entries.push_back(std::move(e));
    }
  return rep;
}

}  // namespace flagforge
