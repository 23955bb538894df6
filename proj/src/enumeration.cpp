#include "flagforge/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>

namespace flagforge {

using Row = SmallGraph::Row;

TypeSpec FlagSpec::type() const {
  return TypeSpec{graph.induced(labeled >= 32 ? ~Row{0} : (Row{1} << labeled) - 1)};
}

std::string FlagSpec::to_string() const { return graph.to_string() + "(" + std::to_string(labeled) + ")"; }

FlagSpec parse_flag(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw ParseError("flag string '" + std::string(text) + "' must look like <graph>(<labeled>)");
  const auto digits = text.substr(open + 1, text.size() - open - 2);
  int labeled = -1;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), labeled);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || labeled < 0)
    throw ParseError("bad labelled-vertex count in flag '" + std::string(text) + "'");
  FlagSpec flag{parse_graph(text.substr(0, open)), labeled};
  if (labeled > flag.graph.order())
    throw ParseError("flag '" + std::string(text) + "' labels more vertices than it has");
  return flag;
}

FlagSpec canonical_flag(const FlagSpec& flag) {
  return FlagSpec{canonical_labeling(flag.graph, flag.labeled).graph, flag.labeled};
}

std::string canonical_flag_key(const FlagSpec& flag) { return canonical_flag(flag).to_string(); }

namespace {

// Does g contain an induced copy of f that uses vertex `pinned`?
bool has_induced_through(const SmallGraph& g, const SmallGraph& f, int pinned) {
  if (f.order() > g.order() || f.order() == 0) return f.order() == 0;
  const Row others = g.vertex_mask() & ~(Row{1} << pinned);
  const std::string key = canonical_key(f);
  const int edges = f.edge_count();
  for (Row s : subsets_of_size(others, f.order() - 1)) {
    const SmallGraph h = g.induced(s | (Row{1} << pinned));
    if (h.edge_count() == edges && canonical_key(h) == key) return true;
  }
  return false;
}

// Admissibility of g given that g minus its last vertex is admissible.
bool admits_extension(const Admissibility& rule, const SmallGraph& g) {
  const int last = g.order() - 1;
  const Row non_nb = g.vertex_mask() & ~g.neighbours(last) & ~(Row{1} << last);
  if (independence_number(g, non_nb) + 1 >= rule.alpha_lt) return false;
  for (const auto& f : rule.forbidden)
    if (has_induced_through(g, f, last)) return false;
  return true;
}

void check_rule(const Admissibility& rule) {
  if (rule.alpha_lt < 2) throw std::domain_error("alpha bound l must be at least 2");
}

std::vector<SmallGraph> admissible_level_graphs(int order, const Admissibility& rule, Execution ex) {
  check_rule(rule);
  std::vector<SmallGraph> level{SmallGraph(0)};
  for (int n = 0; n < order; ++n) {
    auto children = map_indices<std::vector<std::pair<std::string, SmallGraph>>>(
        level.size(),
        [&](std::size_t i) {
          std::vector<std::pair<std::string, SmallGraph>> out;
          const SmallGraph& parent = level[i];
          const Row limit = Row{1} << n;
          for (Row mask = 0; mask < limit; ++mask) {
            SmallGraph child = parent.with_vertex(mask);
            if (!admits_extension(rule, child)) continue;
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

}  // namespace

bool Admissibility::admits(const SmallGraph& g) const {
  if (independence_number(g) >= alpha_lt) return false;
  for (const auto& f : forbidden)
    if (f.order() <= g.order() && count_induced(f, g, Execution::serial) > 0) return false;
  return true;
}

std::vector<std::string> admissible_graphs(int order, const Admissibility& rule, Execution ex) {
  if (order < 1 || order > 10) throw std::domain_error("admissible_graphs: order must be in [1, 10]");
  std::vector<std::string> keys;
  for (const auto& g : admissible_level_graphs(order, rule, ex)) keys.push_back(g.to_string());
  return keys;
}

std::vector<std::string> admissible_graphs(int order, int alpha_lt, Execution ex) {
  return admissible_graphs(order, Admissibility{alpha_lt, {}}, ex);
}

std::vector<TypeSpec> enumerate_types(int order, const Admissibility& rule) {
  if (order < 1 || order > 10) throw std::domain_error("enumerate_types: order must be in [1, 10]");
  std::vector<TypeSpec> types;
  for (int v = order % 2; v < order; v += 2)
    for (auto& g : admissible_level_graphs(v, rule, Execution::parallel)) types.push_back(TypeSpec{std::move(g)});
  return types;
}

std::vector<TypeSpec> enumerate_types(int order, int alpha_lt) {
  return enumerate_types(order, Admissibility{alpha_lt, {}});
}

int flag_order_for(int universe_order, const TypeSpec& tau) {
  const int gap = universe_order - tau.order();
  if (gap <= 0 || gap % 2 != 0)
    throw std::domain_error("N - v(tau) must be a positive even number (N=" + std::to_string(universe_order) +
                            ", v=" + std::to_string(tau.order()) + ")");
  return (universe_order + tau.order()) / 2;
}

std::vector<FlagSpec> enumerate_flags(const TypeSpec& tau, int flag_order, const Admissibility& rule,
                                      Execution ex) {
  check_rule(rule);
  const int v = tau.order();
  if (flag_order < v) throw std::domain_error("flag order is below the type order");
  if (flag_order > SmallGraph::kMaxOrder) throw std::domain_error("flag order exceeds 32");
  if (!rule.admits(tau.graph)) throw std::domain_error("type " + tau.to_string() + " is not admissible");

  std::vector<SmallGraph> level{tau.graph};
  for (int n = v; n < flag_order; ++n) {
    auto children = map_indices<std::vector<std::pair<std::string, SmallGraph>>>(
        level.size(),
        [&](std::size_t i) {
          std::vector<std::pair<std::string, SmallGraph>> out;
          const Row limit = Row{1} << n;
          for (Row mask = 0; mask < limit; ++mask) {
            SmallGraph child = level[i].with_vertex(mask);
            if (!admits_extension(rule, child)) continue;
            auto canon = canonical_labeling(child, v);
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

  std::vector<FlagSpec> flags;
  flags.reserve(level.size());
  for (auto& g : level) {
    if (flag_order == v) g = canonical_labeling(g, v).graph;
    flags.push_back(FlagSpec{std::move(g), v});
  }
  std::sort(flags.begin(), flags.end(),
            [](const FlagSpec& a, const FlagSpec& b) { return a.to_string() < b.to_string(); });
  return flags;
}

std::vector<FlagSpec> enumerate_flags(const TypeSpec& tau, int flag_order, int alpha_lt, Execution ex) {
  return enumerate_flags(tau, flag_order, Admissibility{alpha_lt, {}}, ex);
}

}  // namespace flagforge
