#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flagforge/enumeration.hpp"
#include "flagforge/smallgraph.hpp"

namespace flagforge {

enum class PatternMode { expansion, blowup };

// A base graph F whose vertices ("parts") carry weights. In expansion mode
// parts are cliques, in blowup mode independent sets; distinct parts are
// joined completely iff they are adjacent in F.
//
// A singleton part holds at most one vertex and must have weight 0. It
// models a vanishing-density vertex such as a phantom-edge endpoint.
struct PatternGraph {
  SmallGraph base;
  std::vector<Rational> weights;
  PatternMode mode = PatternMode::expansion;
  std::vector<bool> singleton;

  static PatternGraph uniform(SmallGraph f, PatternMode mode = PatternMode::expansion);

  int parts() const { return base.order(); }
  bool is_singleton(int part) const { return !singleton.empty() && singleton[part]; }
  // Parts that can host vertices of a large expansion.
  bool usable(int part) const { return weights[part] > 0 || is_singleton(part); }
  // Are two vertices placed in parts a and b adjacent?
  bool joined(int a, int b) const {
    return a == b ? mode == PatternMode::expansion : base.adjacent(a, b);
  }
  // Throws std::invalid_argument on negative weights, a sum other than 1,
  // or a singleton part of positive weight.
  void validate() const;
  std::string to_string() const;
};

// "expansion:<graph>:<weights>" or "blowup:<graph>:<weights>", with
// <weights> either "uniform" or a comma list of rationals. <graph> is a
// graph string or one of "clebsch", "coclebsch".
PatternGraph parse_pattern(std::string_view text);

// Expansion of co-K_{l-1} plus two singleton parts p1 ~ p2, p1 complete to
// part 0 and p2 complete to part 1: one extra edge between two parts.
PatternGraph phantom_pattern(int l);

SmallGraph expansion_graph(const PatternGraph& pattern, const std::vector<int>& sizes);

// Probability that k independent weighted draws of parts give pairwise
// adjacent vertices (same part counts as adjacent in expansion mode only).
Rational clique_density_limit(const PatternGraph& pattern, int k);
// Same quantity at uniform weights from the clique census of F:
// sum over cliques C of surj(k, |C|) / m^k.
Rational uniform_clique_density(const SmallGraph& f, int k, PatternMode mode = PatternMode::expansion);

// Number of k-cliques in the explicit expansion with the given part sizes.
BigInt expansion_clique_count(const PatternGraph& pattern, const std::vector<int>& sizes, int k);

// Clebsch graph L: even-weight binary 5-sequences in increasing numeric
// order, adjacent when they differ in exactly 4 coordinates.
SmallGraph clebsch_graph();
std::uint32_t clebsch_code(int vertex);
std::string clebsch_label(int vertex);
int clebsch_vertex(std::string_view label);

Rational clebsch_clique_formula(int k);

// All cliques of f (the empty clique included) as vertex masks.
std::vector<SmallGraph::Row> all_cliques(const SmallGraph& f);
std::vector<SmallGraph::Row> maximal_independent_sets(const SmallGraph& g, int through_vertex = -1);

struct LegalSetReport {
  SmallGraph::Row set = 0;
  bool legal = false;
  Rational gradient;
  bool is_closed_neighbourhood = false;
};

// Every subset of V(F), with its gradient for k-cliques.
std::vector<LegalSetReport> legal_sets(const SmallGraph& f, int l, int k, Execution ex = Execution::parallel);

// Uniform weights over V(F), k - 1 draws.
Rational gradient(const SmallGraph& f, SmallGraph::Row x, int k);
// General weights and number of draws, by dynamic programming.
Rational gradient_weighted(const PatternGraph& pattern, SmallGraph::Row x, int draws);

struct StrictnessReport {
  bool strict = true;
  std::size_t legal_count = 0;
  std::vector<SmallGraph::Row> violations;
};

StrictnessReport check_strict(const SmallGraph& f, int l, int k, const Rational& c,
                              Execution ex = Execution::parallel);

// Is H an induced subgraph of some (large) expansion of the pattern?
bool embeds_in_blowup(const SmallGraph& h, const PatternGraph& pattern);
// Every map V(H) -> parts realizing H; singleton parts used at most once.
std::vector<std::vector<int>> pattern_embeddings(const SmallGraph& h, const PatternGraph& pattern);

std::vector<std::string> sharp_list_from_pattern(const PatternGraph& pattern, int n, int l,
                                                 Execution ex = Execution::parallel);
std::vector<std::string> phantom_sharp_list(int l, int n, Execution ex = Execution::parallel);

struct ClebschWitness {
  std::string x, y, z;
  std::vector<std::string> x_class, y_class;
};

// Z = X \ {z} for the fixed set X = {00000,00011,01100,10001,00110,11000}.
std::vector<std::string> clebsch_x_set();
std::vector<std::string> clebsch_class(std::string_view vertex, std::string_view removed);
// All z in X \ {00000} separating x and y with a complete or empty
// bipartite graph between the classes, in the order of X.
std::vector<ClebschWitness> clebsch_witnesses(std::string_view x, std::string_view y);
// Preferred witness: smallest total class size, ties broken by X order.
std::optional<ClebschWitness> clebsch_witness(std::string_view x, std::string_view y);

struct ClebschAudit {
  bool x_equivalence_trivial = false;
  // One row per orbit of unordered pairs under cyclic shifts and reversal
  // of coordinates; the representative is the numerically least pair.
  std::vector<ClebschWitness> reduced;
  std::vector<ClebschWitness> full;
  std::vector<std::pair<std::string, std::string>> failures;
  bool passed() const { return x_equivalence_trivial && failures.empty() && full.size() == 120; }
};

ClebschAudit clebsch_equivalence_audit();

// Floating-point local minimization; not exact.
struct WeightOptimum {
  static constexpr bool exact = false;
  std::vector<double> weights;
  double density = 0;
  bool converged = false;
  int iterations = 0;
};

WeightOptimum optimize_weights(const SmallGraph& f, int k, double tolerance, std::uint64_t seed = 1,
                               int restarts = 24);

}  // namespace flagforge
