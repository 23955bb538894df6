#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flagforge/smallgraph.hpp"

namespace flagforge {

// Fully labelled admissible graph; vertex i carries label i+1.
struct TypeSpec {
  SmallGraph graph;

  int order() const { return graph.order(); }
  std::string to_string() const { return graph.to_string(); }
  bool operator==(const TypeSpec&) const = default;
};

// Graph whose first `labeled` vertices are the labelled copy of a type.
// Serialized as "<graph-string>(<labeled>)".
struct FlagSpec {
  SmallGraph graph;
  int labeled = 0;

  int order() const { return graph.order(); }
  TypeSpec type() const;
  std::string to_string() const;
  bool operator==(const FlagSpec&) const = default;
};

FlagSpec parse_flag(std::string_view text);
// Canonical form up to isomorphisms fixing every labelled vertex.
FlagSpec canonical_flag(const FlagSpec& flag);
std::string canonical_flag_key(const FlagSpec& flag);

// Admissibility for the (k, l) problem family: alpha(G) < l and no induced
// copy of any graph in `forbidden`.
struct Admissibility {
  int alpha_lt = 3;
  std::vector<SmallGraph> forbidden;

  bool admits(const SmallGraph& g) const;
};

// Every isomorphism class of order-N admissible graphs, sorted by key.
std::vector<std::string> admissible_graphs(int order, const Admissibility& rule,
                                           Execution ex = Execution::parallel);
std::vector<std::string> admissible_graphs(int order, int alpha_lt, Execution ex = Execution::parallel);

// All admissible graphs of orders v with N - v positive and even (v = 0
// included when N is even), by increasing order then key.
std::vector<TypeSpec> enumerate_types(int order, const Admissibility& rule);
std::vector<TypeSpec> enumerate_types(int order, int alpha_lt);

// All tau-flags of order M up to label-preserving isomorphism, sorted by
// canonical flag key.
std::vector<FlagSpec> enumerate_flags(const TypeSpec& tau, int flag_order, const Admissibility& rule,
                                      Execution ex = Execution::parallel);
std::vector<FlagSpec> enumerate_flags(const TypeSpec& tau, int flag_order, int alpha_lt,
                                      Execution ex = Execution::parallel);

// Flag order (N + v) / 2 for universe order N; throws std::domain_error
// unless N - v is positive and even.
int flag_order_for(int universe_order, const TypeSpec& tau);

}  // namespace flagforge
