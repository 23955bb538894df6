#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flagforge/enumeration.hpp"
#include "flagforge/exactlin.hpp"

namespace flagforge {

struct ExtremalResult {
  int n = 0, k = 0, l = 0;
  bool complete = false;          // false: budget exhausted, no value claimed
  std::optional<BigInt> value;
  std::vector<std::string> extremal_keys;
  BigInt pruning_bound;           // clique count of the complement of T_{l-1}(n)
  double seconds = 0;
};

// Exact min number of k-cliques over n-vertex graphs with alpha < l.
ExtremalResult brute_force_f(int n, int k, int l, double budget_seconds = 120,
                             Execution ex = Execution::parallel);

struct RamseyResult {
  int s = 0, t = 0, n = 0;
  bool complete = false;
  bool exists = false;  // an n-vertex graph with no K_s and no independent t-set
  std::optional<SmallGraph> witness;
};

RamseyResult ramsey_check(int s, int t, int n, double budget_seconds = 120, Execution ex = Execution::parallel);

// Types and their flag lists for a universe of order N.
struct Skeleton {
  int order = 0;
  int l = 3;
  std::vector<TypeSpec> types;
  std::vector<std::vector<FlagSpec>> flags;
};

Skeleton full_skeleton(int order, int l);

using CoefficientTable = std::function<IntMatrix(const TypeSpec&, const std::vector<FlagSpec>&, const SmallGraph&)>;

struct IdentityReport {
  int order = 0, l = 0;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t checks = 0;
  BigInt max_discrepancy;
  std::optional<std::string> counterexample;
  bool passed() const { return max_discrepancy == 0 && !counterexample; }
};

// Checks, for host graphs G of orders N and N+1, that the direct count of
// (psi, X1, X2) over G equals sum_i coef(.,.;G_i) P(G_i, G). trials == 0
// means every admissible graph of both orders; otherwise `trials` seeded
// random admissible graphs per order.
IdentityReport identity_audit(const Skeleton& skeleton, int trials, std::uint64_t seed,
                              const CoefficientTable& table = {}, Execution ex = Execution::parallel);

}  // namespace flagforge
