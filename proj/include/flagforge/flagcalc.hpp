#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flagforge/constructions.hpp"
#include "flagforge/enumeration.hpp"
#include "flagforge/exactlin.hpp"

namespace flagforge {

struct Certificate;

// P(F, host): subsets of unlabelled host vertices that, with the labelled
// vertices, induce a copy of F as a flag. Throws std::invalid_argument if
// the two flags are over different types.
BigInt flag_count(const FlagSpec& f, const FlagSpec& host);

// coef(a, b; H): triples (chi, X1, X2) with chi an injection inducing tau,
// X1 and X2 meeting exactly in the image of chi, covering V(H), and
// inducing F_a and F_b. Throws if some extension is not in `flags`.
IntMatrix pair_coefficients(const TypeSpec& tau, const std::vector<FlagSpec>& flags, const SmallGraph& h);

// alpha_i = sum over types of <Q^tau, coef_tau(G_i)>.
RationalVector alpha_coefficients(const Certificate& cert, Execution ex = Execution::parallel);

struct BoundReport {
  Rational derived_bound;
  Rational claimed_bound;
  RationalVector clique_density;  // p(K_k, G_i)
  RationalVector alpha;
  RationalVector slack;           // p(K_k, G_i) - alpha_i - c'
  std::vector<std::size_t> sharp;
  bool ok = false;
  std::optional<std::size_t> violating;
};

BoundReport derive_bound(const Certificate& cert, Execution ex = Execution::parallel);
BoundReport derive_bound(const std::vector<SmallGraph>& graphs, int k, const RationalVector& alpha,
                         const Rational& claimed);

// Limit distribution of the flag reached by adding (M - v) weighted random
// vertices to tau placed on the parts listed in `embedding`. Indexed like
// `flags`. Throws std::domain_error if the embedding does not realize tau.
RationalVector forced_vector(const PatternGraph& pattern, const TypeSpec& tau, const std::vector<FlagSpec>& flags,
                             const std::vector<int>& embedding);

// One vector per distinct forced vector over all embeddings of tau.
std::vector<RationalVector> forced_vectors(const PatternGraph& pattern, const TypeSpec& tau,
                                           const std::vector<FlagSpec>& flags);

struct ForcedKernelEntry {
  std::size_t type_index = 0;
  RationalVector vector;
  bool in_kernel = false;
};

struct ForcedKernelReport {
  bool ok = true;
  std::vector<ForcedKernelEntry> entries;
};

ForcedKernelReport check_forced_kernel(const Certificate& cert, const PatternGraph& pattern,
                                       Execution ex = Execution::parallel);

}  // namespace flagforge
