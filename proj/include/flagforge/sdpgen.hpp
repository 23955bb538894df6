#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flagforge/certificate.hpp"

namespace flagforge {

// Dual-form SDPA problem. Variables Y = diag(Q^tau..., S, c) where S is a
// diagonal slack block over the admissible graphs and c is a 1x1 block.
// Constraint i: sum_tau <D_i^tau, Q^tau> + s_i + c = p(K_k, G_i).
// Objective: maximize c.
struct SdpProblem {
  int k = 3, l = 3, order = 3;
  std::vector<SmallGraph> extra_forbidden;
  std::vector<SmallGraph> graphs;
  RationalVector clique_density;
  std::vector<TypeSpec> types;
  std::vector<std::vector<FlagSpec>> flags;
  std::vector<std::vector<IntMatrix>> coef;  // [graph][type]; empty when loaded from a skeleton

  std::size_t constraint_count() const { return graphs.size(); }
  // Type blocks, then the slack block (negative: diagonal), then the bound block.
  std::vector<long> block_struct() const;
};

// `types` nullopt selects every type of the universe.
SdpProblem generate_sdp(int k, int l, int order, const std::vector<SmallGraph>& extra_forbidden,
                        const std::optional<std::vector<TypeSpec>>& types, Execution ex = Execution::parallel);
void write_sdpa(const SdpProblem& problem, std::ostream& out);

// Certificate with zero-dimensional blocks and claimed bound 0.
Certificate skeleton_certificate(const SdpProblem& problem);
SdpProblem problem_from_skeleton(const Certificate& skeleton);

struct SdpSolution {
  std::vector<std::vector<std::vector<double>>> type_blocks;
  std::vector<double> slack;
  double objective = 0;
};

// Reads the dual matrix (yMat) of an SDPA result file.
SdpSolution parse_sdpa_solution(std::string_view text, const SdpProblem& problem);

struct RoundingSpec {
  std::vector<std::vector<std::vector<double>>> float_blocks;
  std::vector<std::vector<RationalVector>> forced_kernel;
  long denominator_cap = 1L << 20;
};

class RoundingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Continued-fraction approximation with denominator at most `cap`.
Rational rationalize(double x, long cap);

std::vector<PSDBlock> round_solution(const SdpProblem& problem, const RoundingSpec& spec,
                                     Execution ex = Execution::parallel);

// Per type: distinct forced vectors over embeddings into the pattern, plus,
// with `phantom`, into the pattern with one phantom cross-edge (the pattern
// must then be the expansion of co-K_{l-1}).
std::vector<std::vector<RationalVector>> collect_forced_vectors(const PatternGraph& pattern,
                                                                const std::vector<TypeSpec>& types,
                                                                const std::vector<std::vector<FlagSpec>>& flags,
                                                                bool phantom, int l);

// Skeleton plus rounded blocks; the claimed bound is the derived bound.
Certificate build_certificate(const SdpProblem& problem, std::vector<PSDBlock> blocks,
                              Execution ex = Execution::parallel);

}  // namespace flagforge
