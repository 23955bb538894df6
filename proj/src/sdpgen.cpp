#include "flagforge/sdpgen.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ostream>

namespace flagforge {

namespace {

// Nearest double; mpq get_d truncates.
double nearest_double(const Rational& q) {
  const BigInt& n = q.get_num();
  const BigInt& d = q.get_den();
  if (abs(n) < (BigInt(1) << 53) && d < (BigInt(1) << 53)) return n.get_d() / d.get_d();
  return q.get_d();
}

std::string shortest_decimal(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

using DenseD = std::vector<std::vector<double>>;

DenseD to_double(const RationalMatrix& m) {
  DenseD out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_d();
  return out;
}

DenseD mul(const DenseD& a, const DenseD& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  DenseD c(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

DenseD transpose(const DenseD& a) {
  if (a.empty()) return {};
  DenseD t(a[0].size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// Gauss-Jordan inverse of a well-conditioned Gram matrix.
DenseD inverse(DenseD a) {
  const std::size_t n = a.size();
  DenseD inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0) throw RoundingError("singular Gram matrix while projecting");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const double d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const double f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

PSDBlock round_block(std::size_t index, const DenseD& y, const std::vector<RationalVector>& forced, long cap) {
  const std::size_t g = y.size();
  for (const auto& row : y)
    if (row.size() != g) throw DimensionError("float block " + std::to_string(index) + " is not square");
  for (const auto& v : forced)
    if (v.size() != g) throw DimensionError("forced vector has the wrong length for block " + std::to_string(index));

  // Columns of B span the orthogonal complement of the forced vectors.
  RationalMatrix basis;
  if (forced.empty()) {
    basis = RationalMatrix::identity(g);
  } else {
    RationalMatrix k(forced.size(), g);
    for (std::size_t i = 0; i < forced.size(); ++i)
      for (std::size_t j = 0; j < g; ++j) k(i, j) = forced[i][j];
    const auto ns = nullspace(k);
    basis = RationalMatrix(g, ns.size(), Rational(0));
    for (std::size_t c = 0; c < ns.size(); ++c)
      for (std::size_t r = 0; r < g; ++r) basis(r, c) = ns[c][r];
  }
  const std::size_t d = basis.cols();
  PSDBlock out{RationalMatrix(g, 0), {}};
  if (d == 0) return out;

  // C = (B^T B)^-1 B^T Y B (B^T B)^-1, so that B C B^T projects Y.
  const DenseD b = to_double(basis), bt = transpose(b);
  const DenseD gram_inv = inverse(mul(bt, b));
  DenseD c = mul(mul(gram_inv, mul(mul(bt, y), b)), gram_inv);
  double scale = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::abs(c[i][j]));

  RationalMatrix cq(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const double v = 0.5 * (c[i][j] + c[j][i]);
      cq(i, j) = cq(j, i) = std::abs(v) <= 1e-12 * std::max(scale, 1.0) ? Rational(0) : rationalize(v, cap);
    }

  // Exact LDL^T; nonpositive pivots are dropped with their columns.
  RationalMatrix l = RationalMatrix::identity(d);
  RationalVector diag(d, Rational(0));
  std::vector<std::size_t> kept;
  const double tolerance = 1e-6 * std::max(scale, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    Rational pivot = cq(j, j);
    for (std::size_t t = 0; t < j; ++t)
      if (diag[t] != 0) pivot -= l(j, t) * l(j, t) * diag[t];
    if (pivot <= 0) {
      if (pivot.get_d() < -tolerance)
        throw RoundingError("block " + std::to_string(index) + ": projected matrix is indefinite (pivot " +
                            std::to_string(pivot.get_d()) + " at column " + std::to_string(j) + ")");
      continue;
    }
    diag[j] = pivot;
    kept.push_back(j);
    for (std::size_t i = j + 1; i < d; ++i) {
      Rational s = cq(i, j);
      for (std::size_t t = 0; t < j; ++t)
        if (diag[t] != 0) s -= l(i, t) * l(j, t) * diag[t];
      l(i, j) = s / pivot;
    }
  }

  out.r = RationalMatrix(g, kept.size(), Rational(0));
  for (std::size_t c2 = 0; c2 < kept.size(); ++c2) {
    out.qdash.push_back(diag[kept[c2]]);
    for (std::size_t r = 0; r < g; ++r) {
      Rational s = 0;
      for (std::size_t t = 0; t < d; ++t)
        if (basis(r, t) != 0 && l(t, kept[c2]) != 0) s += basis(r, t) * l(t, kept[c2]);
      out.r(r, c2) = s;
    }
  }
  return out;
}

}  // namespace

std::vector<long> SdpProblem::block_struct() const {
  std::vector<long> out;
  for (const auto& f : flags) out.push_back(static_cast<long>(f.size()));
  out.push_back(-static_cast<long>(graphs.size()));
  out.push_back(-1);
  return out;
}

SdpProblem generate_sdp(int k, int l, int order, const std::vector<SmallGraph>& extra_forbidden,
                        const std::optional<std::vector<TypeSpec>>& types, Execution ex) {
  if (order < 1 || order > 8) throw std::domain_error("generate_sdp: order must be in [1, 8]");
  if (k < 1 || k > order) throw std::domain_error("generate_sdp: k must be in [1, order]");
  SdpProblem p;
  p.k = k;
  p.l = l;
  p.order = order;
  p.extra_forbidden = extra_forbidden;
  const Admissibility rule{l, extra_forbidden};
  for (const auto& key : admissible_graphs(order, rule, ex)) p.graphs.push_back(parse_graph(key));
  p.types = types ? *types : enumerate_types(order, rule);
  for (const auto& tau : p.types) p.flags.push_back(enumerate_flags(tau, flag_order_for(order, tau), rule, ex));
  const SmallGraph kk = SmallGraph::complete(k);
  for (const auto& g : p.graphs) p.clique_density.push_back(density(kk, g, Execution::serial));
  p.coef = map_indices<std::vector<IntMatrix>>(
      p.graphs.size(),
      [&](std::size_t i) {
        std::vector<IntMatrix> per;
        for (std::size_t t = 0; t < p.types.size(); ++t) per.push_back(pair_coefficients(p.types[t], p.flags[t], p.graphs[i]));
        return per;
      },
      ex);
  return p;
}

void write_sdpa(const SdpProblem& p, std::ostream& out) {
  if (p.coef.size() != p.graphs.size()) throw std::logic_error("write_sdpa: problem has no coefficient tables");
  const auto blocks = p.block_struct();
  const std::size_t slack_block = p.types.size() + 1, bound_block = p.types.size() + 2;
  out << "\"flagforge " << kConvention << " k=" << p.k << " l=" << p.l << " order=" << p.order << "\n";
  out << p.constraint_count() << "\n" << blocks.size() << "\n";
  for (std::size_t i = 0; i < blocks.size(); ++i) out << (i ? " " : "") << blocks[i];
  out << "\n";
  for (std::size_t i = 0; i < p.graphs.size(); ++i) out << (i ? " " : "") << shortest_decimal(nearest_double(p.clique_density[i]));
  out << "\n";
  out << "0 " << bound_block << " 1 1 1\n";
  for (std::size_t i = 0; i < p.graphs.size(); ++i) {
    for (std::size_t t = 0; t < p.types.size(); ++t) {
      const IntMatrix& d = p.coef[i][t];
      for (std::size_t a = 0; a < d.rows(); ++a)
        for (std::size_t b = a; b < d.cols(); ++b)
          if (d(a, b) != 0) out << i + 1 << " " << t + 1 << " " << a + 1 << " " << b + 1 << " " << d(a, b) << "\n";
    }
    out << i + 1 << " " << slack_block << " " << i + 1 << " " << i + 1 << " 1\n";
    out << i + 1 << " " << bound_block << " 1 1 1\n";
  }
}

Certificate skeleton_certificate(const SdpProblem& p) {
  Certificate c;
  c.problem = Problem{p.k, p.l, p.order, p.extra_forbidden, kConvention};
  c.claimed_bound = 0;
  c.admissible_graphs = p.graphs;
  c.types = p.types;
  c.flags = p.flags;
  for (const auto& f : p.flags) c.blocks.push_back(PSDBlock{RationalMatrix(f.size(), 0), {}});
  return c;
}

SdpProblem problem_from_skeleton(const Certificate& c) {
  SdpProblem p;
  p.k = c.problem.k;
  p.l = c.problem.l;
  p.order = c.problem.order;
  p.extra_forbidden = c.problem.extra_forbidden;
  p.graphs = c.admissible_graphs;
  p.types = c.types;
  p.flags = c.flags;
  const SmallGraph kk = SmallGraph::complete(p.k);
  for (const auto& g : p.graphs) p.clique_density.push_back(density(kk, g, Execution::serial));
  return p;
}

SdpSolution parse_sdpa_solution(std::string_view text, const SdpProblem& p) {
  SdpSolution sol;
  auto number_after = [&](std::string_view label) -> std::optional<double> {
    const auto pos = text.find(label);
    if (pos == std::string_view::npos) return std::nullopt;
    const std::string rest(text.substr(pos + label.size(), 80));
    const auto eq = rest.find('=');
    if (eq == std::string::npos) return std::nullopt;
    return std::strtod(rest.c_str() + eq + 1, nullptr);
  };
  if (auto v = number_after("objValDual")) sol.objective = *v;
  else if (auto w = number_after("objValPrimal")) sol.objective = *w;

  const auto pos = text.find("yMat");
  if (pos == std::string_view::npos) throw ParseError("SDPA solution has no yMat section");
  const std::string body(text.substr(pos + 4));
  std::vector<double> numbers;
  const char* s = body.c_str();
  while (*s) {
    const char ch = *s;
    if ((ch >= '0' && ch <= '9') || ch == '-' || ch == '+' || ch == '.') {
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end == s) {
        ++s;
        continue;
      }
      numbers.push_back(v);
      s = end;
    } else {
      ++s;
    }
  }
  std::size_t at = 0;
  auto take = [&]() {
    if (at >= numbers.size()) throw ParseError("SDPA solution yMat is shorter than the block structure");
    return numbers[at++];
  };
  for (const auto& f : p.flags) {
    const std::size_t g = f.size();
    std::vector<std::vector<double>> y(g, std::vector<double>(g));
    for (auto& row : y)
      for (auto& v : row) v = take();
    sol.type_blocks.push_back(std::move(y));
  }
  for (std::size_t i = 0; i < p.graphs.size(); ++i) sol.slack.push_back(take());
  return sol;
}

Rational rationalize(double x, long cap) {
  if (!std::isfinite(x)) throw RoundingError("cannot rationalize a non-finite value");
  if (cap < 1) throw std::invalid_argument("denominator cap must be positive");
  const bool negative = x < 0;
  long double y = std::fabs(static_cast<long double>(x));
  BigInt h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a = std::floor(y);
    BigInt ai;
    mpz_set_d(ai.get_mpz_t(), static_cast<double>(a));
    const BigInt h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > cap) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const long double frac = y - a;
    if (frac < 1e-15L) break;
    y = 1 / frac;
  }
  Rational q(h1, k1);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::vector<PSDBlock> round_solution(const SdpProblem& p, const RoundingSpec& spec, Execution ex) {
  if (spec.float_blocks.size() != p.types.size())
    throw DimensionError("round_solution: one float block per type required");
  if (!spec.forced_kernel.empty() && spec.forced_kernel.size() != p.types.size())
    throw DimensionError("round_solution: forced kernel lists must match the types");
  return map_indices<PSDBlock>(
      p.types.size(),
      [&](std::size_t t) {
        if (spec.float_blocks[t].size() != p.flags[t].size())
          throw DimensionError("round_solution: block " + std::to_string(t) + " has the wrong size");
        static const std::vector<RationalVector> none;
        return round_block(t, spec.float_blocks[t], spec.forced_kernel.empty() ? none : spec.forced_kernel[t],
                           spec.denominator_cap);
      },
      ex);
}

std::vector<std::vector<RationalVector>> collect_forced_vectors(const PatternGraph& pattern,
                                                                const std::vector<TypeSpec>& types,
                                                                const std::vector<std::vector<FlagSpec>>& flags,
                                                                bool phantom, int l) {
  if (phantom && (pattern.parts() != l - 1 || pattern.base.edge_count() != 0 ||
                  pattern.mode != PatternMode::expansion))
    throw std::invalid_argument("phantom vectors need the expansion of co-K_{l-1} as pattern");
  std::vector<std::vector<RationalVector>> out;
  for (std::size_t t = 0; t < types.size(); ++t) {
    auto vecs = forced_vectors(pattern, types[t], flags[t]);
    if (phantom)
      for (auto& v : forced_vectors(phantom_pattern(l), types[t], flags[t]))
        if (std::find(vecs.begin(), vecs.end(), v) == vecs.end()) vecs.push_back(std::move(v));
    out.push_back(std::move(vecs));
  }
  return out;
}

Certificate build_certificate(const SdpProblem& p, std::vector<PSDBlock> blocks, Execution ex) {
  Certificate c = skeleton_certificate(p);
  c.blocks = std::move(blocks);
  c.claimed_bound = derive_bound(c, ex).derived_bound;
  return c;
}

}  // namespace flagforge
