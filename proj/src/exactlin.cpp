#include "flagforge/exactlin.hpp"

#include <algorithm>
#include <cctype>

namespace flagforge {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

void require_dims(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("unparseable rational '" + std::string(text) + "'");
  BigInt p{std::string(num[0] == '+' ? num.substr(1) : num)};
  BigInt q{std::string(den)};
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational out(p, q);
  out.canonicalize();
  return out;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

RationalMatrix assemble(const PSDBlock& block) {
  require_dims(block.r.cols() == block.qdash.size(), "assemble: R has a different width than Q'");
  const std::size_t g = block.r.rows();
  RationalMatrix q(g, g, Rational(0));
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = a; b < g; ++b) {
      Rational s = 0;
      for (std::size_t t = 0; t < block.qdash.size(); ++t) s += block.r(a, t) * block.qdash[t] * block.r(b, t);
      q(a, b) = s;
      q(b, a) = s;
    }
  return q;
}

std::size_t rank(const RationalMatrix& m) {
  // Clear denominators row by row, then Bareiss elimination over Z.
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix<BigInt> a(rows, cols, BigInt(0));
  for (std::size_t i = 0; i < rows; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a(i, j) = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  RationalMatrix a = m;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
  require_dims(m.square(), "kernel_basis: matrix must be square");
  return nullspace(m);
}

RationalVector multiply(const RationalMatrix& m, const RationalVector& v) {
  require_dims(m.cols() == v.size(), "multiply: dimension mismatch");
  RationalVector out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (v[j] != 0 && m(i, j) != 0) out[i] += m(i, j) * v[j];
  return out;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  require_dims(a.cols() == b.rows(), "multiply: dimension mismatch");
  RationalMatrix out(a.rows(), b.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t t = 0; t < a.cols(); ++t) {
      if (a(i, t) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, t) * b(t, j);
    }
  return out;
}

RationalMatrix transpose(const RationalMatrix& m) {
  RationalMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

bool in_kernel(const RationalMatrix& m, const RationalVector& v) {
  const auto mv = multiply(m, v);
  return std::all_of(mv.begin(), mv.end(), [](const Rational& x) { return x == 0; });
}

Rational quadratic_form(const RationalMatrix& m, const RationalVector& v) {
  const auto mv = multiply(m, v);
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * mv[i];
  return s;
}

Rational frobenius(const RationalMatrix& a, const IntMatrix& b) {
  require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "frobenius: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (b(i, j) != 0) s += a(i, j) * Rational(static_cast<long>(b(i, j)));
  return s;
}

bool is_symmetric(const RationalMatrix& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

bool check_psd(const RationalMatrix& m) {
  if (!is_symmetric(m)) throw DimensionError("check_psd: matrix must be square and symmetric");
  RationalMatrix a = m;
  std::vector<std::size_t> live(m.rows());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
  while (!live.empty()) {
    // Pivot on the largest positive diagonal entry.
    std::size_t best = live.size();
    for (std::size_t t = 0; t < live.size(); ++t) {
      const Rational& d = a(live[t], live[t]);
      if (d < 0) return false;
      if (d > 0 && (best == live.size() || d > a(live[best], live[best]))) best = t;
    }
    if (best == live.size()) {
      // Zero diagonal: any nonzero off-diagonal entry gives an indefinite 2x2 minor.
      for (auto i : live)
        for (auto j : live)
          if (a(i, j) != 0) return false;
      return true;
    }
    const std::size_t p = live[best];
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(best));
    const Rational inv = 1 / a(p, p);
    for (auto i : live) {
      if (a(i, p) == 0) continue;
      const Rational f = a(i, p) * inv;
      for (auto j : live) a(i, j) -= f * a(p, j);
    }
  }
  return true;
}

}  // namespace flagforge
