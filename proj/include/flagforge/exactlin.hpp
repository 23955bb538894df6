#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flagforge/smallgraph.hpp"

namespace flagforge {

// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using RationalVector = std::vector<Rational>;
using IntMatrix = Matrix<long long>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "p/q" or "p" (optional sign); throws ParseError.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);

// Q = R diag(qdash) R^T with every qdash entry positive.
struct PSDBlock {
  RationalMatrix r;
  RationalVector qdash;

  std::size_t dimension() const { return r.rows(); }
};

RationalMatrix assemble(const PSDBlock& block);

std::size_t rank(const RationalMatrix& m);
// Null space basis of a square matrix.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);
// Null space basis of any matrix (RREF, free-variable basis vectors).
std::vector<RationalVector> nullspace(const RationalMatrix& m);
bool in_kernel(const RationalMatrix& m, const RationalVector& v);
// Exact symmetric-pivoted LDL^T. Throws DimensionError on asymmetric input.
bool check_psd(const RationalMatrix& m);

RationalVector multiply(const RationalMatrix& m, const RationalVector& v);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix transpose(const RationalMatrix& m);
Rational quadratic_form(const RationalMatrix& m, const RationalVector& v);
// Sum over entries of a .* b.
Rational frobenius(const RationalMatrix& a, const IntMatrix& b);
bool is_symmetric(const RationalMatrix& m);

}  // namespace flagforge
