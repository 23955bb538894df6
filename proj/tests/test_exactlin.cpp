#include <doctest.h>

#include "flagforge/exactlin.hpp"

using namespace flagforge;

namespace {

RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (long v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("rational strings") {
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK(parse_rational("-5") == -5);
  CHECK(rational_to_string(parse_rational("-2/6")) == "-1/3");
  CHECK(rational_to_string(Rational(4)) == "4");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("rank and null space") {
  const auto m = mat({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  const auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(in_kernel(m, ns[0]));
  CHECK(rank(RationalMatrix::identity(4)) == 4);
  CHECK(nullspace(RationalMatrix::identity(3)).empty());
}

TEST_CASE("PSD check") {
  CHECK(check_psd(mat({{2, -1}, {-1, 2}})));
  CHECK(check_psd(mat({{1, 1}, {1, 1}})));
  CHECK_FALSE(check_psd(mat({{1, 2}, {2, 1}})));
  CHECK_FALSE(check_psd(mat({{0, 1}, {1, 0}})));
  CHECK(check_psd(mat({{0, 0}, {0, 3}})));
}

TEST_CASE("assembled blocks") {
  PSDBlock b{RationalMatrix(2, 1), {Rational(1, 8)}};
  b.r(0, 0) = 1;
  b.r(1, 0) = -1;
  const auto q = assemble(b);
  CHECK(q(0, 0) == Rational(1, 8));
  CHECK(q(0, 1) == Rational(-1, 8));
  CHECK(is_symmetric(q));
  CHECK(check_psd(q));
  RationalVector v{1, 1};
  CHECK(quadratic_form(q, v) == 0);
  CHECK(in_kernel(q, v));
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(multiply(mat({{1, 2}}), mat({{1, 2}})), DimensionError);
  CHECK_THROWS_AS(multiply(mat({{1, 2}}), RationalVector{1}), DimensionError);
  CHECK(transpose(mat({{1, 2}})).rows() == 2);
  IntMatrix c(2, 2, 1);
  CHECK(frobenius(mat({{1, 2}, {3, 4}}), c) == 10);
}
