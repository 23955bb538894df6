#include <doctest.h>

#include "flagforge/certificate.hpp"
#include "flagforge/constructions.hpp"
#include "flagforge/flagcalc.hpp"

using namespace flagforge;

namespace {

const TypeSpec kPoint{parse_graph("1:")};
const std::vector<FlagSpec> kGoodmanFlags{parse_flag("2:(1)"), parse_flag("2:12(1)")};

}  // namespace

TEST_CASE("flag counts over a common type") {
  const FlagSpec host = parse_flag("4:121314(1)");
  CHECK(flag_count(parse_flag("2:12(1)"), host) == 3);
  CHECK(flag_count(parse_flag("2:(1)"), host) == 0);
  CHECK(flag_count(parse_flag("3:121323(1)"), host) == 0);
  CHECK(flag_count(parse_flag("3:1213(1)"), host) == 3);
  CHECK_THROWS_AS(flag_count(parse_flag("3:12(2)"), host), std::invalid_argument);
}

TEST_CASE("pair coefficients on the Goodman universe") {
  // Path 2-1-3: vertex 1 sees two edges, the ends see one of each.
  const IntMatrix c = pair_coefficients(kPoint, kGoodmanFlags, parse_graph("3:1213"));
  CHECK(c(0, 0) == 0);
  CHECK(c(1, 1) == 2);
  CHECK(c(0, 1) == 2);
  CHECK(c(1, 0) == 2);
  const IntMatrix t = pair_coefficients(kPoint, kGoodmanFlags, SmallGraph::complete(3));
  CHECK(t(1, 1) == 6);
  CHECK(t(0, 0) == 0);
  CHECK_THROWS(pair_coefficients(kPoint, kGoodmanFlags, SmallGraph::complete(4)));
}

TEST_CASE("bound derivation takes the minimum slack") {
  const std::vector<SmallGraph> gs{parse_graph("3:12"), parse_graph("3:1213"), SmallGraph::complete(3)};
  const RationalVector alpha{Rational(-1, 4), Rational(-1, 4), Rational(3, 4)};
  const auto b = derive_bound(gs, 3, alpha, Rational(1, 4));
  CHECK(b.derived_bound == Rational(1, 4));
  CHECK(b.ok);
  CHECK(b.sharp.size() == 3);
  const auto bad = derive_bound(gs, 3, alpha, Rational(1, 3));
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violating);
}

TEST_CASE("forced vectors for the two-clique pattern") {
  const auto p = PatternGraph::uniform(SmallGraph(2));
  const auto v = forced_vector(p, kPoint, kGoodmanFlags, {0});
  CHECK(v == RationalVector{Rational(1, 2), Rational(1, 2)});
  CHECK(forced_vectors(p, kPoint, kGoodmanFlags).size() == 1);
  CHECK_THROWS_AS(forced_vector(p, TypeSpec{parse_graph("2:12")}, {}, {0, 1}), std::domain_error);
}

TEST_CASE("forced vectors on the Clebsch complement") {
  const auto p = PatternGraph::uniform(complement(clebsch_graph()));
  const TypeSpec tau{complement(parse_graph("5:121324"))};
  const auto flags = enumerate_flags(tau, 6, 3);
  REQUIRE(flags.size() == 16);
  const auto vs = forced_vectors(p, tau, flags);
  REQUIRE_FALSE(vs.empty());
  for (const auto& v : vs) {
    int sixteenth = 0, eighth = 0, zero = 0;
    for (const auto& x : v) {
      sixteenth += x == Rational(1, 16);
      eighth += x == Rational(1, 8);
      zero += x == 0;
    }
    CHECK(sixteenth == 10);
    CHECK(eighth == 3);
    CHECK(zero == 3);
  }
}
