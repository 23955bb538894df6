#include <doctest.h>

#include "flagforge/flagcalc.hpp"
#include "flagforge/oracle.hpp"

using namespace flagforge;

TEST_CASE("small extremal values") {
  set_thread_count(4);
  const auto f6 = brute_force_f(6, 3, 3);
  REQUIRE(f6.complete);
  CHECK(*f6.value == 2);
  CHECK(*brute_force_f(5, 3, 3).value == 0);
  CHECK(*brute_force_f(7, 3, 3).value == 4);
  CHECK(*brute_force_f(8, 3, 4).value == 0);
  CHECK(brute_force_f(6, 3, 3, 120, Execution::serial).extremal_keys == f6.extremal_keys);
}

TEST_CASE("an exhausted budget claims nothing") {
  const auto r = brute_force_f(9, 3, 3, 0.0);
  CHECK_FALSE(r.complete);
  CHECK_FALSE(r.value);
}

TEST_CASE("Ramsey checks") {
  CHECK(ramsey_check(3, 3, 5).exists);
  CHECK_FALSE(ramsey_check(3, 3, 6).exists);
  const auto r = ramsey_check(3, 4, 8);
  CHECK(r.complete);
  REQUIRE(r.exists);
  CHECK(independence_number(*r.witness) < 4);
  CHECK(clique_number(*r.witness) < 3);
}

TEST_CASE("identity audit passes for the real coefficients") {
  set_thread_count(4);
  const auto rep = identity_audit(full_skeleton(3, 3), 0, 1);
  CHECK(rep.passed());
  CHECK(rep.cases > 0);
  const auto sampled = identity_audit(full_skeleton(5, 3), 20, 42);
  CHECK(sampled.passed());
  CHECK(sampled.cases == 40);
}

TEST_CASE("identity audit catches a broken table") {
  CoefficientTable broken = [](const TypeSpec& t, const std::vector<FlagSpec>& f, const SmallGraph& h) {
    IntMatrix c = pair_coefficients(t, f, h);
    if (c.rows()) c(0, 0) += 1;
    return c;
  };
  const auto rep = identity_audit(full_skeleton(3, 3), 0, 1, broken);
  CHECK_FALSE(rep.passed());
  CHECK(rep.counterexample);
}
