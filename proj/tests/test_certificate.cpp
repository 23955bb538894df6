#include <doctest.h>

#include <fstream>
#include <sstream>

#include "flagforge/certificate.hpp"
#include "flagforge/constructions.hpp"
#include "flagforge/flagcalc.hpp"

using namespace flagforge;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(FLAGFORGE_TEST_DATA) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string error_path(const std::string& text, bool complete = true) {
  try {
    parse_certificate(text, complete);
  } catch (const CertificateError& e) {
    return e.path();
  }
  return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("Goodman certificate verifies") {
  set_thread_count(4);
  const auto cert = parse_certificate(fixture("goodman33.json"));
  const auto rep = verify(cert);
  CHECK(rep.verified);
  REQUIRE(rep.bound);
  CHECK(rep.bound->derived_bound == Rational(1, 4));
  CHECK(rep.sharp_keys.size() == 3);
  CHECK(rep.bound->alpha == RationalVector{Rational(-1, 4), Rational(-1, 4), Rational(3, 4)});
  CHECK(rep.to_json()["convention"] == "count-v1");
  const auto serial = verify(cert, Execution::serial);
  CHECK(serial.to_json() == rep.to_json());
}

TEST_CASE("an inflated claim fails at the bound stage") {
  const auto rep = verify(parse_certificate(fixture("goodman33_bad_bound.json")));
  CHECK_FALSE(rep.verified);
  for (const auto& s : rep.stages) CHECK(s.passed == (s.name != "bound"));
}

TEST_CASE("an incomplete graph list fails the first stage") {
  CHECK(error_path(fixture("goodman33_incomplete.json")) == "/admissible_graphs");
  const auto rep = verify(parse_certificate(fixture("goodman33_incomplete.json"), false));
  CHECK_FALSE(rep.verified);
  REQUIRE_FALSE(rep.stages.empty());
  CHECK(rep.stages.front().name == "admissible_graphs");
  CHECK_FALSE(rep.stages.front().passed);
}

TEST_CASE("malformed certificates report JSON pointers") {
  const std::string good = fixture("goodman33.json");
  CHECK(error_path(fixture("goodman33_bad_qdash.json")) == "/blocks/0/qdash/0");
  CHECK(error_path(replace(good, "count-v1", "count-v0")) == "/problem/convention");
  CHECK(error_path(replace(good, "\"3:12\"", "\"3:\"")) == "/admissible_graphs/0");
  CHECK(error_path(replace(good, "\"2:12(1)\"", "\"2:12(2)\"")) == "/flags/0/1");
  CHECK(error_path(replace(good, "[[\"1\"], [\"-1\"]]", "[[\"1\"]]")) == "/blocks/0/r");
  CHECK(error_path(replace(good, "\"k\": 3", "\"k\": 7")) == "/problem/k");
  CHECK_THROWS_AS(parse_certificate("{not json"), ParseError);
}

TEST_CASE("certificates survive a JSON round trip") {
  const auto cert = parse_certificate(fixture("goodman33.json"));
  const auto again = parse_certificate(certificate_to_json(cert).dump());
  CHECK(certificate_to_json(again) == certificate_to_json(cert));
}

TEST_CASE("forced kernel and sharp graphs against two cliques") {
  const auto cert = parse_certificate(fixture("goodman33.json"));
  const auto p = PatternGraph::uniform(SmallGraph(2));
  const auto k = check_forced_kernel(cert, p);
  CHECK(k.ok);
  CHECK_FALSE(k.entries.empty());
  const auto s = sharp_report(cert, p);
  CHECK(s.contained);
  CHECK(s.missing.empty());
}
