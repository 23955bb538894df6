#include <doctest.h>

#include <fstream>
#include <sstream>

#include "flagforge/constructions.hpp"
#include "flagforge/flagcalc.hpp"
#include "flagforge/sdpgen.hpp"

using namespace flagforge;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(FLAGFORGE_TEST_DATA) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

SdpProblem goodman() { return generate_sdp(3, 3, 3, {}, std::vector<TypeSpec>{TypeSpec{parse_graph("1:")}}); }

}  // namespace

TEST_CASE("SDPA output structure") {
  const auto p = goodman();
  CHECK(p.constraint_count() == 3);
  CHECK(p.block_struct() == std::vector<long>{2, -3, -1});
  std::ostringstream out;
  write_sdpa(p, out);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '*' && line[0] != '"') lines.push_back(line);
  REQUIRE(lines.size() > 4);
  CHECK(lines[0].find('3') != std::string::npos);
  CHECK(lines[1].find('3') != std::string::npos);
}

TEST_CASE("constraint and block counts follow the enumeration") {
  set_thread_count(4);
  const auto p = generate_sdp(3, 3, 6, {}, std::nullopt);
  CHECK(p.constraint_count() == 38);
  const auto bs = p.block_struct();
  CHECK(bs.size() == p.types.size() + 2);
  CHECK(bs[bs.size() - 2] == -38);
  for (std::size_t t = 0; t < p.types.size(); ++t) CHECK(bs[t] == static_cast<long>(p.flags[t].size()));
  const auto serial = generate_sdp(3, 3, 6, {}, std::nullopt, Execution::serial);
  std::ostringstream a, b;
  write_sdpa(p, a);
  write_sdpa(serial, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("continued fractions") {
  CHECK(rationalize(0.125000000003, 1 << 20) == Rational(1, 8));
  CHECK(rationalize(-1.0 / 3, 100) == Rational(-1, 3));
  CHECK(rationalize(3.14159265358979, 10) == Rational(22, 7));
  CHECK_THROWS_AS(rationalize(std::nan(""), 10), RoundingError);
}

TEST_CASE("rounding the Goodman solution reproduces the bound") {
  const auto p = goodman();
  const auto sol = parse_sdpa_solution(fixture("goodman33.out"), p);
  CHECK(sol.objective == doctest::Approx(0.25));
  const auto forced = collect_forced_vectors(PatternGraph::uniform(SmallGraph(2)), p.types, p.flags, false, 3);
  const auto blocks = round_solution(p, RoundingSpec{sol.type_blocks, forced, 1L << 20});
  const auto cert = build_certificate(p, blocks);
  CHECK(cert.claimed_bound == Rational(1, 4));
  CHECK(verify(cert).verified);
  CHECK(check_forced_kernel(cert, PatternGraph::uniform(SmallGraph(2))).ok);
}

TEST_CASE("skeletons round trip through problems") {
  const auto p = goodman();
  const auto q = problem_from_skeleton(skeleton_certificate(p));
  CHECK(q.graphs == p.graphs);
  CHECK(q.flags == p.flags);
}

TEST_CASE("synthetic PSD input with a planted kernel") {
  set_thread_count(4);
  // Q = v v^T + w w^T + small noise, with the kernel vector u planted.
  const auto p = generate_sdp(2, 3, 3, {}, std::vector<TypeSpec>{TypeSpec{parse_graph("1:")}});
  REQUIRE(p.flags[0].size() == 2);
  const std::vector<std::vector<double>> q{{0.2500000001, -0.2499999999}, {-0.2499999999, 0.25000000004}};
  const std::vector<std::vector<RationalVector>> kernel{{RationalVector{1, 1}}};
  const auto blocks = round_solution(p, RoundingSpec{{q}, kernel, 1L << 20});
  REQUIRE(blocks.size() == 1);
  const auto m = assemble(blocks[0]);
  CHECK(check_psd(m));
  CHECK(in_kernel(m, RationalVector{1, 1}));
  CHECK(m(0, 0) == Rational(1, 4));
}

TEST_CASE("rounding refuses a clearly indefinite block") {
  const auto p = goodman();
  const std::vector<std::vector<double>> q{{1.0, 2.0}, {2.0, 1.0}};
  CHECK_THROWS_AS(round_solution(p, RoundingSpec{{q}, {{}}, 1L << 20}), RoundingError);
}

TEST_CASE("bad SDPA solutions are parse errors") {
  CHECK_THROWS_AS(parse_sdpa_solution("no matrix here", goodman()), ParseError);
  CHECK_THROWS_AS(parse_sdpa_solution("yMat = { {1} }", goodman()), ParseError);
}
