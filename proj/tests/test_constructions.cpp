#include <doctest.h>

#include <bit>
#include <cmath>

#include "flagforge/constructions.hpp"

using namespace flagforge;
using Row = SmallGraph::Row;

namespace {

Rational pow2(int e) { return Rational(BigInt(1) << e); }

Row clebsch_set(std::initializer_list<const char*> labels) {
  Row m = 0;
  for (auto* s : labels) m |= Row{1} << clebsch_vertex(s);
  return m;
}

}  // namespace

TEST_CASE("pattern strings") {
  const auto p = parse_pattern("expansion:5:1223344551:uniform");
  CHECK(p.parts() == 5);
  CHECK(p.weights[2] == Rational(1, 5));
  CHECK(p.joined(0, 0));
  CHECK_FALSE(parse_pattern("blowup:2:12:1/3,2/3").joined(1, 1));
  CHECK(parse_pattern("expansion:clebsch:uniform").parts() == 16);
  CHECK_THROWS_AS(parse_pattern("expansion:2::1/3,1/3"), ParseError);
  CHECK_THROWS_AS(parse_pattern("sideways:2::uniform"), ParseError);
  CHECK_THROWS_AS(parse_pattern("expansion:2:"), ParseError);
}

TEST_CASE("C5 expansion clique densities by two routes") {
  const auto c5 = PatternGraph::uniform(SmallGraph::cycle(5));
  CHECK(clique_density_limit(c5, 4) == Rational(3, 25));
  CHECK(clique_density_limit(c5, 5) == Rational(31, 625));
  CHECK(uniform_clique_density(SmallGraph::cycle(5), 4) == Rational(3, 25));
  CHECK(uniform_clique_density(SmallGraph::cycle(5), 5) == Rational(31, 625));
}

TEST_CASE("co-K_{l-1} expansion densities") {
  for (int l = 3; l <= 7; ++l) {
    const auto p = PatternGraph::uniform(SmallGraph(l - 1));
    CHECK(clique_density_limit(p, 3) == Rational(1, (l - 1) * (l - 1)));
  }
}

TEST_CASE("finite expansions count cliques exactly") {
  const auto c5 = PatternGraph::uniform(SmallGraph::cycle(5));
  const std::vector<int> sizes{2, 1, 2, 1, 1};
  const SmallGraph g = expansion_graph(c5, sizes);
  CHECK(g.order() == 7);
  CHECK(independence_number(g) == 2);
  CHECK(expansion_clique_count(c5, sizes, 3) == count_cliques(g, 3));
  CHECK(expansion_clique_count(c5, sizes, 3) == 4);
  const auto big = std::vector<int>(5, 3);
  CHECK(expansion_clique_count(c5, big, 4) == count_cliques(expansion_graph(c5, big), 4));
}

TEST_CASE("Clebsch graph structure") {
  const SmallGraph l = clebsch_graph();
  CHECK(l.order() == 16);
  for (int v = 0; v < 16; ++v) CHECK(l.degree(v) == 5);
  CHECK(count_cliques(l, 3) == 0);
  CHECK(independence_number(l) == 5);
  CHECK(clebsch_label(0) == "00000");
  CHECK(l.neighbours(clebsch_vertex("00011")) ==
        clebsch_set({"01100", "10100", "11000", "11101", "11110"}));
  const auto mis = maximal_independent_sets(l, clebsch_vertex("00000"));
  int five = 0, four = 0;
  for (Row m : mis) {
    five += std::popcount(m) == 5;
    four += std::popcount(m) == 4;
  }
  CHECK(five == 5);
  CHECK(four == 10);
  CHECK(mis.size() == 15);
}

TEST_CASE("Clebsch complement clique formula against direct summation") {
  const auto co = PatternGraph::uniform(complement(clebsch_graph()));
  CHECK(clebsch_clique_formula(2) == Rational(11, 16));
  CHECK(clebsch_clique_formula(6) == Rational(19211) / pow2(20));
  CHECK(clebsch_clique_formula(7) == Rational(98491) / pow2(24));
  for (int k = 2; k <= 7; ++k) CHECK(clebsch_clique_formula(k) == clique_density_limit(co, k));
}

TEST_CASE("gradients on the Clebsch complement") {
  const SmallGraph f = complement(clebsch_graph());
  const Row x = f.vertex_mask() & ~clebsch_set({"00000", "00011", "00101", "00110"});
  CHECK(gradient(f, x, 6) == Rational(1437) / pow2(16));
  CHECK(gradient(f, x, 7) == Rational(14503) / pow2(21));
  const auto p = PatternGraph::uniform(f);
  CHECK(gradient_weighted(p, x, 5) == gradient(f, x, 6));
}

TEST_CASE("strictness") {
  CHECK(check_strict(SmallGraph::cycle(5), 3, 4, Rational(3, 25)).strict);
  CHECK(check_strict(SmallGraph::cycle(5), 3, 5, Rational(31, 625)).strict);
  // A wrong target value is caught.
  CHECK_FALSE(check_strict(SmallGraph::cycle(5), 3, 4, Rational(1, 5)).strict);
  for (int l = 4; l <= 6; ++l)
    CHECK(check_strict(SmallGraph(l - 1), l, 3, Rational(1, (l - 1) * (l - 1))).strict);
}

TEST_CASE("legal sets of C5 for l = 3") {
  set_thread_count(4);
  const auto serial = legal_sets(SmallGraph::cycle(5), 3, 4, Execution::serial);
  const auto parallel = legal_sets(SmallGraph::cycle(5), 3, 4, Execution::parallel);
  REQUIRE(serial.size() == 32);
  std::size_t legal = 0;
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].legal == parallel[i].legal);
    CHECK(serial[i].gradient == parallel[i].gradient);
    legal += serial[i].legal;
  }
  CHECK(legal > 0);
}

TEST_CASE("embeddings into patterns") {
  const auto c5 = PatternGraph::uniform(SmallGraph::cycle(5));
  CHECK(embeds_in_blowup(SmallGraph::complete(4), c5));
  CHECK(embeds_in_blowup(SmallGraph::complete(5), c5));
  CHECK_FALSE(embeds_in_blowup(parse_graph("4:12233414"), c5));
  CHECK_FALSE(embeds_in_blowup(SmallGraph(3), c5));
  CHECK(pattern_embeddings(SmallGraph(1), c5).size() == 5);
  const auto ph = phantom_pattern(4);
  CHECK(ph.parts() == 5);
  CHECK(ph.is_singleton(3));
  CHECK(ph.weights[4] == 0);
  ph.validate();
}

TEST_CASE("sharp lists") {
  set_thread_count(4);
  const auto c5 = PatternGraph::uniform(SmallGraph::cycle(5));
  CHECK(sharp_list_from_pattern(c5, 6, 3).size() == 17);
  CHECK(sharp_list_from_pattern(c5, 6, 3, Execution::serial) == sharp_list_from_pattern(c5, 6, 3));
  const auto co = PatternGraph::uniform(complement(clebsch_graph()));
  CHECK(sharp_list_from_pattern(co, 7, 3).size() == 86);
  CHECK(phantom_sharp_list(4, 5).size() == 10);
  CHECK(phantom_sharp_list(5, 6).size() == 20);
}

TEST_CASE("Clebsch witnesses") {
  CHECK(clebsch_x_set().size() == 6);
  const auto w = clebsch_witness("00011", "01001");
  REQUIRE(w);
  CHECK(std::find(w->x_class.begin(), w->x_class.end(), "00011") != w->x_class.end());
  CHECK(std::find(w->y_class.begin(), w->y_class.end(), "01001") != w->y_class.end());
  const auto audit = clebsch_equivalence_audit();
  CHECK(audit.x_equivalence_trivial);
  CHECK(audit.full.size() == 120);
  CHECK(audit.failures.empty());
  CHECK(audit.reduced.size() == 18);
}

TEST_CASE("weight optimizer on the 8-cycle with two diameters") {
  SmallGraph f = SmallGraph::cycle(8);
  f.add_edge(0, 4);
  f.add_edge(1, 5);
  const auto opt = optimize_weights(f, 4, 1e-13);
  CHECK_FALSE(WeightOptimum::exact);
  CHECK(opt.converged);
  CHECK(std::abs(opt.density - (-11 + 14 * std::cbrt(2.0)) / 192) < 1e-9);
}
