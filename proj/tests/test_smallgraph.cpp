#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "flagforge/smallgraph.hpp"

using namespace flagforge;

namespace {

SmallGraph petersen() {
  SmallGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
    g.add_edge(i, 5 + i);
  }
  return g;
}

SmallGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  SmallGraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b);
  return g;
}

}  // namespace

TEST_CASE("graph strings round-trip") {
  const SmallGraph g = parse_graph("5:121324");
  CHECK(g.order() == 5);
  CHECK(g.edge_count() == 3);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(3, 1));
  CHECK_FALSE(g.adjacent(0, 4));
  CHECK(g.to_string() == "5:121324");
  CHECK(parse_graph("3:").edge_count() == 0);
}

TEST_CASE("malformed graph strings are rejected") {
  CHECK_THROWS_AS(parse_graph("5"), ParseError);
  CHECK_THROWS_AS(parse_graph("3:14"), ParseError);
  CHECK_THROWS_AS(parse_graph("3:1"), ParseError);
  CHECK_THROWS_AS(parse_graph("3:11"), ParseError);
}

TEST_CASE("canonical key matches brute force on every graph up to 5 vertices") {
  for (int n = 1; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
      SmallGraph g(n);
      int bit = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++bit)
          if ((mask >> bit) & 1) g.add_edge(a, b);
      REQUIRE(canonical_key(g) == canonical_key_bruteforce(g));
    }
  }
}

TEST_CASE("canonical key matches brute force on random 6-vertex graphs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const SmallGraph g = random_graph(6, 0.5, rng);
    REQUIRE(canonical_key(g) == canonical_key_bruteforce(g));
  }
}

TEST_CASE("canonical key is invariant under relabelling") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const SmallGraph g = random_graph(9, 0.4, rng);
    std::vector<int> perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const SmallGraph h = g.relabelled(perm);
    CHECK(canonical_key(g) == canonical_key(h));
    CHECK(isomorphic(g, h));
  }
  CHECK_FALSE(isomorphic(parse_graph("4:121324"), parse_graph("4:121314")));
}

TEST_CASE("canonical labeling returns a permutation realizing the key") {
  const SmallGraph g = parse_graph("6:1213243545");
  const auto cl = canonical_labeling(g);
  CHECK(cl.graph.to_string() == canonical_key(g));
  CHECK(isomorphic(cl.graph, g));
}

TEST_CASE("cliques and independence") {
  CHECK(count_cliques(SmallGraph::complete(5), 3) == 10);
  CHECK(count_cliques(SmallGraph::cycle(5), 3) == 0);
  CHECK(independence_number(SmallGraph::cycle(5)) == 2);
  CHECK(clique_number(SmallGraph::cycle(5)) == 2);
  CHECK(independence_number(petersen()) == 4);
  CHECK(has_independent_set(petersen(), 4));
  CHECK_FALSE(has_independent_set(petersen(), 5));
  CHECK(complement(SmallGraph::cycle(5)).edge_count() == 5);
  CHECK(isomorphic(complement(SmallGraph::cycle(5)), SmallGraph::cycle(5)));
}

TEST_CASE("induced counts and densities") {
  CHECK(count_induced(SmallGraph::cycle(5), petersen()) == 12);
  CHECK(count_induced(parse_graph("2:12"), SmallGraph::cycle(5)) == 5);
  CHECK(density(parse_graph("3:121323"), SmallGraph::complete(4)) == 1);
  CHECK(density(parse_graph("2:"), SmallGraph::cycle(4)) == Rational(1, 3));
  CHECK(automorphism_count(SmallGraph::cycle(5)) == 10);
  CHECK(automorphism_count(petersen()) == 120);
  CHECK(count_embeddings(SmallGraph::cycle(5), petersen()) == 120);
}

TEST_CASE("binomials and subsets") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
  CHECK(subsets_of_size(0b101101, 2).size() == 6);
}
