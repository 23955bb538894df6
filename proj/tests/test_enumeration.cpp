#include <doctest.h>

#include "flagforge/enumeration.hpp"
#include "flagforge/parallel.hpp"

using namespace flagforge;

TEST_CASE("admissible graph counts for alpha < 3") {
  CHECK(admissible_graphs(3, 3).size() == 3);
  CHECK(admissible_graphs(5, 3).size() == 14);
  CHECK(admissible_graphs(6, 3).size() == 38);
  CHECK(admissible_graphs(7, 3).size() == 107);
}

TEST_CASE("admissible graphs are sorted canonical keys") {
  const auto keys = admissible_graphs(6, 3);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    CHECK(canonical_key(parse_graph(keys[i])) == keys[i]);
    CHECK(independence_number(parse_graph(keys[i])) < 3);
    if (i) CHECK(keys[i - 1] < keys[i]);
  }
}

TEST_CASE("extra forbidden subgraphs shrink the universe") {
  const Admissibility rule{3, {SmallGraph::complete(4)}};
  const auto keys = admissible_graphs(6, rule);
  CHECK(keys.size() < 38);
  for (const auto& k : keys) CHECK(count_cliques(parse_graph(k), 4) == 0);
}

TEST_CASE("serial and parallel enumeration agree") {
  set_thread_count(4);
  CHECK(admissible_graphs(7, 3, Execution::serial) == admissible_graphs(7, 3, Execution::parallel));
  const TypeSpec tau{complement(parse_graph("6:1213243545"))};
  const auto a = enumerate_flags(tau, 7, 3, Execution::serial);
  const auto b = enumerate_flags(tau, 7, 3, Execution::parallel);
  CHECK(a == b);
}

TEST_CASE("flag counts") {
  CHECK(enumerate_flags(TypeSpec{parse_graph("4:121324")}, 5, 3).size() == 8);
  CHECK(enumerate_flags(TypeSpec{complement(parse_graph("6:1213243545"))}, 7, 3).size() == 22);
  CHECK(enumerate_flags(TypeSpec{complement(parse_graph("5:121324"))}, 6, 3).size() == 16);
  CHECK(enumerate_flags(TypeSpec{parse_graph("1:")}, 2, 3).size() == 2);
}

TEST_CASE("flag strings and canonical forms") {
  const FlagSpec f = parse_flag("3:1323(2)");
  CHECK(f.labeled == 2);
  CHECK(f.type().to_string() == "2:");
  // Swapping the two unlabelled vertices cannot change the class.
  const FlagSpec g{f.graph.relabelled(std::vector<int>{0, 1, 2}), 2};
  CHECK(canonical_flag_key(f) == canonical_flag_key(g));
  CHECK(canonical_flag_key(parse_flag("3:13(2)")) != canonical_flag_key(parse_flag("3:23(2)")));
  CHECK(canonical_flag_key(parse_flag("4:1324(2)")) == canonical_flag_key(parse_flag("4:1423(2)")));
  CHECK_THROWS_AS(parse_flag("3:12"), ParseError);
}

TEST_CASE("types and flag orders") {
  for (const auto& t : enumerate_types(3, 3)) CHECK(independence_number(t.graph) < 3);
  CHECK(flag_order_for(6, TypeSpec{parse_graph("4:121324")}) == 5);
  CHECK(flag_order_for(3, TypeSpec{parse_graph("1:")}) == 2);
}
