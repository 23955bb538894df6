#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "flagforge/parallel.hpp"

using namespace flagforge;

TEST_CASE("thread count can be forced above the core count") {
  set_thread_count(4);
  CHECK(thread_count() == 4);
}

TEST_CASE("map_indices preserves order in both modes") {
  set_thread_count(4);
  auto sq = [](std::size_t i) { return static_cast<long>(i * i); };
  const auto a = map_indices<long>(1000, sq, Execution::serial);
  const auto b = map_indices<long>(1000, sq, Execution::parallel);
  CHECK(a == b);
  CHECK(b[999] == 998001);
}

TEST_CASE("for_each_index visits every index once") {
  set_thread_count(4);
  std::vector<std::atomic<int>> hits(500);
  for_each_index(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("exceptions cross the parallel region") {
  set_thread_count(4);
  CHECK_THROWS_AS(for_each_index(100, [](std::size_t i) {
                    if (i == 37) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}
