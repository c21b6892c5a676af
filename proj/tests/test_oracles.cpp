#include <random>

#include "cdplan/generators.hpp"
#include "cdplan/model.hpp"
#include "cdplan/oracles.hpp"
#include "cdplan/verify.hpp"
#include "doctest.h"

using namespace cdplan;

TEST_SUITE("oracles") {

TEST_CASE("broadcast oracle on closed-form trees") {
  CHECK(oracles::min_broadcast_time(RootedTree::from_parents({-1})) == 0);
  CHECK(oracles::min_broadcast_time(gen::star_tree(4)) == 3);
  CHECK(oracles::min_broadcast_time(gen::path_tree(4)) == 2);
}

TEST_CASE("tpt oracle value set") {
  TptInstance inst;
  inst.n = 2;
  inst.size = {1, 3};
  inst.effort = {1, 3};
  inst.validate();
  CHECK(oracles::tpt_value_set(inst) == std::set<std::int64_t>{6, 10});
  auto [lo, hi] = oracles::tpt_min_max(inst);
  CHECK(lo == 6);
  CHECK(hi == 10);
}

TEST_CASE("guards refuse oversized instances") {
  std::mt19937 rng(71);

  CHECK_THROWS_AS(oracles::min_broadcast_time(gen::star_tree(12)),
                  oracles::GuardError);

  StreamSystem big = gen::random_stream_system(3, 8, 3, 2, rng);
  big.m = 50;
  CHECK_THROWS_AS(oracles::stream_min_makespan(big), oracles::GuardError);

  CHECK_THROWS_AS(oracles::reorder_min_cost(
                      gen::random_reorder(16, Aggregation::Sum, rng)),
                  oracles::GuardError);

  CHECK_THROWS_AS(oracles::tpt_min_max(gen::random_tpt(10, 5, 5, false, rng)),
                  oracles::GuardError);

  FreqInstance freq = gen::random_freq(12, 3, false, 3, rng);
  CHECK_THROWS_AS(oracles::multicast_min_cost(freq, 0), oracles::GuardError);

  Digraph g = gen::random_digraph(9, 10, rng);
  gen::add_rc(g, 4, rng);
  gen::add_durations(g, 3, rng);
  ResourceCatalog cat = gen::random_catalog(2, 6, 9, 0.3, false, rng);
  CHECK_THROWS_AS(oracles::resource_min_type(g, cat, 0, 8),
                  oracles::GuardError);

  Digraph big_caps = gen::random_digraph(10, 12, rng);
  gen::add_caps(big_caps, 5, rng);
  gen::add_durations(big_caps, 3, rng);
  CHECK_THROWS_AS(oracles::bottleneck_path(big_caps, 0, 9, 10.0),
                  oracles::GuardError);
}

// Small seeds of the full acceptance-sized equivalence runs; failures
// here reproduce with the embedded instance dump.
TEST_CASE("planner-vs-oracle smoke suites") {
  struct Suite {
    const char* name;
    verify::Report report;
  };
  const Suite suites[] = {
      {"broadcast", verify::broadcast(25, 1)},
      {"multicast", verify::multicast(20, 2)},
      {"streams", verify::streams(20, 3)},
      {"reorder", verify::reorder(20, 4)},
      {"tpt", verify::tpt(20, 5)},
      {"resource", verify::resource(15, 6)},
      {"bottleneck", verify::bottleneck(25, 7)},
  };
  for (const Suite& s : suites) {
    INFO(s.name, ": ", s.report.first_failure);
    CHECK(s.report.ok());
    CHECK(s.report.total > 0);
  }
}

}  // TEST_SUITE
