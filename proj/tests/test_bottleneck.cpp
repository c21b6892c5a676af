#include <cmath>
#include <limits>
#include <random>

#include "cdplan/bottleneck.hpp"
#include "cdplan/generators.hpp"
#include "cdplan/model.hpp"
#include "cdplan/oracles.hpp"
#include "doctest.h"

using namespace cdplan;
namespace bn = cdplan::bottleneck;

namespace {

Digraph graph(int n,
              std::vector<std::tuple<int, int, double, double>> edges) {
  Digraph g;
  g.n = n;
  for (auto [u, v, cap, dur] : edges) {
    Edge e;
    e.u = u;
    e.v = v;
    e.attrs.cap = cap;
    e.attrs.duration = dur;
    g.edges.push_back(e);
  }
  g.validate();
  return g;
}

// Replays a witness path at the reported capacity: every hop must have an
// admitted edge (cap >= capacity), and the cheapest such choices must fit
// the duration budget. Parallel edges make the exact edge ambiguous, so
// the check is existential per hop.
void replay_path(const Digraph& g, const std::vector<Vertex>& path,
                 double capacity, double tmax) {
  double duration = 0.0;
  for (size_t i = 1; i < path.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const Edge& e : g.edges)
      if (e.u == path[i - 1] && e.v == path[i] && *e.attrs.cap >= capacity)
        best = std::min(best, *e.attrs.duration);
    REQUIRE(std::isfinite(best));
    duration += best;
  }
  CHECK(duration <= tmax);
}

}  // namespace

TEST_SUITE("bottleneck") {

TEST_CASE("duration budget decides between the two routes") {
  Digraph g = graph(3, {{0, 2, 1.0, 1.0},   // direct, thin
                        {0, 1, 10.0, 2.0},  // detour, fat
                        {1, 2, 10.0, 2.0}});
  SUBCASE("tight budget keeps the direct edge") {
    auto r = bn::max_capacity_path(g, 0, 2, 3.0);
    REQUIRE(r.has_value());
    CHECK(r->capacity == 1.0);
    CHECK(r->path == std::vector<Vertex>{0, 2});
    CHECK(r->duration == 1.0);
  }
  SUBCASE("loose budget admits the detour") {
    auto r = bn::max_capacity_path(g, 0, 2, 5.0);
    REQUIRE(r.has_value());
    CHECK(r->capacity == 10.0);
    CHECK(r->path == std::vector<Vertex>{0, 1, 2});
    CHECK(r->duration == 4.0);
  }
  SUBCASE("budget below every path is infeasible") {
    CHECK(!bn::max_capacity_path(g, 0, 2, 0.5).has_value());
  }
}

TEST_CASE("interval bisection agrees with the exact candidate search") {
  std::mt19937 rng(6001);
  const double eps = 1e-6;
  for (int it = 0; it < 30; ++it) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Digraph g = gen::random_digraph(n, 1 + static_cast<int>(rng() % 10), rng);
    gen::add_caps(g, 9, rng);
    gen::add_durations(g, 4, rng);
    const double tmax = static_cast<double>(rng() % 10);
    auto exact = bn::max_capacity_path(g, 0, n - 1, tmax,
                                       bn::CapacityDomain::EdgeSet);
    auto approx = bn::max_capacity_path(g, 0, n - 1, tmax,
                                        bn::CapacityDomain::Interval, eps);
    CHECK(exact.has_value() == approx.has_value());
    if (exact)
      CHECK(std::abs(exact->capacity - approx->capacity) <= eps + 1e-12);
  }
}

TEST_CASE("path results match the enumeration oracle") {
  std::mt19937 rng(6002);
  for (int it = 0; it < 60; ++it) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Digraph g = gen::random_digraph(n, 1 + static_cast<int>(rng() % 12), rng);
    gen::add_caps(g, 8, rng);
    gen::add_durations(g, 5, rng);
    const double tmax = static_cast<double>(rng() % 12);
    auto planner = bn::max_capacity_path(g, 0, n - 1, tmax);
    auto oracle = oracles::bottleneck_path(g, 0, n - 1, tmax);
    CHECK(planner.has_value() == oracle.has_value());
    if (planner) {
      CHECK(planner->capacity == *oracle);
      CHECK(planner->duration <= tmax);
      replay_path(g, planner->path, planner->capacity, tmax);
    }
  }
}

TEST_CASE("equal-capacity witnesses break ties lexicographically") {
  // two identical-looking routes 0-1-3 and 0-2-3
  Digraph g = graph(4, {{0, 1, 5.0, 1.0},
                        {1, 3, 5.0, 1.0},
                        {0, 2, 5.0, 1.0},
                        {2, 3, 5.0, 1.0}});
  auto r = bn::max_capacity_path(g, 0, 3, 10.0);
  REQUIRE(r.has_value());
  CHECK(r->path == std::vector<Vertex>{0, 1, 3});
}

TEST_CASE("single-destination tree equals the path query") {
  std::mt19937 rng(6003);
  for (int it = 0; it < 30; ++it) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Digraph g = gen::random_digraph(n, 1 + static_cast<int>(rng() % 12), rng);
    gen::add_caps(g, 8, rng);
    gen::add_durations(g, 5, rng);
    const double tmax = static_cast<double>(rng() % 12);
    auto path = bn::max_capacity_path(g, 0, n - 1, tmax);
    auto tree = bn::max_capacity_tree(g, 0, {n - 1}, tmax,
                                      bn::TreeTime::LongestPath);
    CHECK(path.has_value() == tree.has_value());
    if (path) CHECK(path->capacity == tree->capacity);
  }
}

TEST_CASE("star multicast in total-duration mode") {
  Digraph g = graph(4, {{0, 1, 4.0, 1.0}, {0, 2, 4.0, 1.0}, {0, 3, 4.0, 1.0}});
  auto r = bn::max_capacity_tree(g, 0, {1, 2, 3}, 3.0,
                                 bn::TreeTime::TotalDuration);
  REQUIRE(r.has_value());
  CHECK(r->capacity == 4.0);
  CHECK(r->edges.size() == 3);
  CHECK(r->duration == 3.0);
  // one time unit short: the three edges sum to 3
  CHECK(!bn::max_capacity_tree(g, 0, {1, 2, 3}, 2.5,
                               bn::TreeTime::TotalDuration)
             .has_value());
}

TEST_CASE("tree results match the enumeration oracle") {
  std::mt19937 rng(6004);
  for (int it = 0; it < 40; ++it) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Digraph g = gen::random_digraph(n, 1 + static_cast<int>(rng() % 12), rng);
    gen::add_caps(g, 8, rng);
    gen::add_durations(g, 4, rng);
    std::vector<Vertex> dests;
    for (Vertex v = 1; v < n; ++v)
      if (rng() % 2) dests.push_back(v);
    if (dests.empty()) dests.push_back(n - 1);
    const double tmax = static_cast<double>(rng() % 14);
    for (auto [mode, omode] :
         {std::pair{bn::TreeTime::LongestPath,
                    oracles::TreeTimeMode::LongestPath},
          std::pair{bn::TreeTime::TotalDuration,
                    oracles::TreeTimeMode::TotalDuration}}) {
      auto planner = bn::max_capacity_tree(g, 0, dests, tmax, mode);
      auto oracle = oracles::bottleneck_tree(g, 0, dests, tmax, omode);
      CHECK(planner.has_value() == oracle.has_value());
      if (planner) CHECK(planner->capacity == *oracle);
    }
  }
}

TEST_CASE("time-varying capacity drops after the step") {
  Digraph g;
  g.n = 2;
  Edge e;
  e.u = 0;
  e.v = 1;
  CapacityProfile profile;
  profile.steps = {{0.0, 5.0}, {10.0, 2.0}};
  e.attrs.cap_profile = profile;
  SUBCASE("fast edge sees the high plateau") {
    e.attrs.duration = 4.0;
    g.edges = {e};
    g.validate();
    auto r = bn::max_capacity_path_timevarying(g, 0, 1, 100.0);
    REQUIRE(r.has_value());
    CHECK(r->capacity == 5.0);
  }
  SUBCASE("slow edge only gets the low plateau") {
    e.attrs.duration = 12.0;
    g.edges = {e};
    g.validate();
    auto r = bn::max_capacity_path_timevarying(g, 0, 1, 100.0);
    REQUIRE(r.has_value());
    CHECK(r->capacity == 2.0);
  }
}

TEST_CASE("constant profiles reduce to the static problem") {
  std::mt19937 rng(6005);
  for (int it = 0; it < 30; ++it) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Digraph g = gen::random_digraph(n, 1 + static_cast<int>(rng() % 12), rng);
    gen::add_caps(g, 8, rng);
    gen::add_durations(g, 4, rng);
    Digraph varying = g;
    for (Edge& e : varying.edges) {
      CapacityProfile profile;
      profile.steps = {{0.0, *e.attrs.cap}};
      e.attrs.cap_profile = profile;
      e.attrs.cap.reset();
    }
    const double tmax = static_cast<double>(rng() % 12);
    auto fixed = bn::max_capacity_path(g, 0, n - 1, tmax);
    auto timed = bn::max_capacity_path_timevarying(varying, 0, n - 1, tmax);
    CHECK(fixed.has_value() == timed.has_value());
    if (fixed) CHECK(fixed->capacity == timed->capacity);
  }
}

TEST_CASE("time-varying trees match the oracle in longest-path mode") {
  std::mt19937 rng(6006);
  for (int it = 0; it < 25; ++it) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Digraph g = gen::random_digraph(n, 1 + static_cast<int>(rng() % 10), rng);
    gen::add_durations(g, 4, rng);
    gen::add_profiles(g, 8, 3, rng);
    std::vector<Vertex> dests{n - 1};
    const double tmax = static_cast<double>(rng() % 12);
    auto planner = bn::max_capacity_tree(g, 0, dests, tmax,
                                         bn::TreeTime::LongestPath, true);
    auto oracle = oracles::bottleneck_tree(
        g, 0, dests, tmax, oracles::TreeTimeMode::LongestPath, true);
    CHECK(planner.has_value() == oracle.has_value());
    if (planner) CHECK(planner->capacity == *oracle);
  }
}

TEST_CASE("time-varying total-duration trees are rejected") {
  Digraph g = graph(2, {{0, 1, 3.0, 1.0}});
  CHECK_THROWS_AS(bn::max_capacity_tree(g, 0, {1}, 5.0,
                                        bn::TreeTime::TotalDuration, true),
                  ValidationError);
}

TEST_CASE("missing attributes are reported") {
  Digraph g;
  g.n = 2;
  Edge e;
  e.u = 0;
  e.v = 1;
  e.attrs.duration = 1.0;  // no capacity of either kind
  g.edges = {e};
  g.validate();
  CHECK_THROWS_AS(bn::max_capacity_path(g, 0, 1, 5.0), ValidationError);
  CHECK_THROWS_AS(bn::max_capacity_path_timevarying(g, 0, 1, 5.0),
                  ValidationError);
}

}  // TEST_SUITE
