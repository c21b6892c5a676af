#include <random>

#include "cdplan/generators.hpp"
#include "cdplan/model.hpp"
#include "cdplan/oracles.hpp"
#include "cdplan/resource_path.hpp"
#include "doctest.h"

using namespace cdplan;
namespace rp = cdplan::resource_path;

namespace {

Digraph graph(int n, std::vector<std::tuple<int, int, std::int64_t, double>>
                         edges) {
  Digraph g;
  g.n = n;
  for (auto [u, v, rc, dur] : edges) {
    Edge e;
    e.u = u;
    e.v = v;
    e.attrs.rc = rc;
    e.attrs.duration = dur;
    g.edges.push_back(e);
  }
  g.validate();
  return g;
}

ResourceCatalog catalog(std::vector<std::int64_t> cap, std::vector<double> cost,
                        std::vector<Vertex> charging = {}) {
  ResourceCatalog cat;
  cat.cap = std::move(cap);
  cat.cost = std::move(cost);
  cat.charging_points = std::move(charging);
  cat.validate();
  return cat;
}

}  // namespace

TEST_SUITE("resource_path") {

TEST_CASE("single edge forces the larger capacity") {
  Digraph g = graph(2, {{0, 1, 3, 1.0}});
  ResourceCatalog cat = catalog({2, 5}, {1.0, 10.0});
  rp::Result r = rp::min_cost_feasible(g, cat, 0, 1);
  REQUIRE(r.type.has_value());
  CHECK(*r.type == 1);
  REQUIRE(r.witness.has_value());
  CHECK_NOTHROW(rp::validate_witness(g, cat, *r.type, 0, 1,
                                     rp::RechargeMode::Partial, *r.witness));
}

TEST_CASE("recharging midway admits the small capacity") {
  Digraph g = graph(3, {{0, 1, 2, 1.0}, {1, 2, 2, 1.0}});
  ResourceCatalog cat = catalog({2, 5}, {1.0, 10.0}, {1});
  for (auto mode : {rp::RechargeMode::Partial, rp::RechargeMode::FullOnly}) {
    rp::Result r = rp::min_cost_feasible(g, cat, 0, 2, mode);
    REQUIRE(r.type.has_value());
    CHECK(*r.type == 0);
    REQUIRE(r.witness.has_value());
    CHECK_NOTHROW(rp::validate_witness(g, cat, *r.type, 0, 2, mode, *r.witness));
    // the witness must recharge: two consecutive hops at vertex 1
    bool recharged = false;
    for (size_t i = 1; i < r.witness->hops.size(); ++i)
      if (r.witness->hops[i].vertex == r.witness->hops[i - 1].vertex &&
          r.witness->hops[i].vertex == 1)
        recharged = true;
    CHECK(recharged);
  }
}

TEST_CASE("unreachable destination is infeasible") {
  Digraph g = graph(3, {{0, 1, 1, 1.0}});
  ResourceCatalog cat = catalog({5}, {1.0});
  rp::Result r = rp::min_cost_feasible(g, cat, 0, 2);
  CHECK(!r.type.has_value());
  CHECK(!r.witness.has_value());
}

TEST_CASE("charge-free shortcut") {
  SUBCASE("two routes with different consumption") {
    Digraph g = graph(3, {{0, 1, 7, 1.0}, {0, 2, 2, 1.0}, {2, 1, 2, 1.0}});
    ResourceCatalog cat = catalog({5, 9}, {1.0, 2.0});
    std::optional<int> t = rp::feasibility_unconstrained_shortcut(g, cat, 0, 1);
    REQUIRE(t.has_value());
    CHECK(*t == 0);  // the cheaper route needs only 4 units
    rp::Result full = rp::min_cost_feasible(g, cat, 0, 1);
    CHECK(full.type == t);
  }
  SUBCASE("source equals destination") {
    Digraph g = graph(2, {{0, 1, 9, 1.0}});
    ResourceCatalog cat = catalog({1, 3}, {1.0, 2.0});
    std::optional<int> t = rp::feasibility_unconstrained_shortcut(g, cat, 0, 0);
    REQUIRE(t.has_value());
    CHECK(*t == 0);
  }
  SUBCASE("disconnected pair") {
    Digraph g = graph(3, {{0, 1, 1, 1.0}});
    ResourceCatalog cat = catalog({9}, {1.0});
    CHECK(!rp::feasibility_unconstrained_shortcut(g, cat, 0, 2).has_value());
  }
  SUBCASE("catalogs with charging points are rejected") {
    Digraph g = graph(2, {{0, 1, 1, 1.0}});
    ResourceCatalog cat = catalog({5}, {1.0}, {0});
    CHECK_THROWS_AS(rp::feasibility_unconstrained_shortcut(g, cat, 0, 1),
                    ValidationError);
  }
}

TEST_CASE("timed variant respects the duration bound") {
  Digraph g = graph(3, {{0, 1, 2, 1.0}, {1, 2, 2, 1.0}});
  ResourceCatalog cat = catalog({2, 5}, {1.0, 10.0}, {1});
  SUBCASE("instantaneous recharges within budget") {
    rp::Result r = rp::min_cost_timed(g, cat, 0, 2, 2.0);
    REQUIRE(r.type.has_value());
    CHECK(*r.type == 0);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->duration <= 2.0);
    CHECK_NOTHROW(rp::validate_witness(g, cat, *r.type, 0, 2,
                                       rp::RechargeMode::Partial, *r.witness,
                                       2.0));
  }
  SUBCASE("budget below the only path duration") {
    rp::Result r = rp::min_cost_timed(g, cat, 0, 2, 1.0);
    CHECK(!r.type.has_value());
  }
  SUBCASE("slow charging forces the bigger battery") {
    ResourceCatalog slow = cat;
    slow.tcharge = ChargeTime{3.0, 0.0};  // any recharge costs 3 time units
    rp::Result r = rp::min_cost_timed(g, slow, 0, 2, 2.0);
    REQUIRE(r.type.has_value());
    CHECK(*r.type == 1);  // type 0 would need the 3-unit recharge stop
  }
  SUBCASE("a generous budget agrees with the untimed solver") {
    rp::Result timed = rp::min_cost_timed(g, cat, 0, 2, 1e9);
    rp::Result untimed = rp::min_cost_feasible(g, cat, 0, 2);
    CHECK(timed.type == untimed.type);
  }
}

TEST_CASE("expanded edge counts match the closed form") {
  std::mt19937 rng(4242);
  for (int it = 0; it < 30; ++it) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Digraph g = gen::random_digraph(n, 2 * n, rng);
    gen::add_rc(g, 8, rng);
    ResourceCatalog cat = gen::random_catalog(3, 10, n, 0.5, false, rng);
    for (int type = 0; type < cat.type_count(); ++type) {
      for (auto mode : {rp::RechargeMode::Partial, rp::RechargeMode::FullOnly}) {
        rp::EdgeCounts counted = rp::expanded_edge_count(g, cat, type, mode);
        rp::EdgeCounts formula = rp::expanded_edge_formula(g, cat, type, mode);
        CHECK(counted.moves == formula.moves);
        CHECK(counted.charges == formula.charges);
      }
    }
  }
}

TEST_CASE("matches the exhaustive oracle on small instances") {
  std::mt19937 rng(5353);
  for (int it = 0; it < 40; ++it) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Digraph g = gen::random_digraph(n, 1 + static_cast<int>(rng() % (2 * n)),
                                    rng);
    gen::add_rc(g, 6, rng);
    gen::add_durations(g, 4, rng);
    ResourceCatalog cat = gen::random_catalog(3, 12, n, 0.4, false, rng);
    const Vertex s = 0;
    const Vertex t = n - 1;
    rp::Result r = rp::min_cost_feasible(g, cat, s, t);
    CHECK(r.type == oracles::resource_min_type(g, cat, s, t));
    if (r.type) {
      REQUIRE(r.witness.has_value());
      CHECK_NOTHROW(rp::validate_witness(g, cat, *r.type, s, t,
                                         rp::RechargeMode::Partial,
                                         *r.witness));
    }
    // the full-only reachable set is a subset of the partial one
    rp::Result full = rp::min_cost_feasible(g, cat, s, t,
                                            rp::RechargeMode::FullOnly);
    if (full.type) {
      REQUIRE(r.type.has_value());
      CHECK(*r.type <= *full.type);
    }
  }
}

TEST_CASE("missing rc attribute is reported") {
  Digraph g;
  g.n = 2;
  g.edges.push_back({0, 1, {}});
  g.validate();
  ResourceCatalog cat = catalog({3}, {1.0});
  CHECK_THROWS_AS(rp::min_cost_feasible(g, cat, 0, 1), ValidationError);
}

TEST_CASE("witness validation catches corruption") {
  Digraph g = graph(2, {{0, 1, 2, 1.0}});
  ResourceCatalog cat = catalog({3}, {1.0});
  rp::Result r = rp::min_cost_feasible(g, cat, 0, 1);
  REQUIRE(r.witness.has_value());
  rp::Witness bad = *r.witness;
  bad.hops.back().remaining += 1;  // resource bookkeeping broken
  CHECK_THROWS_AS(rp::validate_witness(g, cat, 0, 0, 1,
                                       rp::RechargeMode::Partial, bad),
                  ValidationError);
}

}  // TEST_SUITE
