#include <cstdio>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "cdplan/generators.hpp"
#include "cdplan/model.hpp"
#include "doctest.h"

using namespace cdplan;

namespace {

// serialize -> parse -> serialize must be a fixed point
void check_roundtrip(const AnyInstance& inst) {
  nlohmann::json j1 = instance_to_json(inst);
  AnyInstance back = instance_from_json(j1);
  nlohmann::json j2 = instance_to_json(back);
  CHECK(j1 == j2);
  CHECK(kind_of(back) == kind_of(inst));
}

std::string temp_path(const char* stem) {
  return std::string("/tmp/cdplan_test_") + stem + ".json";
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("rooted tree construction and invariants") {
  RootedTree t = RootedTree::from_parents({-1, 0, 0, 1});
  CHECK(t.n == 4);
  CHECK(t.root == 0);
  CHECK(t.parent[3] == 1);
  CHECK(t.children[0].size() == 2);
  CHECK(t.subtree_size(0) == 4);
  CHECK(t.subtree_size(1) == 2);
  CHECK(t.is_proper_descendant(3, 0));
  CHECK(t.is_proper_descendant(3, 1));
  CHECK(!t.is_proper_descendant(3, 2));
  CHECK(!t.is_proper_descendant(0, 0));
  CHECK(t.path_down(0, 3) == std::vector<Vertex>{0, 1, 3});

  CHECK_THROWS_AS(RootedTree::from_parents({-1, -1, 0}), ValidationError);
  CHECK_THROWS_AS(RootedTree::from_parents({1, 0}), ValidationError);
  CHECK_THROWS_AS(RootedTree::from_parents({-1, 2, 1}), ValidationError);
  CHECK_THROWS_AS(RootedTree::from_parents({-1, 7}), ValidationError);
}

TEST_CASE("digraph rejects self loops") {
  Digraph g;
  g.n = 2;
  g.edges.push_back({0, 1, {}});
  CHECK_NOTHROW(g.validate());
  g.edges.push_back({1, 1, {}});
  CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("capacity profile step evaluation") {
  CapacityProfile p;
  p.steps = {{0.0, 5.0}, {10.0, 2.0}};
  CHECK_NOTHROW(p.validate());
  CHECK(p.at(0.0) == 5.0);
  CHECK(p.at(4.0) == 5.0);
  CHECK(p.at(9.999) == 5.0);
  CHECK(p.at(10.0) == 2.0);  // right-continuous at the breakpoint
  CHECK(p.at(1e9) == 2.0);

  CapacityProfile bad;
  bad.steps = {{0.0, 2.0}, {5.0, 7.0}};  // capacity increases
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CapacityProfile late;
  late.steps = {{1.0, 2.0}};  // must start at t = 0
  CHECK_THROWS_AS(late.validate(), ValidationError);
}

TEST_CASE("broadcast schedule validation") {
  SUBCASE("single vertex, empty schedule") {
    RootedTree t = RootedTree::from_parents({-1});
    BroadcastSchedule s;
    CHECK(validate_broadcast_schedule(t, s).ok);
  }
  SUBCASE("overlapping paths in one round rejected") {
    // path 0 -> 1 -> 2; both transmissions run through vertex 1
    RootedTree t = RootedTree::from_parents({-1, 0, 1});
    BroadcastSchedule s;
    s.rounds.push_back({{0, 1}, {0, 2}});
    ScheduleCheck c = validate_broadcast_schedule(t, s);
    CHECK(!c.ok);
    CHECK(!c.message.empty());
  }
  SUBCASE("star over two rounds accepted") {
    RootedTree t = RootedTree::from_parents({-1, 0, 0});
    BroadcastSchedule s;
    s.rounds.push_back({{0, 1}});
    s.rounds.push_back({{0, 2}});
    CHECK(validate_broadcast_schedule(t, s).ok);
  }
  SUBCASE("uninformed sender rejected") {
    RootedTree t = RootedTree::from_parents({-1, 0, 1});
    BroadcastSchedule s;
    s.rounds.push_back({{1, 2}});  // 1 never received the message
    s.rounds.push_back({{0, 1}});
    CHECK(!validate_broadcast_schedule(t, s).ok);
  }
  SUBCASE("missing receiver rejected") {
    RootedTree t = RootedTree::from_parents({-1, 0, 0});
    BroadcastSchedule s;
    s.rounds.push_back({{0, 1}});
    CHECK(!validate_broadcast_schedule(t, s).ok);
  }
}

TEST_CASE("json round trip for every instance kind") {
  std::mt19937 rng(20240817);
  for (int rep = 0; rep < 10; ++rep) {
    check_roundtrip(gen::random_tree(1 + rep, rng));
    check_roundtrip(gen::random_stream_system(3, 10, 4, 3, rng));
    check_roundtrip(gen::random_reorder(5, rep % 2 ? Aggregation::Max
                                                   : Aggregation::Sum, rng));
    check_roundtrip(gen::random_tpt(6, 9, 9, rep % 2 == 0, rng));
    check_roundtrip(gen::random_catalog(3, 8, 6, 0.5, rep % 2 == 0, rng));
    check_roundtrip(gen::random_freq(6, 3, rep % 2 == 0, 3, rng));

    Digraph g = gen::random_digraph(5, 9, rng);
    gen::add_rc(g, 6, rng);
    gen::add_durations(g, 5, rng);
    check_roundtrip(g);
    Digraph h = gen::random_digraph(5, 9, rng);
    gen::add_caps(h, 7, rng);
    check_roundtrip(h);
    Digraph pr = gen::random_digraph(4, 7, rng);
    gen::add_durations(pr, 5, rng);
    gen::add_profiles(pr, 7, 3, rng);
    check_roundtrip(pr);
  }
}

TEST_CASE("file loading and kind discrimination") {
  std::mt19937 rng(7);
  RootedTree t = gen::random_tree(5, rng);
  const std::string path = temp_path("tree");
  save_instance(path, t);

  AnyInstance loaded = load_instance(path);
  CHECK(kind_of(loaded) == InstanceKind::RootedTree);
  CHECK(std::get<RootedTree>(loaded).n == 5);
  CHECK_NOTHROW(load_instance(path, InstanceKind::RootedTree));
  CHECK_THROWS_AS(load_instance(path, InstanceKind::Digraph), ValidationError);
  RootedTree typed = load_typed_instance<RootedTree>(path);
  CHECK(typed.n == 5);
  CHECK_THROWS_AS(load_typed_instance<StreamSystem>(path), ValidationError);

  const std::string garbled = temp_path("garbled");
  {
    std::ofstream out(garbled);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_instance(garbled), ParseError);

  const std::string nokind = temp_path("nokind");
  {
    std::ofstream out(nokind);
    out << "{\"n\": 3}";
  }
  CHECK_THROWS_AS(load_instance(nokind), ParseError);

  std::remove(path.c_str());
  std::remove(garbled.c_str());
  std::remove(nokind.c_str());
}

TEST_CASE("instance kind tags round trip") {
  for (InstanceKind kind :
       {InstanceKind::RootedTree, InstanceKind::Digraph,
        InstanceKind::StreamSystem, InstanceKind::Reorder, InstanceKind::Tpt,
        InstanceKind::ResourceCatalog, InstanceKind::FreqMulticast}) {
    CHECK(instance_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(instance_kind_from_string("nonsense"), ParseError);
}

TEST_CASE("reorder cost helpers") {
  ReorderInstance inst;
  inst.n = 3;
  inst.arrival = {2, 3, 1};
  inst.cost = ReorderInstance::position_cost_table(3);
  CHECK_NOTHROW(inst.validate());
  CHECK(inst.cost_at(1, 1) == 1.0);
  CHECK(inst.cost_at(2, 3) == 3.0);
  CHECK(inst.cost_at(3, 2) == 2.0);

  inst.arrival = {2, 2, 1};  // not a permutation
  CHECK_THROWS_AS(inst.validate(), ValidationError);
}

TEST_CASE("resource catalog invariants") {
  ResourceCatalog cat;
  cat.cap = {2, 5};
  cat.cost = {1.0, 10.0};
  cat.charging_points = {1};
  CHECK_NOTHROW(cat.validate());
  CHECK(cat.type_count() == 2);
  CHECK(cat.is_charging_point(1));
  CHECK(!cat.is_charging_point(0));
  CHECK(cat.charge_time(1, 0, 2) == 0.0);  // instantaneous without tcharge

  cat.tcharge = ChargeTime{1.5, 0.5};
  CHECK(cat.charge_time(1, 1, 5) == doctest::Approx(1.5 + 0.5 * 4));

  ResourceCatalog bad = cat;
  bad.cap = {5, 2};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("schedule json round trip") {
  BroadcastSchedule s;
  s.rounds.push_back({{0, 3}});
  s.rounds.push_back({{0, 1}, {3, 2}});
  nlohmann::json j = schedule_to_json(s);
  BroadcastSchedule back = schedule_from_json(j);
  REQUIRE(back.rounds.size() == 2);
  CHECK(back.rounds[1][1].sender == 3);
  CHECK(back.rounds[1][1].receiver == 2);
  CHECK(schedule_to_json(back) == j);
}

}  // TEST_SUITE
