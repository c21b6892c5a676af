#include <random>

#include "cdplan/generators.hpp"
#include "cdplan/model.hpp"
#include "cdplan/oracles.hpp"
#include "cdplan/stream_sched.hpp"
#include "doctest.h"

using namespace cdplan;
namespace ss = cdplan::stream_sched;

namespace {

StreamSystem make(int m, std::vector<int> a, std::vector<int> b) {
  StreamSystem sys;
  sys.n = static_cast<int>(a.size());
  sys.m = m;
  sys.send_cap = std::move(a);
  sys.cooldown = std::move(b);
  sys.validate();
  return sys;
}

void check_result(const StreamSystem& sys, const ss::ScheduleResult& r) {
  CHECK(static_cast<int>(r.actions.size()) == r.makespan);
  CHECK_NOTHROW(ss::validate_actions(sys, r.actions));
}

}  // namespace

TEST_SUITE("stream_sched") {

TEST_CASE("pinned small makespans") {
  struct Case {
    StreamSystem sys;
    int expected;
  };
  const Case cases[] = {
      {make(5, {1}, {0}), 5},
      {make(5, {2}, {1}), 5},  // send-wait-send-wait-send
      {make(4, {1, 1}, {1, 1}), 4},
      {make(100, {7, 7, 7}, {0, 0, 0}), 15},
      {make(0, {3}, {2}), 0},
  };
  for (const Case& c : cases) {
    ss::ScheduleResult w = ss::dp_waits(c.sys);
    ss::ScheduleResult h = ss::dp_history(c.sys);
    CHECK(w.makespan == c.expected);
    CHECK(h.makespan == c.expected);
    check_result(c.sys, w);
    check_result(c.sys, h);
  }
}

TEST_CASE("asymmetric system pinned by exhaustive search") {
  StreamSystem sys = make(7, {3, 1}, {2, 0});
  const int opt = oracles::stream_min_makespan(sys);
  CHECK(ss::dp_waits(sys).makespan == opt);
  CHECK(ss::dp_history(sys).makespan == opt);
}

TEST_CASE("greedy tie-breaks pick the promised stream") {
  StreamSystem sys = make(4, {2, 2}, {0, 3});
  ss::ScheduleResult small = ss::greedy(sys, ss::GreedyTie::SmallestB);
  ss::ScheduleResult large = ss::greedy(sys, ss::GreedyTie::LargestB);
  REQUIRE(!small.actions.empty());
  REQUIRE(!large.actions.empty());
  CHECK(small.actions[0] == 0);
  CHECK(large.actions[0] == 1);
  check_result(sys, small);
  check_result(sys, large);
}

TEST_CASE("greedy on a single stream equals the dp") {
  for (const StreamSystem& sys : {make(5, {1}, {0}), make(5, {2}, {1})}) {
    const int opt = ss::dp_waits(sys).makespan;
    CHECK(ss::greedy(sys, ss::GreedyTie::SmallestB).makespan == opt);
    CHECK(ss::greedy(sys, ss::GreedyTie::LargestB).makespan == opt);
  }
}

TEST_CASE("formulations agree and beat neither greedy") {
  std::mt19937 rng(909);
  for (int it = 0; it < 120; ++it) {
    StreamSystem sys = gen::random_stream_system(
        1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 25), 5, 3,
        rng);
    ss::ScheduleResult w = ss::dp_waits(sys);
    ss::ScheduleResult h = ss::dp_history(sys);
    CHECK(w.makespan == h.makespan);
    check_result(sys, w);
    check_result(sys, h);
    for (ss::GreedyTie tie : {ss::GreedyTie::SmallestB, ss::GreedyTie::LargestB}) {
      ss::ScheduleResult g = ss::greedy(sys, tie);
      CHECK(w.makespan <= g.makespan);
      check_result(sys, g);
    }
  }
}

TEST_CASE("dp is exact on oracle-sized systems") {
  std::mt19937 rng(111);
  for (int it = 0; it < 60; ++it) {
    StreamSystem sys = gen::random_stream_system(
        1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 9), 4, 2,
        rng);
    CHECK(ss::solve(sys).makespan == oracles::stream_min_makespan(sys));
  }
}

TEST_CASE("rolling memory reproduces the full-table result") {
  std::mt19937 rng(222);
  for (int it = 0; it < 60; ++it) {
    StreamSystem sys = gen::random_stream_system(
        1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 30), 6, 3,
        rng);
    for (auto form : {ss::Formulation::Waits, ss::Formulation::History}) {
      ss::ScheduleResult full = ss::solve(sys, form, ss::MemoryMode::Full);
      ss::ScheduleResult roll = ss::solve(sys, form, ss::MemoryMode::Rolling);
      CHECK(full.makespan == roll.makespan);
      check_result(sys, roll);
    }
  }
}

TEST_CASE("layer sizes follow the two state encodings") {
  StreamSystem sys = make(10, {2, 1, 3}, {1, 0, 2});
  CHECK(ss::waits_layer_size(sys) == 2ull * 1ull * 3ull);
  CHECK(ss::history_layer_size(sys) == 4ull * 4ull);  // (n+1)^BM
  StreamSystem nb = make(10, {2, 2}, {0, 0});
  CHECK(ss::history_layer_size(nb) == 1);
}

TEST_CASE("auto picks the smaller state space") {
  // waits: 4^1 = 4 vs history: 2^3 = 8
  StreamSystem sys = make(6, {1}, {3});
  ss::ScheduleResult a = ss::solve(sys, ss::Formulation::Auto);
  CHECK(a.state_count == std::min(ss::waits_layer_size(sys),
                                  ss::history_layer_size(sys)));
}

TEST_CASE("state-space guard refuses oversized systems") {
  StreamSystem sys;
  sys.n = 20;
  sys.m = 4;
  sys.send_cap.assign(20, 1);
  sys.cooldown.assign(20, 3);
  sys.validate();
  CHECK_THROWS_AS(ss::dp_waits(sys), ss::StateSpaceError);
}

TEST_CASE("validate_actions rejects bad replays") {
  StreamSystem sys = make(3, {1, 1}, {2, 2});
  CHECK_THROWS_AS(ss::validate_actions(sys, {0, 0, 1}), ValidationError);
  CHECK_THROWS_AS(ss::validate_actions(sys, {0, 1}), ValidationError);
  CHECK_THROWS_AS(ss::validate_actions(sys, {5}), ValidationError);
  CHECK_NOTHROW(ss::validate_actions(sys, {0, 1, -1, 0}));
}

TEST_CASE("tiny sweep is exhaustive and self-consistent") {
  ss::SweepConfig cfg;
  cfg.a_max = 2;
  cfg.b_max = 1;
  cfg.n = 2;
  cfg.m = 6;
  ss::SweepSummary s = ss::sweep(cfg);
  CHECK(s.total == 16);  // (2 * 2)^2
  CHECK(s.dp_worse == 0);
  CHECK(s.dp_better_smallest + s.tie_smallest == s.total);
  CHECK(s.dp_better_largest + s.tie_largest == s.total);

  cfg.jobs = 4;
  ss::SweepSummary par = ss::sweep(cfg);
  CHECK(par.dp_better_smallest == s.dp_better_smallest);
  CHECK(par.tie_largest == s.tie_largest);
}

}  // TEST_SUITE
