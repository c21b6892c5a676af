#include <algorithm>
#include <random>

#include "cdplan/generators.hpp"
#include "cdplan/model.hpp"
#include "cdplan/oracles.hpp"
#include "cdplan/tree_broadcast.hpp"
#include "doctest.h"

using namespace cdplan;
namespace tb = cdplan::tree_broadcast;

namespace {

void check_solution(const RootedTree& tree, const tb::Solution& sol) {
  CHECK(static_cast<int>(sol.schedule.rounds.size()) == sol.t_opt);
  ScheduleCheck c = validate_broadcast_schedule(tree, sol.schedule);
  CHECK_MESSAGE(c.ok, c.message);
  REQUIRE(static_cast<int>(sol.per_vertex.size()) == tree.n);
  CHECK(sol.per_vertex[tree.root].tmin.front() == sol.t_opt);
  // tmin arrays strictly decrease and end at zero
  for (Vertex u = 0; u < tree.n; ++u) {
    const auto& tmin = sol.per_vertex[u].tmin;
    REQUIRE(!tmin.empty());
    CHECK(tmin.back() == 0);
    for (size_t i = 1; i < tmin.size(); ++i) CHECK(tmin[i] < tmin[i - 1]);
    for (Vertex c2 : tree.children[u])
      CHECK(tmin.front() >= sol.per_vertex[c2].tmin.front());
  }
}

}  // namespace

TEST_SUITE("tree_broadcast") {

TEST_CASE("single vertex broadcasts in zero rounds") {
  RootedTree t = RootedTree::from_parents({-1});
  tb::Solution sol = tb::solve(t);
  CHECK(sol.t_opt == 0);
  CHECK(sol.schedule.rounds.empty());
  check_solution(t, sol);
}

TEST_CASE("star with four leaves needs four rounds") {
  RootedTree t = gen::star_tree(5);
  tb::Solution sol = tb::solve(t);
  CHECK(sol.t_opt == 4);
  check_solution(t, sol);
}

TEST_CASE("path of four finishes in two rounds") {
  // round 1: root sends deep; round 2: two disjoint transmissions
  RootedTree t = gen::path_tree(4);
  tb::Solution sol = tb::solve(t);
  CHECK(sol.t_opt == 2);
  check_solution(t, sol);
}

TEST_CASE("search_tmin on a two-vertex path") {
  RootedTree t = gen::path_tree(2);
  tb::Solution sol = tb::solve(t);
  CHECK(sol.t_opt == 1);
  std::vector<tb::ChildCursor> cursors{{1, 0, false}};
  CHECK(tb::search_tmin(sol.per_vertex, cursors, 0, 1, tb::SearchMode::Linear) ==
        1);
  CHECK(tb::search_tmin(sol.per_vertex, cursors, 0, 1, tb::SearchMode::Binary) ==
        1);
}

TEST_CASE("feasibility of a three-leaf star") {
  RootedTree t = gen::star_tree(4);
  tb::Solution sol = tb::solve(t);
  std::vector<tb::ChildCursor> cursors{{1, 0, false}, {2, 0, false},
                                       {3, 0, false}};
  CHECK(!tb::feasible(sol.per_vertex, 2, cursors).feasible);
  tb::FeasibleResult ok = tb::feasible(sol.per_vertex, 3, cursors);
  CHECK(ok.feasible);
  CHECK(ok.sends.size() == 3);
}

TEST_CASE("leaf is feasible at any nonnegative budget") {
  RootedTree t = gen::path_tree(2);
  tb::Solution sol = tb::solve(t);
  tb::FeasibleResult r = tb::feasible(sol.per_vertex, 0, {});
  CHECK(r.feasible);
  CHECK(r.sends.empty());
}

TEST_CASE("complete binary tree regression") {
  RootedTree t = RootedTree::from_parents({-1, 0, 0, 1, 1, 2, 2});
  tb::Solution sol = tb::solve(t);
  CHECK(sol.t_opt == oracles::min_broadcast_time(t));
  CHECK(sol.t_opt == 4);
  check_solution(t, sol);
}

TEST_CASE("matches brute force on random small trees") {
  std::mt19937 rng(101);
  for (int it = 0; it < 80; ++it) {
    const int n = 1 + static_cast<int>(rng() % 7);
    RootedTree t = gen::random_tree(n, rng);
    tb::Solution sol = tb::solve(t);
    CHECK(sol.t_opt == oracles::min_broadcast_time(t));
    check_solution(t, sol);
  }
}

TEST_CASE("linear and binary search agree") {
  std::mt19937 rng(202);
  for (int it = 0; it < 40; ++it) {
    const int n = 2 + static_cast<int>(rng() % 24);
    RootedTree t = gen::random_tree(n, rng);
    tb::Solution lin = tb::solve(t, tb::SearchMode::Linear);
    tb::Solution bin = tb::solve(t, tb::SearchMode::Binary);
    CHECK(lin.t_opt == bin.t_opt);
    for (Vertex u = 0; u < n; ++u) {
      CHECK(lin.per_vertex[u].tmin == bin.per_vertex[u].tmin);
      CHECK(lin.per_vertex[u].snd == bin.per_vertex[u].snd);
    }
  }
}

TEST_CASE("result does not depend on children list order") {
  std::mt19937 rng(303);
  for (int it = 0; it < 25; ++it) {
    const int n = 3 + static_cast<int>(rng() % 12);
    RootedTree t = gen::random_tree(n, rng);
    const int reference = tb::solve(t).t_opt;
    RootedTree shuffled = t;
    for (auto& kids : shuffled.children)
      std::shuffle(kids.begin(), kids.end(), rng);
    shuffled.validate();
    tb::Solution sol = tb::solve(shuffled);
    CHECK(sol.t_opt == reference);
    check_solution(shuffled, sol);
  }
}

TEST_CASE("operation counter grows with instance size") {
  std::uint64_t prev = 0;
  for (int n : {20, 40, 80}) {
    tb::Solution sol = tb::solve(gen::star_tree(n), tb::SearchMode::Linear);
    CHECK(sol.ops > prev);
    prev = sol.ops;
  }
}

}  // TEST_SUITE
