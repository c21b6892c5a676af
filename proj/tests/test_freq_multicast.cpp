#include <cmath>
#include <random>

#include "cdplan/freq_multicast.hpp"
#include "cdplan/generators.hpp"
#include "cdplan/model.hpp"
#include "cdplan/oracles.hpp"
#include "doctest.h"

using namespace cdplan;
namespace fm = cdplan::freq_multicast;

namespace {

bool is_finite(double x) { return std::isfinite(x); }

// Per-frequency costs embedded as a conversion matrix: staying on the
// incoming frequency is free, switching to fout costs c(u, fout).
FreqInstance embed_as_matrix(const FreqInstance& per_freq) {
  FreqInstance m = per_freq;
  m.conv_matrix.assign(
      m.n, std::vector<std::vector<double>>(
               m.k, std::vector<double>(m.k, 0.0)));
  for (int v = 0; v < m.n; ++v)
    for (int fin = 0; fin < m.k; ++fin)
      for (int fout = 0; fout < m.k; ++fout)
        m.conv_matrix[v][fin][fout] =
            fin == fout ? 0.0 : per_freq.conv_cost[v][fout];
  m.conv_cost.clear();
  return m;
}

}  // namespace

TEST_SUITE("freq_multicast") {

TEST_CASE("source pays nothing on a single edge") {
  FreqInstance inst;
  inst.n = 2;
  inst.k = 2;
  inst.edges = {{0, 1}};
  inst.leaf_freq = {{0, 1}, {1, 2}};
  inst.conv_cost = {{4.0, 4.0}, {4.0, 4.0}};
  inst.validate();
  fm::FixedRootResult r = fm::solve_fixed_root(inst, 0);
  CHECK(r.cost == 0.0);  // any starting frequency is free
  REQUIRE(r.plan.has_value());
  CHECK(r.plan->sent_freq[0] == 2);
  CHECK(fm::replay_plan_cost(inst, 0, *r.plan) == 0.0);
}

TEST_CASE("conflicting leaf frequencies are infeasible") {
  FreqInstance inst;
  inst.n = 3;
  inst.k = 2;
  inst.edges = {{0, 1}, {0, 2}};
  inst.leaf_freq = {{1, 1}, {2, 2}};
  inst.conv_cost.assign(3, std::vector<double>(2, 1.0));
  inst.validate();
  fm::FixedRootResult r = fm::solve_fixed_root(inst, 0);
  CHECK(r.cost == fm::kInfiniteCost);
  CHECK(!r.plan.has_value());
}

TEST_CASE("matrix model single edge with one frequency") {
  FreqInstance inst;
  inst.n = 2;
  inst.k = 1;
  inst.edges = {{0, 1}};
  inst.leaf_freq = {{0, 1}, {1, 1}};
  inst.conv_matrix = {{{5.0}}, {{7.0}}};
  inst.validate();
  fm::FixedRootResult r = fm::solve_fixed_root(inst, 0);
  CHECK(r.cost == 5.0);
}

TEST_CASE("all-roots on a symmetric path is symmetric") {
  FreqInstance inst;
  inst.n = 3;
  inst.k = 2;
  inst.edges = {{0, 1}, {1, 2}};
  inst.leaf_freq = {{0, 1}, {2, 1}};
  inst.conv_cost = {{2.0, 3.0}, {2.0, 3.0}, {2.0, 3.0}};
  inst.validate();
  fm::AllRootsResult all = fm::solve_all_roots(inst);
  REQUIRE(all.cost.size() == 3);
  CHECK(all.cost[0] == all.cost[2]);
}

TEST_CASE("fixed root matches the assignment-enumeration oracle") {
  std::mt19937 rng(404);
  for (int it = 0; it < 60; ++it) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int k = 1 + static_cast<int>(rng() % 3);
    const bool matrix = it % 2 == 0;
    FreqInstance inst = gen::random_freq(n, k, matrix, 3, rng);
    const Vertex src = static_cast<Vertex>(rng() % n);
    fm::FixedRootResult r = fm::solve_fixed_root(inst, src);
    CHECK(r.cost == oracles::multicast_min_cost(inst, src));
    if (is_finite(r.cost)) {
      REQUIRE(r.plan.has_value());
      CHECK(fm::replay_plan_cost(inst, src, *r.plan) == r.cost);
    }
  }
}

TEST_CASE("rerooting equals solving every root from scratch") {
  std::mt19937 rng(505);
  for (int it = 0; it < 40; ++it) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const int k = 1 + static_cast<int>(rng() % 3);
    FreqInstance inst = gen::random_freq(n, k, it % 2 == 0, 3, rng);
    fm::AllRootsResult all = fm::solve_all_roots(inst);
    REQUIRE(static_cast<int>(all.cost.size()) == n);
    for (Vertex u = 0; u < n; ++u)
      CHECK(all.cost[u] == fm::solve_fixed_root(inst, u).cost);
  }
}

TEST_CASE("table identities hold at every forwarding vertex") {
  std::mt19937 rng(606);
  for (int it = 0; it < 25; ++it) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const int k = 2 + static_cast<int>(rng() % 2);
    FreqInstance inst = gen::random_freq(n, k, false, 3, rng);
    const Vertex src = static_cast<Vertex>(rng() % n);
    fm::FixedRootResult r = fm::solve_fixed_root(inst, src);
    for (Vertex u = 0; u < n; ++u) {
      const fm::NodeTable& t = r.tables[u];
      if (t.cmin_true.empty()) continue;
      for (int f = 0; f < k; ++f) {
        if (is_finite(t.cmin_true[f]) && is_finite(t.cmin_false[f]))
          CHECK(t.cmin_false[f] ==
                doctest::Approx(t.cmin_true[f] - inst.conv_cost[u][f]));
        if (is_finite(t.cbest) && is_finite(t.cmin_true[f]))
          CHECK(t.cbest <= t.cmin_true[f]);
      }
    }
  }
}

TEST_CASE("matrix embedding reproduces the per-frequency model") {
  std::mt19937 rng(707);
  for (int it = 0; it < 30; ++it) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int k = 1 + static_cast<int>(rng() % 3);
    FreqInstance per_freq = gen::random_freq(n, k, false, 3, rng);
    FreqInstance matrix = embed_as_matrix(per_freq);
    for (Vertex u = 0; u < n; ++u)
      CHECK(fm::solve_fixed_root(per_freq, u).cost ==
            fm::solve_fixed_root(matrix, u).cost);
  }
}

TEST_CASE("all-roots operation counter is reported") {
  std::mt19937 rng(808);
  FreqInstance inst = gen::random_freq(40, 2, false, 3, rng);
  fm::AllRootsResult all = fm::solve_all_roots(inst);
  CHECK(all.ops > 0);
}

}  // TEST_SUITE
