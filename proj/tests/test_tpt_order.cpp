#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cdplan/generators.hpp"
#include "cdplan/model.hpp"
#include "cdplan/oracles.hpp"
#include "cdplan/tpt_order.hpp"
#include "doctest.h"

using namespace cdplan;
namespace tpt = cdplan::tpt_order;

namespace {

TptInstance make(std::vector<std::int64_t> sz, std::vector<std::int64_t> p,
                 std::optional<std::int64_t> target = std::nullopt) {
  TptInstance inst;
  inst.n = static_cast<int>(sz.size());
  inst.size = std::move(sz);
  inst.effort = std::move(p);
  inst.target = target;
  inst.validate();
  return inst;
}

}  // namespace

TEST_SUITE("tpt_order") {

TEST_CASE("two-packet rearrangement bounds") {
  TptInstance inst = make({1, 2}, {1, 2});
  tpt::OrderResult lo = tpt::min_tpt(inst);
  tpt::OrderResult hi = tpt::max_tpt(inst);
  CHECK(lo.value == 4);  // 2*1 + 1*2
  CHECK(hi.value == 5);  // 1*1 + 2*2
  CHECK(tpt::tpt_value(inst, lo.perm) == lo.value);
  CHECK(tpt::tpt_value(inst, hi.perm) == hi.value);
}

TEST_CASE("equal sizes collapse the bounds") {
  TptInstance inst = make({3, 3, 3}, {2, 5, 1});
  const std::int64_t flat = 3 * (2 + 5 + 1);
  CHECK(tpt::min_tpt(inst).value == flat);
  CHECK(tpt::max_tpt(inst).value == flat);
}

TEST_CASE("bounds equal exhaustive search") {
  std::mt19937 rng(777);
  for (int it = 0; it < 40; ++it) {
    const int n = 1 + static_cast<int>(rng() % 8);
    TptInstance inst = gen::random_tpt(n, 9, 9, false, rng);
    auto [omin, omax] = oracles::tpt_min_max(inst);
    CHECK(tpt::min_tpt(inst).value == omin);
    CHECK(tpt::max_tpt(inst).value == omax);
  }
}

TEST_CASE("random permutations stay within the bounds") {
  std::mt19937 rng(888);
  for (int it = 0; it < 3; ++it) {
    TptInstance inst = gen::random_tpt(9, 20, 20, false, rng);
    const std::int64_t lo = tpt::min_tpt(inst).value;
    const std::int64_t hi = tpt::max_tpt(inst).value;
    std::vector<int> perm(inst.n);
    std::iota(perm.begin(), perm.end(), 1);
    for (int rep = 0; rep < 1000; ++rep) {
      std::shuffle(perm.begin(), perm.end(), rng);
      const std::int64_t v = tpt::tpt_value(inst, perm);
      CHECK(lo <= v);
      CHECK(v <= hi);
    }
  }
}

TEST_CASE("target at the maximum needs no swap") {
  TptInstance inst = make({1, 2}, {1, 2}, 5);
  tpt::SwapResult r = tpt::swap_and_decrease(inst, {});
  CHECK(r.outcome == tpt::Outcome::Found);
  CHECK(r.stats.swaps == 0);
  CHECK(tpt::tpt_value(inst, r.perm) == 5);
}

TEST_CASE("one swap closes a gap of one") {
  TptInstance inst = make({1, 2}, {1, 2}, 4);
  tpt::SwapResult r = tpt::swap_and_decrease(inst, {});
  CHECK(r.outcome == tpt::Outcome::Found);
  CHECK(r.stats.swaps == 1);
  CHECK(tpt::tpt_value(inst, r.perm) == 4);
}

TEST_CASE("out-of-range targets are proven infeasible") {
  for (std::int64_t bad : {3, 6, 1000}) {
    TptInstance inst = make({1, 2}, {1, 2}, bad);
    tpt::SwapResult r = tpt::swap_and_decrease(inst, {});
    CHECK(r.outcome == tpt::Outcome::ProvenInfeasible);
  }
}

TEST_CASE("an unreachable in-range target is only a heuristic failure") {
  // achievable values are exactly {6, 10}; 7 sits in the gap
  TptInstance inst = make({1, 3}, {1, 3}, 7);
  std::set<std::int64_t> values = oracles::tpt_value_set(inst);
  CHECK(values == std::set<std::int64_t>{6, 10});
  for (const tpt::SwapPolicy& policy : tpt::standard_policies()) {
    tpt::SwapResult r = tpt::swap_and_decrease(inst, policy, 42);
    CHECK(r.outcome == tpt::Outcome::HeuristicFailure);
  }
}

TEST_CASE("every found permutation hits the target exactly") {
  std::mt19937 rng(999);
  const std::vector<tpt::SwapPolicy> policies = tpt::standard_policies();
  for (int it = 0; it < 25; ++it) {
    const int n = 2 + static_cast<int>(rng() % 7);
    TptInstance inst = gen::random_tpt(n, 9, 9, true, rng);
    for (const tpt::SwapPolicy& policy : policies) {
      tpt::SwapResult r = tpt::swap_and_decrease(inst, policy, it);
      CHECK(r.outcome != tpt::Outcome::ProvenInfeasible);
      if (r.outcome == tpt::Outcome::Found)
        CHECK(tpt::tpt_value(inst, r.perm) == *inst.target);
    }
  }
}

TEST_CASE("determinism given policy and seed") {
  std::mt19937 rng(1234);
  TptInstance inst = gen::random_tpt(12, 30, 10, true, rng);
  tpt::SwapPolicy policy;
  policy.kind = tpt::PolicyKind::RandomPair;
  tpt::SwapResult a = tpt::swap_and_decrease(inst, policy, 7);
  tpt::SwapResult b = tpt::swap_and_decrease(inst, policy, 7);
  CHECK(a.outcome == b.outcome);
  CHECK(a.perm == b.perm);
  CHECK(a.stats.swaps == b.stats.swaps);
}

TEST_CASE("standard policy set and names") {
  const std::vector<tpt::SwapPolicy> policies = tpt::standard_policies();
  CHECK(policies.size() == 23);
  std::set<std::string> names;
  for (const tpt::SwapPolicy& p : policies) {
    const std::string name = tpt::policy_name(p);
    CHECK(!name.empty());
    names.insert(name);
  }
  CHECK(names.size() == policies.size());
}

TEST_CASE("benchmark emits one row per policy") {
  std::mt19937 rng(31);
  std::vector<TptInstance> suite;
  for (int i = 0; i < 5; ++i) suite.push_back(gen::random_tpt(10, 9, 9, true, rng));
  suite.push_back(gen::random_tpt(6, 9, 9, false, rng));  // skipped: no target
  const std::vector<tpt::SwapPolicy> policies = tpt::standard_policies();
  std::vector<tpt::BenchmarkRow> rows = tpt::policy_benchmark(suite, policies, 5);
  REQUIRE(rows.size() == policies.size());
  for (const tpt::BenchmarkRow& row : rows) {
    CHECK(row.instances == 5);
    CHECK(row.found + row.heuristic_failure + row.proven_infeasible ==
          row.instances);
  }
}

TEST_CASE("tpt_value validates its permutation") {
  TptInstance inst = make({1, 2, 3}, {1, 1, 1});
  CHECK_THROWS_AS(tpt::tpt_value(inst, {1, 1, 2}), ValidationError);
  CHECK_THROWS_AS(tpt::tpt_value(inst, {1, 2}), ValidationError);
}

}  // TEST_SUITE
