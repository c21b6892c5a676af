#include "cdplan/tpt_order.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cdplan::tpt_order {

namespace {

// Time moments sorted by effort ascending, ties by index.
std::vector<int> effort_order(const TptInstance& inst) {
  std::vector<int> order(inst.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.effort[a] < inst.effort[b];
  });
  return order;
}

std::vector<int> size_order(const TptInstance& inst, bool descending) {
  std::vector<int> order(inst.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return descending ? inst.size[a] > inst.size[b] : inst.size[a] < inst.size[b];
  });
  return order;
}

OrderResult matched_order(const TptInstance& inst, bool sizes_descending) {
  inst.validate();
  OrderResult result;
  result.perm.assign(inst.n, 0);
  const std::vector<int> slots = effort_order(inst);
  const std::vector<int> packets = size_order(inst, sizes_descending);
  for (int k = 0; k < inst.n; ++k) {
    result.perm[slots[k]] = packets[k] + 1;
    result.value += inst.effort[slots[k]] * inst.size[packets[k]];
  }
  return result;
}

std::vector<int> ordered_values(int count, Order order, std::mt19937_64& rng) {
  std::vector<int> values(count);
  std::iota(values.begin(), values.end(), 0);
  if (order == Order::Decreasing)
    std::reverse(values.begin(), values.end());
  else if (order == Order::Random)
    std::shuffle(values.begin(), values.end(), rng);
  return values;
}

// All slot pairs (i < j) in the policy's traversal order. Regenerated per
// step when either loop order is random.
std::vector<std::pair<int, int>> pair_sequence(int n, const SwapPolicy& policy,
                                               std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  if (policy.outer == OuterIndex::I) {
    for (int i : ordered_values(n, policy.outer_order, rng))
      for (int off : ordered_values(n - 1 - i, policy.inner_order, rng))
        pairs.emplace_back(i, i + 1 + off);
  } else {
    for (int j : ordered_values(n, policy.outer_order, rng))
      for (int i : ordered_values(j, policy.inner_order, rng))
        pairs.emplace_back(i, j);
  }
  return pairs;
}

}  // namespace

std::int64_t tpt_value(const TptInstance& inst, const std::vector<int>& perm) {
  inst.validate();
  if (static_cast<int>(perm.size()) != inst.n)
    throw ValidationError("permutation size mismatch");
  std::vector<bool> seen(inst.n + 1, false);
  std::int64_t value = 0;
  for (int t = 0; t < inst.n; ++t) {
    const int packet = perm[t];
    if (packet < 1 || packet > inst.n || seen[packet])
      throw ValidationError("not a permutation of 1..n");
    seen[packet] = true;
    value += inst.effort[t] * inst.size[packet - 1];
  }
  return value;
}

OrderResult min_tpt(const TptInstance& inst) { return matched_order(inst, true); }

OrderResult max_tpt(const TptInstance& inst) { return matched_order(inst, false); }

std::string policy_name(const SwapPolicy& policy) {
  auto order_tag = [](Order o) {
    switch (o) {
      case Order::Increasing: return "inc";
      case Order::Decreasing: return "dec";
      default: return "rand";
    }
  };
  auto traversal = [&] {
    return std::string(policy.outer == OuterIndex::I ? "/outer-i/" : "/outer-j/") +
           order_tag(policy.outer_order) + "/" + order_tag(policy.inner_order);
  };
  switch (policy.kind) {
    case PolicyKind::BestDecrease: return "best-decrease";
    case PolicyKind::BestAbsolute: return "best-absolute";
    case PolicyKind::FirstDecrease: return "first-decrease" + traversal();
    case PolicyKind::FirstAbsolute: return "first-absolute" + traversal();
    case PolicyKind::MultiSwap: return "multi-swap" + traversal();
    default: return "random-pair";
  }
}

SwapResult swap_and_decrease(const TptInstance& inst, const SwapPolicy& policy,
                             std::uint64_t seed) {
  inst.validate();
  if (!inst.target) throw ValidationError("swap search needs a target value");
  const auto start_time = std::chrono::steady_clock::now();
  SwapResult result;
  auto finish = [&](Outcome outcome) {
    result.outcome = outcome;
    result.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_time)
            .count();
    return result;
  };

  const std::int64_t target = *inst.target;
  if (target < min_tpt(inst).value || target > max_tpt(inst).value)
    return finish(Outcome::ProvenInfeasible);

  const int n = inst.n;
  const std::vector<int> slots = effort_order(inst);
  std::vector<std::int64_t> eff(n);
  for (int k = 0; k < n; ++k) eff[k] = inst.effort[slots[k]];
  std::vector<int> r = size_order(inst, false);  // packet per slot, 0-based
  std::int64_t t_val = 0;
  for (int k = 0; k < n; ++k) t_val += eff[k] * inst.size[r[k]];

  auto dif_of = [&](int i, int j) {
    return (inst.size[r[i]] - inst.size[r[j]]) * (eff[i] - eff[j]);
  };
  auto decrease_ok = [&](std::int64_t dif) {
    return dif > 0 && t_val - dif >= target;
  };
  auto absolute_ok = [&](std::int64_t dif) {
    return std::llabs(t_val - dif - target) < std::llabs(t_val - target);
  };
  auto apply = [&](int i, int j, std::int64_t dif) {
    std::swap(r[i], r[j]);
    t_val -= dif;
    result.stats.swaps += 1;
  };

  std::mt19937_64 rng(seed);
  const bool random_order = policy.outer_order == Order::Random ||
                            policy.inner_order == Order::Random;
  std::vector<std::pair<int, int>> pairs;
  if (policy.kind == PolicyKind::FirstDecrease ||
      policy.kind == PolicyKind::FirstAbsolute ||
      policy.kind == PolicyKind::MultiSwap)
    pairs = pair_sequence(n, policy, rng);

  const std::uint64_t step_cap =
      std::max<std::uint64_t>(static_cast<std::uint64_t>(n) * n * n, 8);
  while (t_val != target && result.stats.steps < step_cap) {
    result.stats.steps += 1;
    bool swapped = false;
    switch (policy.kind) {
      case PolicyKind::BestDecrease: {
        std::int64_t best = 0;
        int bi = -1, bj = -1;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            const std::int64_t dif = dif_of(i, j);
            if (decrease_ok(dif) && dif > best) {
              best = dif;
              bi = i;
              bj = j;
            }
          }
        if (bi >= 0) {
          apply(bi, bj, best);
          swapped = true;
        }
        break;
      }
      case PolicyKind::BestAbsolute: {
        std::int64_t best_gap = std::llabs(t_val - target);
        std::int64_t best_dif = 0;
        int bi = -1, bj = -1;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            const std::int64_t dif = dif_of(i, j);
            const std::int64_t gap = std::llabs(t_val - dif - target);
            if (gap < best_gap) {
              best_gap = gap;
              best_dif = dif;
              bi = i;
              bj = j;
            }
          }
        if (bi >= 0) {
          apply(bi, bj, best_dif);
          swapped = true;
        }
        break;
      }
      case PolicyKind::FirstDecrease:
      case PolicyKind::FirstAbsolute: {
        if (random_order) pairs = pair_sequence(n, policy, rng);
        for (const auto& [i, j] : pairs) {
          const std::int64_t dif = dif_of(i, j);
          const bool ok = policy.kind == PolicyKind::FirstDecrease
                              ? decrease_ok(dif)
                              : absolute_ok(dif);
          if (ok) {
            apply(i, j, dif);
            swapped = true;
            break;
          }
        }
        break;
      }
      case PolicyKind::MultiSwap: {
        if (random_order) pairs = pair_sequence(n, policy, rng);
        for (const auto& [i, j] : pairs) {
          const std::int64_t dif = dif_of(i, j);
          if (decrease_ok(dif)) {
            apply(i, j, dif);
            swapped = true;
            if (t_val == target) break;
          }
        }
        break;
      }
      case PolicyKind::RandomPair: {
        std::uniform_int_distribution<int> pick(0, n - 1);
        const std::uint64_t attempts = 2ull * n * n;
        for (std::uint64_t a = 0; a < attempts; ++a) {
          const int i = pick(rng);
          const int j = pick(rng);
          if (i == j) continue;
          const std::int64_t dif = dif_of(i, j);
          if (decrease_ok(dif)) {
            apply(i, j, dif);
            swapped = true;
            break;
          }
        }
        break;
      }
    }
    if (!swapped) break;
  }

  if (t_val != target) return finish(Outcome::HeuristicFailure);
  result.perm.assign(n, 0);
  for (int k = 0; k < n; ++k) result.perm[slots[k]] = r[k] + 1;
  return finish(Outcome::Found);
}

std::vector<BenchmarkRow> policy_benchmark(
    const std::vector<TptInstance>& instances,
    const std::vector<SwapPolicy>& policies, std::uint64_t seed) {
  std::vector<BenchmarkRow> rows;
  rows.reserve(policies.size());
  for (std::size_t p = 0; p < policies.size(); ++p) {
    BenchmarkRow row;
    row.policy = policy_name(policies[p]);
    for (std::size_t k = 0; k < instances.size(); ++k) {
      if (!instances[k].target) continue;
      SwapResult res =
          swap_and_decrease(instances[k], policies[p], seed + k);
      row.instances += 1;
      switch (res.outcome) {
        case Outcome::Found: row.found += 1; break;
        case Outcome::HeuristicFailure: row.heuristic_failure += 1; break;
        case Outcome::ProvenInfeasible: row.proven_infeasible += 1; break;
      }
      row.steps += res.stats.steps;
      row.swaps += res.stats.swaps;
      row.elapsed_seconds += res.stats.elapsed_seconds;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SwapPolicy> standard_policies() {
  std::vector<SwapPolicy> policies;
  policies.push_back({PolicyKind::BestDecrease, OuterIndex::I,
                      Order::Increasing, Order::Increasing});
  policies.push_back({PolicyKind::BestAbsolute, OuterIndex::I,
                      Order::Increasing, Order::Increasing});
  const Order orders[] = {Order::Increasing, Order::Decreasing, Order::Random};
  for (PolicyKind kind : {PolicyKind::FirstDecrease, PolicyKind::FirstAbsolute})
    for (Order outer : orders)
      for (Order inner : orders)
        policies.push_back({kind, OuterIndex::I, outer, inner});
  policies.push_back({PolicyKind::MultiSwap, OuterIndex::I, Order::Increasing,
                      Order::Increasing});
  policies.push_back({PolicyKind::MultiSwap, OuterIndex::J, Order::Increasing,
                      Order::Increasing});
  policies.push_back({PolicyKind::RandomPair, OuterIndex::I, Order::Increasing,
                      Order::Increasing});
  return policies;
}

}  // namespace cdplan::tpt_order
