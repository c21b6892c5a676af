/// \file tpt_order.hpp
/// Total processing time of a packet ordering: exact minimum and maximum
/// via sorting, and the swap-based search for an ordering that hits an
/// exact target value, under several pair-selection policies.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdplan/model.hpp"

namespace cdplan::tpt_order {

/// perm[t-1] is the 1-based packet sent at time moment t.
struct OrderResult {
  std::int64_t value = 0;
  std::vector<int> perm;
};

std::int64_t tpt_value(const TptInstance& inst, const std::vector<int>& perm);

OrderResult min_tpt(const TptInstance& inst);
OrderResult max_tpt(const TptInstance& inst);

enum class PolicyKind {
  BestDecrease,   // (a) largest decrease not overshooting the target
  BestAbsolute,   // (b) smallest resulting |T - target|
  FirstDecrease,  // (c) first suitable pair in traversal order
  FirstAbsolute,  // (d) first pair shrinking |T - target|
  MultiSwap,      // (e) every suitable pair found during one traversal
  RandomPair,     // independent random pairs
};

enum class OuterIndex { I, J };
enum class Order { Increasing, Decreasing, Random };

/// Traversal sub-order for FirstDecrease / FirstAbsolute / MultiSwap:
/// the outer loop runs over i or over j, each loop in a fixed or random
/// order. Ignored by the exhaustive and random-pair policies.
struct SwapPolicy {
  PolicyKind kind = PolicyKind::BestDecrease;
  OuterIndex outer = OuterIndex::I;
  Order outer_order = Order::Increasing;
  Order inner_order = Order::Increasing;
};

std::string policy_name(const SwapPolicy& policy);

enum class Outcome { Found, HeuristicFailure, ProvenInfeasible };

struct SwapStats {
  std::uint64_t steps = 0;
  std::uint64_t swaps = 0;
  double elapsed_seconds = 0.0;
};

struct SwapResult {
  Outcome outcome = Outcome::HeuristicFailure;
  std::vector<int> perm;  ///< set iff outcome == Found
  SwapStats stats;
};

/// Starts from the maximum-TPT ordering and swaps packet pairs until the
/// running value T equals inst.target. Targets outside [min_tpt, max_tpt]
/// are proven infeasible; otherwise a failed search is only a heuristic
/// failure. Deterministic given (instance, policy, seed).
SwapResult swap_and_decrease(const TptInstance& inst, const SwapPolicy& policy,
                             std::uint64_t seed = 0);

struct BenchmarkRow {
  std::string policy;
  std::uint64_t instances = 0;
  std::uint64_t found = 0;
  std::uint64_t heuristic_failure = 0;
  std::uint64_t proven_infeasible = 0;
  std::uint64_t steps = 0;
  std::uint64_t swaps = 0;
  double elapsed_seconds = 0.0;
};

/// Runs every policy over every instance; one row per policy. Instances
/// without a target are skipped.
std::vector<BenchmarkRow> policy_benchmark(
    const std::vector<TptInstance>& instances,
    const std::vector<SwapPolicy>& policies, std::uint64_t seed = 0);

/// The policy set used for comparisons: (a), (b), all 18 sub-orders of
/// (c) and (d), (e) in both row-major variants, and random pairs.
std::vector<SwapPolicy> standard_policies();

}  // namespace cdplan::tpt_order
