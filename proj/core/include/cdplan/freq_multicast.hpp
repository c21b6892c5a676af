/// \file freq_multicast.hpp
/// Minimum frequency-conversion-cost multicast from a source to all leaves
/// of a tree, in the per-frequency cost model and the conversion-matrix
/// model, plus the all-roots rerooting computation.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "cdplan/model.hpp"

namespace cdplan::freq_multicast {

constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

/// DP tables for one vertex. Per-frequency model fills cmin_true /
/// cmin_false / cbest; matrix model fills cmin (fin x fout) / cbest_in.
struct NodeTable {
  std::vector<double> cmin_true;
  std::vector<double> cmin_false;
  double cbest = kInfiniteCost;
  std::vector<std::vector<double>> cmin;
  std::vector<double> cbest_in;
};

/// Forwarding assignment: sent_freq[v] is the frequency v forwards to its
/// sons (0 for leaves), recv_freq[v] the frequency v receives on (for the
/// source in the matrix model, its free incoming frequency).
struct Plan {
  std::vector<int> sent_freq;
  std::vector<int> recv_freq;
};

struct FixedRootResult {
  double cost = kInfiniteCost;
  std::optional<Plan> plan;
  std::vector<NodeTable> tables;
  std::uint64_t ops = 0;
};

struct AllRootsResult {
  std::vector<double> cost;  ///< per candidate source
  std::uint64_t ops = 0;
};

/// Minimum multicast cost from src; infeasible instances report infinite
/// cost and no plan. Dispatches on the instance's cost model.
FixedRootResult solve_fixed_root(const FreqInstance& inst, Vertex src);

/// Rerooting computation of solve_fixed_root(inst, u).cost for every u.
AllRootsResult solve_all_roots(const FreqInstance& inst);

/// Replays a plan: checks that every leaf receives its required frequency
/// and returns the summed conversion cost. Throws ValidationError on an
/// inconsistent plan.
double replay_plan_cost(const FreqInstance& inst, Vertex src, const Plan& plan);

}  // namespace cdplan::freq_multicast
