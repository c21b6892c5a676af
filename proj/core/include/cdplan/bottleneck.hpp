/// \file bottleneck.hpp
/// Time-constrained maximum-capacity (bottleneck) paths and multicast
/// trees, including the variant with monotonically non-increasing
/// time-varying edge capacities. The outer search runs over the finite
/// candidate capacity set (exact) or an epsilon-terminated interval.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cdplan/model.hpp"

namespace cdplan::bottleneck {

enum class TreeTime { LongestPath, TotalDuration };
enum class CapacityDomain { EdgeSet, Interval };

struct PathResult {
  double capacity = 0.0;
  double duration = 0.0;
  std::vector<Vertex> path;  ///< s..d vertex sequence
  std::uint64_t probes = 0;
};

struct TreeResult {
  double capacity = 0.0;
  /// Longest-path mode: max destination arrival. Total-duration mode: the
  /// spanning-tree duration sum that the feasibility test bounded.
  double duration = 0.0;
  /// Longest-path mode: shortest-path tree edges covering the
  /// destinations. Total-duration mode: the spanning tree with leaves
  /// outside s and the destinations pruned away.
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::uint64_t probes = 0;
};

/// Maximum C such that the cap >= C subgraph has an s->d path of duration
/// <= tmax; nullopt when no path meets tmax at any capacity. EdgeSet mode
/// searches the sorted distinct edge capacities exactly; Interval mode
/// bisects [0, max cap] down to eps. Equal-capacity witnesses break ties
/// by minimal duration, then lexicographically smallest vertex sequence.
std::optional<PathResult> max_capacity_path(
    const Digraph& g, Vertex s, Vertex d, double tmax,
    CapacityDomain domain = CapacityDomain::EdgeSet, double eps = 1e-6);

/// Time-varying variant: an edge is admitted when its capacity profile,
/// evaluated at the minimal-arrival traversal-completion time, is >= C.
/// Candidates are the union of all profile values plus 0.
std::optional<PathResult> max_capacity_path_timevarying(
    const Digraph& g, Vertex s, Vertex d, double tmax,
    CapacityDomain domain = CapacityDomain::EdgeSet, double eps = 1e-6);

/// Maximum tree capacity for a multicast from s to all of dests.
/// LongestPath bounds the maximum destination arrival (Dijkstra);
/// TotalDuration bounds the duration sum of a minimum spanning tree of
/// s's component in the undirected surviving subgraph, and requires every
/// destination inside that component. time_varying is only supported with
/// LongestPath.
std::optional<TreeResult> max_capacity_tree(const Digraph& g, Vertex s,
                                            const std::vector<Vertex>& dests,
                                            double tmax, TreeTime mode,
                                            bool time_varying = false);

}  // namespace cdplan::bottleneck
