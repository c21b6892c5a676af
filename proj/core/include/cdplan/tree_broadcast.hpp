/// \file tree_broadcast.hpp
/// Minimum broadcast time and an optimal schedule in a directed rooted tree
/// under the single-port, vertex-disjoint line model.
#pragma once

#include <cstdint>
#include <vector>

#include "cdplan/model.hpp"

namespace cdplan::tree_broadcast {

enum class SearchMode { Linear, Binary };

/// Optimal broadcast strategy for one subtree root: tmin[step] is the
/// remaining broadcast time after `step` sends, snd[i] the receiver of
/// send i+1. tmin is strictly decreasing with tmin[nsteps] == 0.
struct SubtreeStrategy {
  std::vector<int> tmin;
  std::vector<Vertex> snd;

  int nsteps() const { return static_cast<int>(snd.size()); }
};

/// Per-child replay position used by the greedy feasibility check.
struct ChildCursor {
  Vertex child = 0;
  int state = 0;
  bool done = false;
};

struct FeasibleResult {
  bool feasible = false;
  std::vector<Vertex> sends;  ///< receivers, in send order
};

struct Solution {
  int t_opt = 0;
  BroadcastSchedule schedule;
  std::vector<SubtreeStrategy> per_vertex;
  std::uint64_t ops = 0;  ///< elementary-operation counter
};

/// Greedy check that the message can be broadcast from u within t_cand time
/// units, starting from the given (already replayed) child cursors.
/// Children's strategies must already be computed.
FeasibleResult feasible(const std::vector<SubtreeStrategy>& strategies,
                        int t_cand, const std::vector<ChildCursor>& cursors,
                        std::uint64_t* ops = nullptr);

/// Minimal feasible candidate time from the given cursors, searched in
/// [lower, upper].
int search_tmin(const std::vector<SubtreeStrategy>& strategies,
                const std::vector<ChildCursor>& cursors, int lower, int upper,
                SearchMode mode, std::uint64_t* ops = nullptr);

Solution solve(const RootedTree& tree, SearchMode mode = SearchMode::Linear);

}  // namespace cdplan::tree_broadcast
