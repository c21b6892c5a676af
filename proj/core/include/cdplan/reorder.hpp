/// \file reorder.hpp
/// Minimum-cost reordering of an out-of-order packet buffer into a second
/// buffer that only accepts packets at its two ends, so the packets it
/// holds always form a consecutive run.
#pragma once

#include <vector>

#include "cdplan/model.hpp"

namespace cdplan::reorder {

/// One reordering step: packet removed from the receiving buffer at the
/// given 1-based position and appended at the front or back of the
/// application buffer. The step number is the 1-based index in the list.
struct Move {
  int packet = 0;
  int position = 0;
  bool front = false;
};

struct Solution {
  double cost = 0.0;
  std::vector<Move> moves;
};

/// Which option wins when front and back have equal aggregate cost.
enum class TiePreference { Back, Front };

/// Full-table dynamic program with traceback.
Solution solve(const ReorderInstance& inst,
               TiePreference tie = TiePreference::Back);

/// Two-row variant: same optimum, O(n) memory, no move list.
double solve_cost_only(const ReorderInstance& inst);

/// Packet position tables: pa[i][j] is the position of packet j in the
/// receiving buffer after removing packets j+1..j+i, pb[i][j] after
/// removing packets j-i..j-1. Row 0 is the arrival position. Exposed for
/// testing; entries with out-of-range removal intervals repeat row i-1.
std::vector<std::vector<int>> pa_table(const ReorderInstance& inst);
std::vector<std::vector<int>> pb_table(const ReorderInstance& inst);

/// Replays a move list against real buffers, validating positions and
/// the final order; returns the aggregate cost.
double replay_cost(const ReorderInstance& inst, const std::vector<Move>& moves);

}  // namespace cdplan::reorder
