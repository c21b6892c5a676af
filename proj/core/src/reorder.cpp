#include "cdplan/reorder.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace cdplan::reorder {

namespace {

double aggregate(Aggregation agg, double acc, double move_cost) {
  return agg == Aggregation::Sum ? acc + move_cost : std::max(acc, move_cost);
}

// Arrival positions: pos0[j] is the 1-based position of packet j in the
// receiving buffer before any step.
std::vector<int> arrival_positions(const ReorderInstance& inst) {
  std::vector<int> pos0(inst.n + 1, 0);
  for (int idx = 0; idx < inst.n; ++idx) pos0[inst.arrival[idx]] = idx + 1;
  return pos0;
}

void advance_pa_row(const std::vector<int>& pos0, int n, int i,
                    std::vector<int>& row) {
  // row holds pA(i-1, *) on entry, pA(i, *) on exit
  for (int j = 1; j <= n; ++j)
    if (j + i <= n && pos0[j + i] < pos0[j]) row[j] -= 1;
}

void advance_pb_row(const std::vector<int>& pos0, int n, int i,
                    std::vector<int>& row) {
  for (int j = 1; j <= n; ++j)
    if (j - i >= 1 && pos0[j - i] < pos0[j]) row[j] -= 1;
}

}  // namespace

std::vector<std::vector<int>> pa_table(const ReorderInstance& inst) {
  inst.validate();
  const int n = inst.n;
  std::vector<int> pos0 = arrival_positions(inst);
  std::vector<std::vector<int>> pa(n, std::vector<int>(n + 1, 0));
  for (int j = 1; j <= n; ++j) pa[0][j] = pos0[j];
  for (int i = 1; i < n; ++i) {
    pa[i] = pa[i - 1];
    advance_pa_row(pos0, n, i, pa[i]);
  }
  return pa;
}

std::vector<std::vector<int>> pb_table(const ReorderInstance& inst) {
  inst.validate();
  const int n = inst.n;
  std::vector<int> pos0 = arrival_positions(inst);
  std::vector<std::vector<int>> pb(n, std::vector<int>(n + 1, 0));
  for (int j = 1; j <= n; ++j) pb[0][j] = pos0[j];
  for (int i = 1; i < n; ++i) {
    pb[i] = pb[i - 1];
    advance_pb_row(pos0, n, i, pb[i]);
  }
  return pb;
}

Solution solve(const ReorderInstance& inst, TiePreference tie) {
  inst.validate();
  const int n = inst.n;
  std::vector<std::vector<int>> pa = pa_table(inst);
  std::vector<std::vector<int>> pb = pb_table(inst);

  // cmin[i][j]: minimum aggregate cost of holding packets j..j+i-1 in the
  // application buffer after i steps. choice_front[i][j] records the
  // winning option for the traceback.
  std::vector<std::vector<double>> cmin(n + 1, std::vector<double>(n + 2, 0.0));
  std::vector<std::vector<bool>> choice_front(n + 1,
                                              std::vector<bool>(n + 2, false));
  for (int j = 1; j <= n; ++j) cmin[1][j] = inst.cost_at(1, pa[0][j]);
  for (int i = 2; i <= n; ++i) {
    for (int j = 1; j <= n - i + 1; ++j) {
      const double front =
          aggregate(inst.agg, cmin[i - 1][j + 1], inst.cost_at(i, pa[i - 1][j]));
      const double back = aggregate(inst.agg, cmin[i - 1][j],
                                    inst.cost_at(i, pb[i - 1][j + i - 1]));
      bool take_front;
      if (front != back)
        take_front = front < back;
      else
        take_front = tie == TiePreference::Front;
      cmin[i][j] = take_front ? front : back;
      choice_front[i][j] = take_front;
    }
  }

  Solution sol;
  sol.cost = cmin[n][1];
  sol.moves.resize(n);
  int j = 1;
  for (int i = n; i >= 2; --i) {
    if (choice_front[i][j]) {
      sol.moves[i - 1] = Move{j, pa[i - 1][j], true};
      j += 1;
    } else {
      sol.moves[i - 1] = Move{j + i - 1, pb[i - 1][j + i - 1], false};
    }
  }
  sol.moves[0] = Move{j, pa[0][j], true};  // first packet: both ends coincide
  return sol;
}

double solve_cost_only(const ReorderInstance& inst) {
  inst.validate();
  const int n = inst.n;
  std::vector<int> pos0 = arrival_positions(inst);
  std::vector<int> pa(n + 1, 0);
  std::vector<int> pb(n + 1, 0);
  for (int j = 1; j <= n; ++j) pa[j] = pb[j] = pos0[j];

  std::vector<double> prev(n + 2, 0.0);
  std::vector<double> cur(n + 2, 0.0);
  for (int j = 1; j <= n; ++j) prev[j] = inst.cost_at(1, pa[j]);
  for (int i = 2; i <= n; ++i) {
    advance_pa_row(pos0, n, i - 1, pa);  // pa, pb now hold row i-1
    advance_pb_row(pos0, n, i - 1, pb);
    for (int j = 1; j <= n - i + 1; ++j) {
      const double front = aggregate(inst.agg, prev[j + 1], inst.cost_at(i, pa[j]));
      const double back =
          aggregate(inst.agg, prev[j], inst.cost_at(i, pb[j + i - 1]));
      cur[j] = std::min(front, back);
    }
    std::swap(prev, cur);
  }
  return prev[1];
}

double replay_cost(const ReorderInstance& inst, const std::vector<Move>& moves) {
  inst.validate();
  const int n = inst.n;
  if (static_cast<int>(moves.size()) != n)
    throw ValidationError("replay: expected " + std::to_string(n) + " moves");
  std::deque<int> b1(inst.arrival.begin(), inst.arrival.end());
  double cost = 0.0;
  int lo = 0, hi = 0;  // consecutive run currently in the application buffer
  for (int i = 1; i <= n; ++i) {
    const Move& mv = moves[i - 1];
    auto it = std::find(b1.begin(), b1.end(), mv.packet);
    if (it == b1.end())
      throw ValidationError("replay: packet " + std::to_string(mv.packet) +
                            " moved twice");
    const int pos = static_cast<int>(it - b1.begin()) + 1;
    if (pos != mv.position)
      throw ValidationError("replay: step " + std::to_string(i) + " claims position " +
                            std::to_string(mv.position) + ", packet is at " +
                            std::to_string(pos));
    cost = i == 1 ? inst.cost_at(1, pos) : aggregate(inst.agg, cost, inst.cost_at(i, pos));
    b1.erase(it);
    if (i == 1) {
      lo = hi = mv.packet;
    } else if (mv.front && mv.packet == lo - 1) {
      lo -= 1;
    } else if (!mv.front && mv.packet == hi + 1) {
      hi += 1;
    } else {
      throw ValidationError("replay: step " + std::to_string(i) +
                            " breaks the consecutive run");
    }
  }
  if (lo != 1 || hi != n)
    throw ValidationError("replay: final buffer is not 1..n");
  return cost;
}

}  // namespace cdplan::reorder
