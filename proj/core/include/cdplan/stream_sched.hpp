/// \file stream_sched.hpp
/// Minimum-makespan scheduling of m identical packets over n parallel
/// streams with per-stream send capacities and cooldowns: two exact DP
/// formulations, a greedy baseline with both tie-breaks, a rolling-window
/// memory mode, and the full scenario sweep.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cdplan/model.hpp"

namespace cdplan::stream_sched {

/// DP state space exceeds the configured bound.
class StateSpaceError : public std::runtime_error {
 public:
  explicit StateSpaceError(const std::string& what) : std::runtime_error(what) {}
};

enum class Formulation { Waits, History, Auto };
enum class MemoryMode { Full, Rolling };
enum class GreedyTie { SmallestB, LargestB };

struct ScheduleResult {
  int makespan = 0;
  std::vector<int> actions;  ///< per time unit: stream index, or -1 for idle
  std::uint64_t state_count = 0;  ///< per-packet-count layer size
};

/// First DP formulation: state (k, t_1..t_n) of remaining waits.
ScheduleResult dp_waits(const StreamSystem& sys,
                        MemoryMode memory = MemoryMode::Full);

/// Second DP formulation: state (k, c_0..c_{BM-1}) of recently used streams.
ScheduleResult dp_history(const StreamSystem& sys,
                          MemoryMode memory = MemoryMode::Full);

/// Dispatches to the formulation with the smaller state space (Auto).
ScheduleResult solve(const StreamSystem& sys,
                     Formulation formulation = Formulation::Auto,
                     MemoryMode memory = MemoryMode::Full);

/// Available stream with the largest A_i; ties by smallest (largest) B_i,
/// then by index. Idles one unit when no stream is available.
ScheduleResult greedy(const StreamSystem& sys, GreedyTie tie);

/// Sizes of the per-k state layers of both formulations.
std::uint64_t waits_layer_size(const StreamSystem& sys);
std::uint64_t history_layer_size(const StreamSystem& sys);

/// Replays an action list; throws ValidationError if it violates a
/// cooldown or sends fewer than m packets.
void validate_actions(const StreamSystem& sys, const std::vector<int>& actions);

struct SweepSummary {
  std::uint64_t total = 0;
  std::uint64_t dp_better_smallest = 0;
  std::uint64_t tie_smallest = 0;
  std::uint64_t dp_better_largest = 0;
  std::uint64_t tie_largest = 0;
  std::uint64_t dp_worse = 0;  ///< must stay 0: DP is exact
};

struct SweepConfig {
  int a_max = 7;
  int b_max = 4;
  int n = 3;
  int m = 100;
  int jobs = 1;
};

/// DP-vs-greedy comparison over the cross-product of per-stream (A, B)
/// values; (a_max * (b_max + 1))^n scenarios.
SweepSummary sweep(const SweepConfig& config = {});

}  // namespace cdplan::stream_sched
