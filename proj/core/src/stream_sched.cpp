#include "cdplan/stream_sched.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

namespace cdplan::stream_sched {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 2;
constexpr std::uint64_t kMaxLayerStates = 1ull << 22;
constexpr std::uint64_t kMaxTableEntries = 1ull << 27;

// One outgoing transition of a DP state. Transitions depend only on the
// within-layer index, never on the packet count, so they are precomputed
// once per instance. gain == 0 is the do-nothing step.
struct Transition {
  int action;  // stream index, or -1 for do-nothing
  std::uint32_t next;
  int gain;
};

using TransitionTable = std::vector<std::vector<Transition>>;

void check_layer(std::uint64_t s, const char* which) {
  if (s > kMaxLayerStates)
    throw StateSpaceError(std::string(which) + " state layer has " +
                          std::to_string(s) + " states (limit " +
                          std::to_string(kMaxLayerStates) + ")");
}

// State (t_1..t_n): remaining wait of every stream, t_i in 0..B_i.
// Big-endian mixed-radix encoding, so numeric index order is
// lexicographic order of the tuples.
TransitionTable waits_transitions(const StreamSystem& sys, std::uint64_t s) {
  const int n = sys.n;
  std::vector<std::uint64_t> weight(n, 1);
  for (int i = n - 2; i >= 0; --i)
    weight[i] = weight[i + 1] * (sys.cooldown[i + 1] + 1);

  TransitionTable trans(s);
  std::vector<int> t(n);
  for (std::uint64_t idx = 0; idx < s; ++idx) {
    std::uint64_t rest = idx;
    for (int i = 0; i < n; ++i) {
      t[i] = static_cast<int>(rest / weight[i]);
      rest %= weight[i];
    }
    std::uint64_t ticked = 0;
    for (int i = 0; i < n; ++i)
      if (t[i] > 0) ticked += static_cast<std::uint64_t>(t[i] - 1) * weight[i];
    if (idx != 0)
      trans[idx].push_back({-1, static_cast<std::uint32_t>(ticked), 0});
    for (int i = 0; i < n; ++i) {
      if (t[i] != 0) continue;
      std::uint64_t next =
          ticked + static_cast<std::uint64_t>(sys.cooldown[i]) * weight[i];
      trans[idx].push_back(
          {i, static_cast<std::uint32_t>(next), sys.send_cap[i]});
    }
  }
  return trans;
}

// State (c_0..c_{BM-1}): the streams used in the last BM time units,
// most recent first; digit 0 means idle, i+1 means stream i. Base n+1,
// c_0 most significant, so index order is again lexicographic.
TransitionTable history_transitions(const StreamSystem& sys, std::uint64_t s) {
  const int n = sys.n;
  const int bm = sys.max_cooldown();
  const std::uint64_t base = static_cast<std::uint64_t>(n) + 1;
  const std::uint64_t top = bm > 0 ? s / base : 1;  // weight of c_0

  TransitionTable trans(s);
  std::vector<int> last_used(n + 1);
  for (std::uint64_t idx = 0; idx < s; ++idx) {
    std::fill(last_used.begin(), last_used.end(), bm);
    std::uint64_t rest = idx;
    std::uint64_t w = top;
    for (int j = 0; j < bm; ++j) {
      int d = static_cast<int>(rest / w);
      rest %= w;
      w = w / base > 0 ? w / base : 1;
      if (d > 0 && last_used[d] == bm) last_used[d] = j;
    }
    std::uint64_t shifted = idx / base;
    if (idx != 0)
      trans[idx].push_back({-1, static_cast<std::uint32_t>(shifted), 0});
    for (int i = 0; i < n; ++i) {
      if (last_used[i + 1] < sys.cooldown[i]) continue;
      // with an empty history (BM == 0) there is nothing to record
      std::uint64_t next =
          bm > 0 ? static_cast<std::uint64_t>(i + 1) * top + shifted : 0;
      trans[idx].push_back(
          {i, static_cast<std::uint32_t>(next), sys.send_cap[i]});
    }
  }
  return trans;
}

// Full-memory run: keeps every layer plus predecessor links, traces the
// optimal action sequence back from the best final state.
ScheduleResult run_full(int m, std::uint64_t s, const TransitionTable& trans) {
  ScheduleResult result;
  result.state_count = s;
  if (m == 0) return result;

  const std::uint64_t total = (static_cast<std::uint64_t>(m) + 1) * s;
  if (total > kMaxTableEntries)
    throw StateSpaceError("DP table has " + std::to_string(total) +
                          " entries (limit " +
                          std::to_string(kMaxTableEntries) + ")");

  std::vector<int> value(total, kInf);
  std::vector<std::uint32_t> pred_idx(total, 0);
  std::vector<int> pred_k(total, -1);
  std::vector<int> pred_act(total, -1);
  value[0] = 0;

  for (int k = 0; k < m; ++k) {
    const std::uint64_t row = static_cast<std::uint64_t>(k) * s;
    for (std::uint64_t idx = s; idx-- > 0;) {
      const int v = value[row + idx];
      if (v >= kInf) continue;
      for (const Transition& tr : trans[idx]) {
        const int k2 = std::min(k + tr.gain, m);
        const std::uint64_t pos = static_cast<std::uint64_t>(k2) * s + tr.next;
        if (v + 1 < value[pos]) {
          value[pos] = v + 1;
          pred_idx[pos] = static_cast<std::uint32_t>(idx);
          pred_k[pos] = k;
          pred_act[pos] = tr.action;
        }
      }
    }
  }

  const std::uint64_t last = static_cast<std::uint64_t>(m) * s;
  std::uint64_t best = 0;
  for (std::uint64_t idx = 1; idx < s; ++idx)
    if (value[last + idx] < value[last + best]) best = idx;
  if (value[last + best] >= kInf)
    throw std::logic_error("stream DP: no final state reached");

  result.makespan = value[last + best];
  int k = m;
  std::uint64_t idx = best;
  while (!(k == 0 && idx == 0)) {
    const std::uint64_t pos = static_cast<std::uint64_t>(k) * s + idx;
    result.actions.push_back(pred_act[pos]);
    const int pk = pred_k[pos];
    idx = pred_idx[pos];
    k = pk;
  }
  std::reverse(result.actions.begin(), result.actions.end());
  return result;
}

struct Pred {
  int k;
  std::uint64_t idx;
  int action;
};

struct Target {
  int k;
  std::uint64_t idx;
  int value;
};

// One rolling-window forward pass over max_gain + 1 layer slabs. When a
// target state is given, stops after its layer is complete and reports
// the first optimal predecessor pushed into it.
struct RollingPass {
  int final_value = kInf;
  std::uint64_t final_idx = 0;
  std::optional<Pred> pred;
};

RollingPass run_rolling_pass(int m, std::uint64_t s,
                             const TransitionTable& trans, int max_gain,
                             const std::optional<Target>& target) {
  const int w = max_gain + 1;
  const std::uint64_t slab_total = static_cast<std::uint64_t>(w) * s;
  if (slab_total > kMaxTableEntries)
    throw StateSpaceError("rolling DP window has " +
                          std::to_string(slab_total) + " entries (limit " +
                          std::to_string(kMaxTableEntries) + ")");

  std::vector<int> value(slab_total, kInf);
  value[0] = 0;

  RollingPass pass;
  // A predecessor can sit in the target's own layer (a do-nothing step),
  // so that layer must be expanded too.
  const int stop_k = target ? std::min(target->k + 1, m) : m;
  for (int k = 0; k < stop_k; ++k) {
    const std::uint64_t row = static_cast<std::uint64_t>(k % w) * s;
    for (std::uint64_t idx = s; idx-- > 0;) {
      const int v = value[row + idx];
      if (v >= kInf) continue;
      for (const Transition& tr : trans[idx]) {
        const int k2 = std::min(k + tr.gain, m);
        const std::uint64_t pos = static_cast<std::uint64_t>(k2 % w) * s + tr.next;
        if (target && !pass.pred && k2 == target->k && tr.next == target->idx &&
            v + 1 == target->value)
          pass.pred = Pred{k, idx, tr.action};
        if (v + 1 < value[pos]) value[pos] = v + 1;
      }
    }
    if (k + w <= m)
      std::fill(value.begin() + row, value.begin() + row + s, kInf);
  }

  if (!target) {
    const std::uint64_t row = static_cast<std::uint64_t>(m % w) * s;
    for (std::uint64_t idx = 0; idx < s; ++idx)
      if (value[row + idx] < pass.final_value) {
        pass.final_value = value[row + idx];
        pass.final_idx = idx;
      }
  }
  return pass;
}

// Rolling memory keeps no predecessor links; the action sequence is
// rebuilt by repeated truncated forward passes, one per time unit.
ScheduleResult run_rolling(int m, std::uint64_t s, const TransitionTable& trans,
                           int max_gain) {
  ScheduleResult result;
  result.state_count = s;
  if (m == 0) return result;

  RollingPass full = run_rolling_pass(m, s, trans, max_gain, std::nullopt);
  if (full.final_value >= kInf)
    throw std::logic_error("stream DP: no final state reached");
  result.makespan = full.final_value;

  int k = m;
  std::uint64_t idx = full.final_idx;
  int v = full.final_value;
  while (!(k == 0 && idx == 0)) {
    RollingPass pass =
        run_rolling_pass(m, s, trans, max_gain, Target{k, idx, v});
    if (!pass.pred)
      throw std::logic_error("stream DP: rolling traceback lost the chain");
    result.actions.push_back(pass.pred->action);
    k = pass.pred->k;
    idx = pass.pred->idx;
    --v;
  }
  std::reverse(result.actions.begin(), result.actions.end());
  return result;
}

ScheduleResult run(const StreamSystem& sys, Formulation formulation,
                   MemoryMode memory) {
  sys.validate();
  std::uint64_t s;
  TransitionTable trans;
  if (formulation == Formulation::Waits) {
    s = waits_layer_size(sys);
    check_layer(s, "waits");
    trans = waits_transitions(sys, s);
  } else {
    s = history_layer_size(sys);
    check_layer(s, "history");
    trans = history_transitions(sys, s);
  }
  if (memory == MemoryMode::Full) return run_full(sys.m, s, trans);
  return run_rolling(sys.m, s, trans, sys.max_send_cap());
}

}  // namespace

std::uint64_t waits_layer_size(const StreamSystem& sys) {
  std::uint64_t s = 1;
  for (int b : sys.cooldown) {
    s *= static_cast<std::uint64_t>(b) + 1;
    if (s > kMaxLayerStates * 2) return s;  // saturate early
  }
  return s;
}

std::uint64_t history_layer_size(const StreamSystem& sys) {
  std::uint64_t s = 1;
  for (int j = 0; j < sys.max_cooldown(); ++j) {
    s *= static_cast<std::uint64_t>(sys.n) + 1;
    if (s > kMaxLayerStates * 2) return s;
  }
  return s;
}

ScheduleResult dp_waits(const StreamSystem& sys, MemoryMode memory) {
  return run(sys, Formulation::Waits, memory);
}

ScheduleResult dp_history(const StreamSystem& sys, MemoryMode memory) {
  return run(sys, Formulation::History, memory);
}

ScheduleResult solve(const StreamSystem& sys, Formulation formulation,
                     MemoryMode memory) {
  if (formulation == Formulation::Auto)
    formulation = waits_layer_size(sys) <= history_layer_size(sys)
                      ? Formulation::Waits
                      : Formulation::History;
  return run(sys, formulation, memory);
}

ScheduleResult greedy(const StreamSystem& sys, GreedyTie tie) {
  sys.validate();
  ScheduleResult result;
  result.state_count = 0;
  std::vector<int> wait(sys.n, 0);
  int sent = 0;
  while (sent < sys.m) {
    int best = -1;
    for (int i = 0; i < sys.n; ++i) {
      if (wait[i] != 0) continue;
      if (best < 0) {
        best = i;
        continue;
      }
      if (sys.send_cap[i] != sys.send_cap[best]) {
        if (sys.send_cap[i] > sys.send_cap[best]) best = i;
      } else if (sys.cooldown[i] != sys.cooldown[best]) {
        const bool better = tie == GreedyTie::SmallestB
                                ? sys.cooldown[i] < sys.cooldown[best]
                                : sys.cooldown[i] > sys.cooldown[best];
        if (better) best = i;
      }
    }
    if (best >= 0) {
      sent = std::min(sent + sys.send_cap[best], sys.m);
      wait[best] = sys.cooldown[best] + 1;
    }
    result.actions.push_back(best);
    for (int& t : wait)
      if (t > 0) --t;
  }
  result.makespan = static_cast<int>(result.actions.size());
  return result;
}

void validate_actions(const StreamSystem& sys, const std::vector<int>& actions) {
  sys.validate();
  std::vector<int> wait(sys.n, 0);
  int sent = 0;
  for (std::size_t step = 0; step < actions.size(); ++step) {
    const int a = actions[step];
    if (a != -1) {
      if (a < 0 || a >= sys.n)
        throw ValidationError("action at time " + std::to_string(step) +
                              " names stream " + std::to_string(a));
      if (wait[a] != 0)
        throw ValidationError("stream " + std::to_string(a) +
                              " reused during cooldown at time " +
                              std::to_string(step));
      sent = std::min(sent + sys.send_cap[a], sys.m);
      wait[a] = sys.cooldown[a] + 1;
    }
    for (int& t : wait)
      if (t > 0) --t;
  }
  if (sent < sys.m)
    throw ValidationError("schedule delivers " + std::to_string(sent) +
                          " of " + std::to_string(sys.m) + " packets");
}

SweepSummary sweep(const SweepConfig& config) {
  if (config.a_max < 1 || config.b_max < 0 || config.n < 1 || config.m < 0)
    throw ValidationError("sweep: bad parameter ranges");
  const std::uint64_t combos =
      static_cast<std::uint64_t>(config.a_max) * (config.b_max + 1);
  std::uint64_t total = 1;
  for (int i = 0; i < config.n; ++i) {
    if (total > (1ull << 40) / combos)
      throw StateSpaceError("sweep: scenario count overflows the budget");
    total *= combos;
  }

  const int jobs = std::max(1, config.jobs);
  std::vector<SweepSummary> partial(jobs);
  auto worker = [&](int job) {
    SweepSummary& out = partial[job];
    const std::uint64_t lo = total * job / jobs;
    const std::uint64_t hi = total * (job + 1) / jobs;
    StreamSystem sys;
    sys.n = config.n;
    sys.m = config.m;
    sys.send_cap.resize(config.n);
    sys.cooldown.resize(config.n);
    for (std::uint64_t scenario = lo; scenario < hi; ++scenario) {
      std::uint64_t rest = scenario;
      for (int i = 0; i < config.n; ++i) {
        const int c = static_cast<int>(rest % combos);
        rest /= combos;
        sys.send_cap[i] = c / (config.b_max + 1) + 1;
        sys.cooldown[i] = c % (config.b_max + 1);
      }
      const int dp = solve(sys).makespan;
      const int g1 = greedy(sys, GreedyTie::SmallestB).makespan;
      const int g2 = greedy(sys, GreedyTie::LargestB).makespan;
      out.total += 1;
      if (dp < g1)
        out.dp_better_smallest += 1;
      else if (dp == g1)
        out.tie_smallest += 1;
      else
        out.dp_worse += 1;
      if (dp < g2)
        out.dp_better_largest += 1;
      else if (dp == g2)
        out.tie_largest += 1;
      else
        out.dp_worse += 1;
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int j = 0; j < jobs; ++j) threads.emplace_back(worker, j);
    for (auto& t : threads) t.join();
  }

  SweepSummary summary;
  for (const SweepSummary& p : partial) {
    summary.total += p.total;
    summary.dp_better_smallest += p.dp_better_smallest;
    summary.tie_smallest += p.tie_smallest;
    summary.dp_better_largest += p.dp_better_largest;
    summary.tie_largest += p.tie_largest;
    summary.dp_worse += p.dp_worse;
  }
  return summary;
}

}  // namespace cdplan::stream_sched
