#include "cdplan/verify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cdplan/bottleneck.hpp"
#include "cdplan/freq_multicast.hpp"
#include "cdplan/generators.hpp"
#include "cdplan/oracles.hpp"
#include "cdplan/reorder.hpp"
#include "cdplan/resource_path.hpp"
#include "cdplan/stream_sched.hpp"
#include "cdplan/tpt_order.hpp"
#include "cdplan/tree_broadcast.hpp"

namespace cdplan::verify {

namespace {

constexpr double kEps = 1e-9;

void record(Report& report, const std::string& what, const AnyInstance& inst) {
  report.mismatches += 1;
  if (!report.first_failure.empty()) return;
  std::ostringstream out;
  out << what << "\ninstance: " << instance_to_json(inst).dump();
  report.first_failure = out.str();
}

int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::string opt_str(const std::optional<double>& v) {
  return v ? std::to_string(*v) : std::string("infeasible");
}

std::string opt_str(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string("infeasible");
}

}  // namespace

Report broadcast(int count, std::uint64_t seed, int max_n) {
  Report report;
  report.suite = "broadcast";
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  for (int it = 0; it < count; ++it) {
    const int n = uniform(rng, 1, max_n);
    RootedTree tree = gen::random_tree(n, rng);
    report.total += 1;
    const auto sol = tree_broadcast::solve(tree);
    const int want = oracles::min_broadcast_time(tree);
    if (sol.t_opt != want) {
      record(report,
             "broadcast time: planner " + std::to_string(sol.t_opt) +
                 ", oracle " + std::to_string(want),
             tree);
      continue;
    }
    const ScheduleCheck check = validate_broadcast_schedule(tree, sol.schedule);
    if (!check.ok) record(report, "invalid schedule: " + check.message, tree);
    else if (static_cast<int>(sol.schedule.rounds.size()) != sol.t_opt && n > 1)
      record(report, "schedule rounds do not match the optimum", tree);
  }
  return report;
}

Report multicast(int count, std::uint64_t seed, int max_n, int max_k) {
  Report report;
  report.suite = "multicast";
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  for (int it = 0; it < count; ++it) {
    const int n = uniform(rng, 2, max_n);
    const int k = uniform(rng, 1, max_k);
    FreqInstance inst = gen::random_freq(n, k, it % 2 == 1, 3, rng);
    const Vertex src = uniform(rng, 0, n - 1);
    report.total += 1;

    const auto fixed = freq_multicast::solve_fixed_root(inst, src);
    const double want = oracles::multicast_min_cost(inst, src);
    if (fixed.cost != want) {
      record(report,
             "multicast cost from " + std::to_string(src) + ": planner " +
                 std::to_string(fixed.cost) + ", oracle " +
                 std::to_string(want),
             inst);
      continue;
    }
    if (fixed.plan) {
      const double replayed =
          freq_multicast::replay_plan_cost(inst, src, *fixed.plan);
      if (replayed != fixed.cost) {
        record(report,
               "plan replay cost " + std::to_string(replayed) +
                   " != reported " + std::to_string(fixed.cost),
               inst);
        continue;
      }
    } else if (std::isfinite(fixed.cost)) {
      record(report, "finite cost without a plan", inst);
      continue;
    }

    const auto all = freq_multicast::solve_all_roots(inst);
    bool bad = false;
    for (Vertex r = 0; r < n && !bad; ++r) {
      const double w = oracles::multicast_min_cost(inst, r);
      if (all.cost[r] != w) {
        record(report,
               "all-roots cost at " + std::to_string(r) + ": planner " +
                   std::to_string(all.cost[r]) + ", oracle " +
                   std::to_string(w),
               inst);
        bad = true;
      }
    }
  }
  return report;
}

Report streams(int count, std::uint64_t seed, int max_n, int max_m, int max_b) {
  Report report;
  report.suite = "streams";
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  for (int it = 0; it < count; ++it) {
    const int n = uniform(rng, 1, max_n);
    const int m = uniform(rng, 0, max_m);
    StreamSystem sys = gen::random_stream_system(n, m, 3, max_b, rng);
    report.total += 1;
    const int want = oracles::stream_min_makespan(sys);
    const auto waits = stream_sched::dp_waits(sys);
    const auto history = stream_sched::dp_history(sys);
    const auto rolling =
        stream_sched::dp_waits(sys, stream_sched::MemoryMode::Rolling);
    try {
      stream_sched::validate_actions(sys, waits.actions);
      stream_sched::validate_actions(sys, history.actions);
      stream_sched::validate_actions(sys, rolling.actions);
    } catch (const ValidationError& e) {
      record(report, std::string("invalid schedule: ") + e.what(), sys);
      continue;
    }
    const int g1 =
        stream_sched::greedy(sys, stream_sched::GreedyTie::SmallestB).makespan;
    const int g2 =
        stream_sched::greedy(sys, stream_sched::GreedyTie::LargestB).makespan;
    if (waits.makespan != want || history.makespan != want ||
        rolling.makespan != want)
      record(report,
             "makespan: oracle " + std::to_string(want) + ", waits " +
                 std::to_string(waits.makespan) + ", history " +
                 std::to_string(history.makespan) + ", rolling " +
                 std::to_string(rolling.makespan),
             sys);
    else if (want > g1 || want > g2)
      record(report, "DP makespan exceeds a greedy schedule", sys);
  }
  return report;
}

Report reorder(int count, std::uint64_t seed, int max_n) {
  Report report;
  report.suite = "reorder";
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  for (int it = 0; it < count; ++it) {
    const int n = uniform(rng, 1, max_n);
    const Aggregation agg = it % 2 == 0 ? Aggregation::Sum : Aggregation::Max;
    ReorderInstance inst = gen::random_reorder(n, agg, rng);
    report.total += 1;
    const auto sol = cdplan::reorder::solve(inst);
    const double want = oracles::reorder_min_cost(inst);
    if (sol.cost != want) {
      record(report,
             "reorder cost: planner " + std::to_string(sol.cost) + ", oracle " +
                 std::to_string(want),
             inst);
      continue;
    }
    try {
      const double replayed = cdplan::reorder::replay_cost(inst, sol.moves);
      if (replayed != sol.cost) {
        record(report, "move replay cost " + std::to_string(replayed) +
                           " != reported " + std::to_string(sol.cost),
               inst);
        continue;
      }
    } catch (const ValidationError& e) {
      record(report, std::string("invalid move list: ") + e.what(), inst);
      continue;
    }
    if (cdplan::reorder::solve_cost_only(inst) != sol.cost)
      record(report, "two-row cost differs from the full table", inst);
  }
  return report;
}

Report tpt(int count, std::uint64_t seed, int max_n) {
  Report report;
  report.suite = "tpt";
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  for (int it = 0; it < count; ++it) {
    const int n = uniform(rng, 1, max_n);
    TptInstance inst = gen::random_tpt(n, 9, 9, true, rng);
    report.total += 1;
    const auto lo = tpt_order::min_tpt(inst);
    const auto hi = tpt_order::max_tpt(inst);
    const auto [olo, ohi] = oracles::tpt_min_max(inst);
    if (lo.value != olo || hi.value != ohi) {
      record(report,
             "tpt range: planner [" + std::to_string(lo.value) + ", " +
                 std::to_string(hi.value) + "], oracle [" +
                 std::to_string(olo) + ", " + std::to_string(ohi) + "]",
             inst);
      continue;
    }
    if (tpt_order::tpt_value(inst, lo.perm) != lo.value ||
        tpt_order::tpt_value(inst, hi.perm) != hi.value) {
      record(report, "ordering does not realize its reported value", inst);
      continue;
    }
    const auto res = tpt_order::swap_and_decrease(
        inst, {tpt_order::PolicyKind::BestDecrease}, seed + it);
    if (res.outcome == tpt_order::Outcome::ProvenInfeasible) {
      record(report, "achievable target declared proven-infeasible", inst);
    } else if (res.outcome == tpt_order::Outcome::Found &&
               tpt_order::tpt_value(inst, res.perm) != *inst.target) {
      record(report, "found ordering misses the target", inst);
    }
  }
  return report;
}

Report resource(int count, std::uint64_t seed, int max_n, std::int64_t max_cap) {
  Report report;
  report.suite = "resource";
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  using resource_path::RechargeMode;
  for (int it = 0; it < count; ++it) {
    const int n = uniform(rng, 2, max_n);
    Digraph g = gen::random_digraph(n, uniform(rng, n - 1, 2 * n), rng);
    gen::add_rc(g, 4, rng);
    gen::add_durations(g, 3, rng);
    ResourceCatalog cat =
        gen::random_catalog(uniform(rng, 1, 3), max_cap, n, 0.5, false, rng);
    const Vertex s = uniform(rng, 0, n - 1);
    Vertex t = uniform(rng, 0, n - 2);
    if (t >= s) t += 1;
    report.total += 1;

    const auto want = oracles::resource_min_type(g, cat, s, t);
    bool bad = false;
    for (RechargeMode mode : {RechargeMode::Partial, RechargeMode::FullOnly}) {
      const auto res = resource_path::min_cost_feasible(g, cat, s, t, mode);
      if (res.type != want) {
        record(report,
               "resource type: planner " + opt_str(res.type) + ", oracle " +
                   opt_str(want),
               g);
        bad = true;
        break;
      }
      if (res.type) {
        try {
          resource_path::validate_witness(g, cat, *res.type, s, t, mode,
                                          *res.witness);
        } catch (const ValidationError& e) {
          record(report, std::string("invalid witness: ") + e.what(), g);
          bad = true;
          break;
        }
      }
      const auto counted = resource_path::expanded_edge_count(g, cat, 0, mode);
      const auto formula = resource_path::expanded_edge_formula(g, cat, 0, mode);
      if (counted.moves != formula.moves || counted.charges != formula.charges) {
        record(report, "expanded edge count disagrees with the closed form", g);
        bad = true;
        break;
      }
    }
    if (bad) continue;

    const double tmax = static_cast<double>(uniform(rng, 0, 10));
    const auto want_timed = oracles::resource_min_type(g, cat, s, t, tmax);
    const auto timed =
        resource_path::min_cost_timed(g, cat, s, t, tmax, RechargeMode::Partial);
    if (timed.type != want_timed) {
      record(report,
             "timed resource type: planner " + opt_str(timed.type) +
                 ", oracle " + opt_str(want_timed),
             g);
      continue;
    }
    if (timed.type) {
      try {
        resource_path::validate_witness(g, cat, *timed.type, s, t,
                                        RechargeMode::Partial, *timed.witness,
                                        tmax);
      } catch (const ValidationError& e) {
        record(report, std::string("invalid timed witness: ") + e.what(), g);
      }
    }
  }
  return report;
}

namespace {

// Recomputes a path witness against the graph: per hop, the cheapest
// admitted edge (capacity threshold c, profiles evaluated at arrival in
// the time-varying case). Returns the realized (bottleneck, duration).
std::optional<std::pair<double, double>> replay_path(
    const Digraph& g, const std::vector<Vertex>& path, double c,
    bool time_varying) {
  double bottleneck = std::numeric_limits<double>::infinity();
  double arrival = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    double best_dur = std::numeric_limits<double>::infinity();
    double best_cap = -1.0;
    for (const Edge& e : g.edges) {
      if (e.u != path[i] || e.v != path[i + 1]) continue;
      const double dur = *e.attrs.duration;
      const double cap = time_varying ? e.attrs.cap_profile->at(arrival + dur)
                                      : *e.attrs.cap;
      if (cap < c) continue;
      if (dur < best_dur || (dur == best_dur && cap > best_cap)) {
        best_dur = dur;
        best_cap = cap;
      }
    }
    if (best_cap < 0) return std::nullopt;
    arrival += best_dur;
    bottleneck = std::min(bottleneck, best_cap);
  }
  return std::make_pair(bottleneck, arrival);
}

}  // namespace

Report bottleneck(int count, std::uint64_t seed, int max_n) {
  Report report;
  report.suite = "bottleneck";
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  namespace bn = cdplan::bottleneck;
  for (int it = 0; it < count; ++it) {
    const int n = uniform(rng, 2, max_n);
    Digraph g = gen::random_digraph(n, uniform(rng, n - 1, 16), rng);
    gen::add_durations(g, 4, rng);
    gen::add_caps(g, 10, rng);
    const Vertex s = uniform(rng, 0, n - 1);
    Vertex d = uniform(rng, 0, n - 2);
    if (d >= s) d += 1;
    const double tmax = static_cast<double>(uniform(rng, 0, 12));
    report.total += 1;

    const auto res = bn::max_capacity_path(g, s, d, tmax);
    const auto want = oracles::bottleneck_path(g, s, d, tmax);
    const auto cap_of = [](const std::optional<bn::PathResult>& r) {
      return r ? std::optional<double>(r->capacity) : std::nullopt;
    };
    if (cap_of(res) != want) {
      record(report,
             "path capacity: planner " + opt_str(cap_of(res)) + ", oracle " +
                 opt_str(want),
             g);
      continue;
    }
    if (res) {
      const auto replay = replay_path(g, res->path, res->capacity, false);
      if (!replay || replay->first != res->capacity ||
          replay->second > tmax + kEps) {
        record(report, "path witness fails replay", g);
        continue;
      }
    }

    std::vector<Vertex> dests{d};
    if (n > 2 && it % 2 == 0) {
      Vertex extra = uniform(rng, 0, n - 1);
      if (extra != s && extra != d) dests.push_back(extra);
    }
    bool bad = false;
    for (auto [mode, omode] :
         {std::pair{bn::TreeTime::LongestPath, oracles::TreeTimeMode::LongestPath},
          std::pair{bn::TreeTime::TotalDuration,
                    oracles::TreeTimeMode::TotalDuration}}) {
      const auto tres = bn::max_capacity_tree(g, s, dests, tmax, mode);
      const auto twant = oracles::bottleneck_tree(g, s, dests, tmax, omode);
      const std::optional<double> got =
          tres ? std::optional<double>(tres->capacity) : std::nullopt;
      if (got != twant) {
        record(report,
               "tree capacity: planner " + opt_str(got) + ", oracle " +
                   opt_str(twant),
               g);
        bad = true;
        break;
      }
      if (tres && tres->duration > tmax + kEps) {
        record(report, "tree witness exceeds the duration bound", g);
        bad = true;
        break;
      }
      if (tres) {
        // every witness edge must exist with capacity >= the reported
        // one (leaf pruning in total-duration mode may leave the witness
        // bottleneck strictly above it)
        bool edges_ok = true;
        for (const auto& [u, v] : tres->edges) {
          bool found = false;
          for (const Edge& e : g.edges) {
            const bool fwd = e.u == u && e.v == v;
            const bool rev = mode == bn::TreeTime::TotalDuration && e.u == v &&
                             e.v == u;
            if ((fwd || rev) && *e.attrs.cap >= tres->capacity) {
              found = true;
              break;
            }
          }
          if (!found) {
            edges_ok = false;
            break;
          }
        }
        if (!edges_ok) {
          record(report, "tree witness uses an inadmissible edge", g);
          bad = true;
          break;
        }
      }
    }
    if (bad) continue;

    // time-varying variant; even iterations use constant profiles
    gen::add_profiles(g, 10, it % 2 == 0 ? 1 : 3, rng);
    const auto tv = bn::max_capacity_path_timevarying(g, s, d, tmax);
    const auto tv_want = oracles::bottleneck_path_timevarying(g, s, d, tmax);
    if (cap_of(tv) != tv_want) {
      record(report,
             "time-varying capacity: planner " + opt_str(cap_of(tv)) +
                 ", oracle " + opt_str(tv_want),
             g);
      continue;
    }
    if (tv) {
      const auto replay = replay_path(g, tv->path, tv->capacity, true);
      if (!replay || replay->first < tv->capacity ||
          replay->second > tmax + kEps) {
        record(report, "time-varying witness fails replay", g);
        continue;
      }
    }
    const auto tvt =
        bn::max_capacity_tree(g, s, {d}, tmax, bn::TreeTime::LongestPath, true);
    const auto tvt_want = oracles::bottleneck_tree(
        g, s, {d}, tmax, oracles::TreeTimeMode::LongestPath, true);
    const std::optional<double> tvt_got =
        tvt ? std::optional<double>(tvt->capacity) : std::nullopt;
    if (tvt_got != tvt_want)
      record(report,
             "time-varying tree capacity: planner " + opt_str(tvt_got) +
                 ", oracle " + opt_str(tvt_want),
             g);
  }
  return report;
}

}  // namespace cdplan::verify
