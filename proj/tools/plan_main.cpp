// Batch front end: one subcommand per planner, plus instance generation,
// the scenario sweep, the swap-policy benchmark, the planner-vs-oracle
// suites, and direct oracle queries. Human-readable output by default,
// JSON with --json, reports written to --out. Exit code 0 iff every check
// passed.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "cdplan/bottleneck.hpp"
#include "cdplan/freq_multicast.hpp"
#include "cdplan/generators.hpp"
#include "cdplan/model.hpp"
#include "cdplan/oracles.hpp"
#include "cdplan/reorder.hpp"
#include "cdplan/resource_path.hpp"
#include "cdplan/stream_sched.hpp"
#include "cdplan/tpt_order.hpp"
#include "cdplan/tree_broadcast.hpp"
#include "cdplan/verify.hpp"

using namespace cdplan;
using ordered_json = nlohmann::ordered_json;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  int jobs = 1;
  bool json = false;
  std::string out;
};

std::string digest(const AnyInstance& inst) {
  const std::size_t h =
      std::hash<std::string>{}(instance_to_json(inst).dump());
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

// Report skeleton with the stable field order: command echo first, then
// instance digest, payload, wall time, agreement flag (when applicable).
ordered_json make_report(const std::string& command) {
  ordered_json report;
  report["command"] = command;
  return report;
}

void emit(const GlobalOpts& g, const ordered_json& report,
          const std::string& human) {
  if (!g.out.empty()) {
    std::ofstream out(g.out);
    if (!out) throw std::runtime_error("cannot write " + g.out);
    out << report.dump(2) << "\n";
  }
  if (g.json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human;
}

std::vector<Vertex> parse_vertex_list(const std::string& s) {
  std::vector<Vertex> result;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) result.push_back(std::stoi(item));
  if (result.empty()) throw ValidationError("empty vertex list");
  return result;
}

// --- subcommand handlers ---------------------------------------------------

int run_broadcast(const GlobalOpts& g, const std::string& in,
                  const std::string& search) {
  const auto tree = load_typed_instance<RootedTree>(in);
  const auto mode = search == "binary" ? tree_broadcast::SearchMode::Binary
                                       : tree_broadcast::SearchMode::Linear;
  Stopwatch timer;
  const tree_broadcast::Solution sol = tree_broadcast::solve(tree, mode);
  const double elapsed = timer.seconds();
  const ScheduleCheck check = validate_broadcast_schedule(tree, sol.schedule);

  ordered_json report = make_report("broadcast --search " + search);
  report["instance_digest"] = digest(tree);
  report["result"]["t_opt"] = sol.t_opt;
  report["result"]["schedule"] = schedule_to_json(sol.schedule);
  report["result"]["ops"] = sol.ops;
  report["wall_time_seconds"] = elapsed;
  report["schedule_valid"] = check.ok;

  std::ostringstream human;
  human << "broadcast time: " << sol.t_opt << " rounds ("
        << tree.n << " vertices, " << search << " search, " << sol.ops
        << " ops)\n";
  for (std::size_t r = 0; r < sol.schedule.rounds.size(); ++r) {
    human << "  round " << r + 1 << ":";
    for (const Transmission& tx : sol.schedule.rounds[r])
      human << " " << tx.sender << "->" << tx.receiver;
    human << "\n";
  }
  if (!check.ok) human << "INVALID SCHEDULE: " << check.message << "\n";
  emit(g, report, human.str());
  return check.ok ? 0 : 1;
}

int run_multicast(const GlobalOpts& g, const std::string& in,
                  std::optional<int> source, bool all_roots,
                  const std::string& model) {
  const auto inst = load_typed_instance<FreqInstance>(in);
  if (!model.empty()) {
    const bool want_matrix = model == "matrix";
    if (want_matrix != inst.has_matrix())
      throw ValidationError("instance cost model does not match --model " +
                            model);
  }
  ordered_json report = make_report(all_roots ? "multicast --all-roots"
                                              : "multicast --source");
  report["instance_digest"] = digest(inst);
  std::ostringstream human;
  bool ok = true;

  Stopwatch timer;
  if (all_roots) {
    const freq_multicast::AllRootsResult all = freq_multicast::solve_all_roots(inst);
    report["result"]["cost"] = all.cost;
    report["result"]["ops"] = all.ops;
    report["wall_time_seconds"] = timer.seconds();
    human << "minimum multicast cost per source (" << all.ops << " ops):\n";
    for (Vertex v = 0; v < inst.n; ++v) {
      human << "  source " << v << ": ";
      if (all.cost[v] == freq_multicast::kInfiniteCost)
        human << "infeasible\n";
      else
        human << all.cost[v] << "\n";
    }
  } else {
    if (!source) throw ValidationError("either --source or --all-roots is required");
    const freq_multicast::FixedRootResult r =
        freq_multicast::solve_fixed_root(inst, *source);
    const double elapsed = timer.seconds();
    const bool feasible = r.cost != freq_multicast::kInfiniteCost;
    report["result"]["feasible"] = feasible;
    if (feasible) {
      report["result"]["cost"] = r.cost;
      report["result"]["sent_freq"] = r.plan->sent_freq;
      report["result"]["recv_freq"] = r.plan->recv_freq;
    }
    report["result"]["ops"] = r.ops;
    report["wall_time_seconds"] = elapsed;
    if (feasible) {
      const double replayed = freq_multicast::replay_plan_cost(inst, *source, *r.plan);
      report["plan_valid"] = replayed == r.cost;
      ok = replayed == r.cost;
      human << "minimum multicast cost from " << *source << ": " << r.cost
            << " (" << r.ops << " ops)\n  sent frequencies:";
      for (int f : r.plan->sent_freq) human << " " << f;
      human << "\n";
    } else {
      human << "infeasible: no frequency assignment satisfies every leaf\n";
    }
  }
  emit(g, report, human.str());
  return ok ? 0 : 1;
}

int run_streams(const GlobalOpts& g, const std::string& in,
                const std::string& dp, const std::string& memory) {
  const auto sys = load_typed_instance<StreamSystem>(in);
  const auto formulation = dp == "waits"     ? stream_sched::Formulation::Waits
                           : dp == "history" ? stream_sched::Formulation::History
                                             : stream_sched::Formulation::Auto;
  const auto mem = memory == "rolling" ? stream_sched::MemoryMode::Rolling
                                       : stream_sched::MemoryMode::Full;
  Stopwatch timer;
  const stream_sched::ScheduleResult r = stream_sched::solve(sys, formulation, mem);
  const double elapsed = timer.seconds();
  stream_sched::validate_actions(sys, r.actions);

  ordered_json report = make_report("streams --dp " + dp + " --memory " + memory);
  report["instance_digest"] = digest(sys);
  report["result"]["makespan"] = r.makespan;
  report["result"]["actions"] = r.actions;
  report["result"]["state_count"] = r.state_count;
  report["wall_time_seconds"] = elapsed;
  report["actions_valid"] = true;

  std::ostringstream human;
  human << "makespan: " << r.makespan << " time units (" << sys.m
        << " packets over " << sys.n << " streams, layer size "
        << r.state_count << ")\n  actions:";
  for (int a : r.actions) human << " " << (a < 0 ? std::string("-") : std::to_string(a));
  human << "\n";
  emit(g, report, human.str());
  return 0;
}

int run_streams_sweep(const GlobalOpts& g, int a_max, int b_max, int n, int m) {
  stream_sched::SweepConfig cfg;
  cfg.a_max = a_max;
  cfg.b_max = b_max;
  cfg.n = n;
  cfg.m = m;
  cfg.jobs = std::max(1, g.jobs);
  Stopwatch timer;
  const stream_sched::SweepSummary s = stream_sched::sweep(cfg);
  const double elapsed = timer.seconds();
  const bool ok = s.dp_worse == 0 &&
                  s.dp_better_smallest + s.tie_smallest == s.total &&
                  s.dp_better_largest + s.tie_largest == s.total;

  ordered_json report = make_report("streams-sweep");
  report["result"]["total"] = s.total;
  report["result"]["dp_better_smallest"] = s.dp_better_smallest;
  report["result"]["tie_smallest"] = s.tie_smallest;
  report["result"]["dp_better_largest"] = s.dp_better_largest;
  report["result"]["tie_largest"] = s.tie_largest;
  report["result"]["dp_worse"] = s.dp_worse;
  report["wall_time_seconds"] = elapsed;
  report["dp_never_worse"] = s.dp_worse == 0;

  std::ostringstream human;
  human << "sweep over " << s.total << " scenarios (n=" << n << ", m=" << m
        << ", A in 1.." << a_max << ", B in 0.." << b_max << ", "
        << cfg.jobs << " jobs, " << elapsed << "s)\n"
        << "  smallest-B tie-break: dp better " << s.dp_better_smallest
        << ", ties " << s.tie_smallest << "\n"
        << "  largest-B tie-break:  dp better " << s.dp_better_largest
        << ", ties " << s.tie_largest << "\n"
        << "  dp worse than greedy: " << s.dp_worse << "\n";
  emit(g, report, human.str());
  return ok ? 0 : 1;
}

int run_reorder(const GlobalOpts& g, const std::string& in,
                const std::string& agg, bool cost_only) {
  auto inst = load_typed_instance<ReorderInstance>(in);
  if (!agg.empty())
    inst.agg = agg == "max" ? Aggregation::Max : Aggregation::Sum;

  ordered_json report = make_report(cost_only ? "reorder --cost-only" : "reorder");
  report["instance_digest"] = digest(inst);
  std::ostringstream human;
  bool ok = true;

  Stopwatch timer;
  if (cost_only) {
    const double cost = reorder::solve_cost_only(inst);
    report["result"]["cost"] = cost;
    report["wall_time_seconds"] = timer.seconds();
    human << "minimum aggregate cost: " << cost << "\n";
  } else {
    const reorder::Solution sol = reorder::solve(inst);
    const double elapsed = timer.seconds();
    ok = reorder::replay_cost(inst, sol.moves) == sol.cost;
    report["result"]["cost"] = sol.cost;
    auto& moves = report["result"]["moves"] = ordered_json::array();
    for (const reorder::Move& mv : sol.moves)
      moves.push_back({{"packet", mv.packet},
                       {"position", mv.position},
                       {"end", mv.front ? "front" : "back"}});
    report["wall_time_seconds"] = elapsed;
    report["moves_valid"] = ok;
    human << "minimum aggregate cost: " << sol.cost << "\n";
    for (std::size_t i = 0; i < sol.moves.size(); ++i)
      human << "  step " << i + 1 << ": packet " << sol.moves[i].packet
            << " from position " << sol.moves[i].position << " to the "
            << (sol.moves[i].front ? "front" : "back") << "\n";
  }
  emit(g, report, human.str());
  return ok ? 0 : 1;
}

tpt_order::SwapPolicy policy_from_letter(const std::string& letter) {
  tpt_order::SwapPolicy policy;
  if (letter == "a")
    policy.kind = tpt_order::PolicyKind::BestDecrease;
  else if (letter == "b")
    policy.kind = tpt_order::PolicyKind::BestAbsolute;
  else if (letter == "c")
    policy.kind = tpt_order::PolicyKind::FirstDecrease;
  else if (letter == "d")
    policy.kind = tpt_order::PolicyKind::FirstAbsolute;
  else if (letter == "e")
    policy.kind = tpt_order::PolicyKind::MultiSwap;
  else if (letter == "random")
    policy.kind = tpt_order::PolicyKind::RandomPair;
  else
    throw ValidationError("unknown policy '" + letter + "'");
  return policy;
}

int run_tpt(const GlobalOpts& g, const std::string& in,
            std::optional<std::int64_t> target, const std::string& policy) {
  auto inst = load_typed_instance<TptInstance>(in);
  if (target) inst.target = *target;

  Stopwatch timer;
  const tpt_order::OrderResult lo = tpt_order::min_tpt(inst);
  const tpt_order::OrderResult hi = tpt_order::max_tpt(inst);

  ordered_json report = make_report("tpt");
  report["instance_digest"] = digest(inst);
  report["result"]["min_tpt"] = lo.value;
  report["result"]["min_perm"] = lo.perm;
  report["result"]["max_tpt"] = hi.value;
  report["result"]["max_perm"] = hi.perm;

  std::ostringstream human;
  human << "TPT range: [" << lo.value << ", " << hi.value << "] over "
        << inst.n << " packets\n";
  bool ok = true;
  if (inst.target && !policy.empty()) {
    const tpt_order::SwapResult r =
        tpt_order::swap_and_decrease(inst, policy_from_letter(policy), g.seed);
    const char* outcome = r.outcome == tpt_order::Outcome::Found
                              ? "found"
                              : r.outcome == tpt_order::Outcome::ProvenInfeasible
                                    ? "proven-infeasible"
                                    : "heuristic-failure";
    report["result"]["target"] = *inst.target;
    report["result"]["outcome"] = outcome;
    if (r.outcome == tpt_order::Outcome::Found) {
      report["result"]["perm"] = r.perm;
      ok = tpt_order::tpt_value(inst, r.perm) == *inst.target;
    }
    report["result"]["steps"] = r.stats.steps;
    report["result"]["swaps"] = r.stats.swaps;
    human << "target " << *inst.target << " via policy " << policy << ": "
          << outcome << " (" << r.stats.steps << " steps, " << r.stats.swaps
          << " swaps)\n";
    if (r.outcome == tpt_order::Outcome::Found) {
      human << "  permutation:";
      for (int p : r.perm) human << " " << p;
      human << "\n";
    }
  }
  report["wall_time_seconds"] = timer.seconds();
  emit(g, report, human.str());
  return ok ? 0 : 1;
}

int run_tpt_bench(const GlobalOpts& g, const std::string& suite_dir) {
  std::vector<TptInstance> instances;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(suite_dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files)
    instances.push_back(load_typed_instance<TptInstance>(path.string()));
  if (instances.empty())
    throw ValidationError("no .json instances in " + suite_dir);

  Stopwatch timer;
  const std::vector<tpt_order::BenchmarkRow> rows = tpt_order::policy_benchmark(
      instances, tpt_order::standard_policies(), g.seed);
  const double elapsed = timer.seconds();

  ordered_json report = make_report("tpt-bench");
  auto& jrows = report["result"] = ordered_json::array();
  std::ostringstream csv;
  csv << "policy,instances,found,heuristic_failure,proven_infeasible,steps,"
         "swaps,elapsed_seconds\n";
  std::ostringstream human;
  human << "swap-policy benchmark over " << instances.size() << " instances ("
        << elapsed << "s)\n";
  char line[160];
  std::snprintf(line, sizeof line, "  %-34s %6s %6s %6s %10s %8s\n", "policy",
                "found", "fail", "inf", "steps", "swaps");
  human << line;
  for (const tpt_order::BenchmarkRow& row : rows) {
    jrows.push_back({{"policy", row.policy},
                     {"instances", row.instances},
                     {"found", row.found},
                     {"heuristic_failure", row.heuristic_failure},
                     {"proven_infeasible", row.proven_infeasible},
                     {"steps", row.steps},
                     {"swaps", row.swaps},
                     {"elapsed_seconds", row.elapsed_seconds}});
    csv << row.policy << "," << row.instances << "," << row.found << ","
        << row.heuristic_failure << "," << row.proven_infeasible << ","
        << row.steps << "," << row.swaps << "," << row.elapsed_seconds << "\n";
    std::snprintf(line, sizeof line, "  %-34s %6llu %6llu %6llu %10llu %8llu\n",
                  row.policy.c_str(),
                  static_cast<unsigned long long>(row.found),
                  static_cast<unsigned long long>(row.heuristic_failure),
                  static_cast<unsigned long long>(row.proven_infeasible),
                  static_cast<unsigned long long>(row.steps),
                  static_cast<unsigned long long>(row.swaps));
    human << line;
  }
  report["wall_time_seconds"] = elapsed;

  // --out gets the CSV table here, not the JSON report
  if (!g.out.empty()) {
    std::ofstream out(g.out);
    if (!out) throw std::runtime_error("cannot write " + g.out);
    out << csv.str();
  }
  std::cout << (g.json ? report.dump(2) + "\n" : human.str());
  return 0;
}

ordered_json witness_to_json(const resource_path::Witness& w) {
  ordered_json j;
  auto& hops = j["hops"] = ordered_json::array();
  for (const resource_path::Hop& h : w.hops)
    hops.push_back({{"vertex", h.vertex},
                    {"remaining", h.remaining},
                    {"arrival", h.arrival}});
  j["duration"] = w.duration;
  return j;
}

int run_resource_path(const GlobalOpts& g, const std::string& in,
                      const std::string& catalog_path, Vertex s, Vertex t,
                      std::optional<double> tmax, const std::string& recharge) {
  const auto graph = load_typed_instance<Digraph>(in);
  const auto cat = load_typed_instance<ResourceCatalog>(catalog_path);
  const auto mode = recharge == "full" ? resource_path::RechargeMode::FullOnly
                                       : resource_path::RechargeMode::Partial;
  Stopwatch timer;
  const resource_path::Result r =
      tmax ? resource_path::min_cost_timed(graph, cat, s, t, *tmax, mode)
           : resource_path::min_cost_feasible(graph, cat, s, t, mode);
  const double elapsed = timer.seconds();

  ordered_json report = make_report("resource-path --recharge " + recharge);
  report["instance_digest"] = digest(graph);
  report["catalog_digest"] = digest(cat);
  std::ostringstream human;
  bool ok = true;
  if (r.type) {
    resource_path::validate_witness(graph, cat, *r.type, s, t, mode,
                                    *r.witness, tmax);
    report["result"]["type"] = *r.type;
    report["result"]["capacity"] = cat.cap[*r.type];
    report["result"]["cost"] = cat.cost[*r.type];
    report["result"]["witness"] = witness_to_json(*r.witness);
    human << "cheapest feasible type: " << *r.type << " (capacity "
          << cat.cap[*r.type] << ", cost " << cat.cost[*r.type] << ", "
          << r.probes << " probes)\n  route:";
    for (const resource_path::Hop& h : r.witness->hops)
      human << " " << h.vertex << "[" << h.remaining << "]";
    human << "\n";
  } else {
    report["result"]["feasible"] = false;
    human << "infeasible: no catalog type reaches " << t << " from " << s
          << "\n";
  }
  report["result"]["probes"] = r.probes;
  report["wall_time_seconds"] = elapsed;
  emit(g, report, human.str());
  return ok ? 0 : 1;
}

int run_bottleneck(const GlobalOpts& g, const std::string& in,
                   Vertex s, const std::string& dests_str, double tmax,
                   const std::string& tree_mode, bool time_varying) {
  const auto graph = load_typed_instance<Digraph>(in);
  const std::vector<Vertex> dests = parse_vertex_list(dests_str);

  ordered_json report = make_report("bottleneck");
  report["instance_digest"] = digest(graph);
  std::ostringstream human;

  Stopwatch timer;
  if (tree_mode.empty() && dests.size() == 1) {
    const auto r = time_varying
                       ? bottleneck::max_capacity_path_timevarying(graph, s,
                                                                   dests[0], tmax)
                       : bottleneck::max_capacity_path(graph, s, dests[0], tmax);
    report["wall_time_seconds"] = timer.seconds();
    if (r) {
      report["result"]["capacity"] = r->capacity;
      report["result"]["path"] = r->path;
      report["result"]["duration"] = r->duration;
      report["result"]["probes"] = r->probes;
      human << "maximum capacity: " << r->capacity << " (duration "
            << r->duration << " <= " << tmax << ")\n  path:";
      for (Vertex v : r->path) human << " " << v;
      human << "\n";
    } else {
      report["result"]["feasible"] = false;
      human << "infeasible: no path meets the duration bound\n";
    }
  } else {
    const auto mode = tree_mode == "total" ? bottleneck::TreeTime::TotalDuration
                                           : bottleneck::TreeTime::LongestPath;
    const auto r =
        bottleneck::max_capacity_tree(graph, s, dests, tmax, mode, time_varying);
    report["wall_time_seconds"] = timer.seconds();
    if (r) {
      report["result"]["capacity"] = r->capacity;
      auto& edges = report["result"]["edges"] = ordered_json::array();
      for (const auto& [u, v] : r->edges) edges.push_back({u, v});
      report["result"]["duration"] = r->duration;
      report["result"]["probes"] = r->probes;
      human << "maximum tree capacity: " << r->capacity << " ("
            << (mode == bottleneck::TreeTime::TotalDuration ? "total duration "
                                                            : "longest path ")
            << r->duration << " <= " << tmax << ")\n  edges:";
      for (const auto& [u, v] : r->edges) human << " " << u << "-" << v;
      human << "\n";
    } else {
      report["result"]["feasible"] = false;
      human << "infeasible: no tree meets the duration bound\n";
    }
  }
  emit(g, report, human.str());
  return 0;
}

struct GenerateOpts {
  std::string kind;
  int n = 3;
  int m = 100;
  int k = 2;
  int a_max = 7;
  int b_max = 4;
  int types = 3;
  std::int64_t cap_max = 10;
  double charge_prob = 0.3;
  std::string agg = "sum";
  bool matrix = false;
  bool with_target = false;
  bool with_tcharge = false;
  bool with_rc = false;
  bool with_durations = false;
  bool with_caps = false;
  bool with_profiles = false;
};

int run_generate(const GlobalOpts& g, const GenerateOpts& o) {
  std::mt19937 rng(static_cast<std::uint32_t>(g.seed));
  AnyInstance inst = [&]() -> AnyInstance {
    if (o.kind == "rooted_tree") return gen::random_tree(o.n, rng);
    if (o.kind == "digraph") {
      Digraph d = gen::random_digraph(o.n, o.m, rng);
      if (o.with_rc) gen::add_rc(d, o.cap_max, rng);
      if (o.with_durations) gen::add_durations(d, 4, rng);
      if (o.with_caps) gen::add_caps(d, static_cast<int>(o.cap_max), rng);
      if (o.with_profiles)
        gen::add_profiles(d, static_cast<int>(o.cap_max), 3, rng);
      return d;
    }
    if (o.kind == "stream_system")
      return gen::random_stream_system(o.n, o.m, o.a_max, o.b_max, rng);
    if (o.kind == "reorder")
      return gen::random_reorder(
          o.n, o.agg == "max" ? Aggregation::Max : Aggregation::Sum, rng);
    if (o.kind == "tpt")
      return gen::random_tpt(o.n, 9, 9, o.with_target, rng);
    if (o.kind == "resource_catalog")
      return gen::random_catalog(o.types, o.cap_max, o.n, o.charge_prob,
                                 o.with_tcharge, rng);
    if (o.kind == "freq_multicast")
      return gen::random_freq(o.n, o.k, o.matrix, 3, rng);
    throw ValidationError("unknown instance kind '" + o.kind + "'");
  }();

  if (!g.out.empty()) {
    save_instance(g.out, inst);
    if (!g.json)
      std::cout << "wrote " << to_string(kind_of(inst)) << " instance to "
                << g.out << "\n";
  }
  if (g.json || g.out.empty())
    std::cout << instance_to_json(inst).dump(2) << "\n";
  return 0;
}

int run_verify(const GlobalOpts& g, const std::string& suite, int count) {
  using Runner = std::function<verify::Report(int, std::uint64_t)>;
  struct Entry {
    const char* name;
    int default_count;
    Runner run;
  };
  const std::vector<Entry> entries = {
      {"broadcast", 500, [](int c, std::uint64_t s) { return verify::broadcast(c, s); }},
      {"multicast", 200, [](int c, std::uint64_t s) { return verify::multicast(c, s); }},
      {"streams", 200, [](int c, std::uint64_t s) { return verify::streams(c, s); }},
      {"reorder", 200, [](int c, std::uint64_t s) { return verify::reorder(c, s); }},
      {"tpt", 200, [](int c, std::uint64_t s) { return verify::tpt(c, s); }},
      {"resource", 100, [](int c, std::uint64_t s) { return verify::resource(c, s); }},
      {"bottleneck", 300, [](int c, std::uint64_t s) { return verify::bottleneck(c, s); }},
  };

  std::vector<const Entry*> selected;
  for (const Entry& e : entries)
    if (suite == "all" || suite == e.name) selected.push_back(&e);
  if (selected.empty()) throw ValidationError("unknown suite '" + suite + "'");

  Stopwatch timer;
  std::vector<verify::Report> reports(selected.size());
  // fan the suites out over the worker pool; results land index-ordered
  std::vector<std::thread> pool;
  std::size_t next = 0;
  const int workers = std::clamp(g.jobs, 1, static_cast<int>(selected.size()));
  std::mutex mu;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      while (true) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= selected.size()) return;
          i = next++;
        }
        const int c = count > 0 ? count : selected[i]->default_count;
        reports[i] = selected[i]->run(c, g.seed + i);
      }
    });
  for (std::thread& t : pool) t.join();
  const double elapsed = timer.seconds();

  ordered_json report = make_report("verify " + suite);
  auto& jsuites = report["result"] = ordered_json::array();
  std::ostringstream human;
  bool ok = true;
  for (const verify::Report& r : reports) {
    jsuites.push_back({{"suite", r.suite},
                       {"total", r.total},
                       {"mismatches", r.mismatches}});
    human << "  " << r.suite << ": " << r.total << " instances, "
          << r.mismatches << " mismatches\n";
    if (!r.ok()) {
      ok = false;
      const std::string dump_path = "verify_" + r.suite + "_failure.json";
      std::ofstream dump(dump_path);
      dump << r.first_failure << "\n";
      human << "    FIRST FAILURE (dumped to " << dump_path << "): "
            << r.first_failure << "\n";
      jsuites.back()["first_failure"] = r.first_failure;
      jsuites.back()["dump"] = dump_path;
    }
  }
  report["wall_time_seconds"] = elapsed;
  report["agreement"] = ok;
  human << (ok ? "all suites agree with the oracles\n"
               : "MISMATCHES FOUND\n");
  emit(g, report, human.str());
  return ok ? 0 : 1;
}

int run_oracle(const GlobalOpts& g, const std::string& planner,
               const std::string& in, const std::string& catalog_path,
               std::optional<int> source, Vertex s, Vertex t,
               const std::string& dests_str, std::optional<double> tmax,
               const std::string& tree_mode, bool time_varying) {
  ordered_json report = make_report("oracle " + planner);
  std::ostringstream human;
  Stopwatch timer;

  if (planner == "broadcast") {
    const auto tree = load_typed_instance<RootedTree>(in);
    report["instance_digest"] = digest(tree);
    const int rounds = oracles::min_broadcast_time(tree);
    report["result"]["t_opt"] = rounds;
    human << "oracle broadcast time: " << rounds << " rounds\n";
  } else if (planner == "multicast") {
    const auto inst = load_typed_instance<FreqInstance>(in);
    report["instance_digest"] = digest(inst);
    if (!source) throw ValidationError("--source is required");
    const double cost = oracles::multicast_min_cost(inst, *source);
    const bool feasible = cost != freq_multicast::kInfiniteCost;
    report["result"]["feasible"] = feasible;
    if (feasible) report["result"]["cost"] = cost;
    human << "oracle multicast cost from " << *source << ": ";
    if (feasible)
      human << cost << "\n";
    else
      human << "infeasible\n";
  } else if (planner == "streams") {
    const auto sys = load_typed_instance<StreamSystem>(in);
    report["instance_digest"] = digest(sys);
    const int makespan = oracles::stream_min_makespan(sys);
    report["result"]["makespan"] = makespan;
    human << "oracle makespan: " << makespan << " time units\n";
  } else if (planner == "reorder") {
    const auto inst = load_typed_instance<ReorderInstance>(in);
    report["instance_digest"] = digest(inst);
    const double cost = oracles::reorder_min_cost(inst);
    report["result"]["cost"] = cost;
    human << "oracle reorder cost: " << cost << "\n";
  } else if (planner == "tpt") {
    const auto inst = load_typed_instance<TptInstance>(in);
    report["instance_digest"] = digest(inst);
    const auto [lo, hi] = oracles::tpt_min_max(inst);
    report["result"]["min_tpt"] = lo;
    report["result"]["max_tpt"] = hi;
    human << "oracle TPT range: [" << lo << ", " << hi << "]\n";
  } else if (planner == "resource-path") {
    const auto graph = load_typed_instance<Digraph>(in);
    const auto cat = load_typed_instance<ResourceCatalog>(catalog_path);
    report["instance_digest"] = digest(graph);
    const std::optional<int> type = oracles::resource_min_type(graph, cat, s, t, tmax);
    report["result"]["feasible"] = type.has_value();
    if (type) report["result"]["type"] = *type;
    human << "oracle cheapest type: "
          << (type ? std::to_string(*type) : std::string("infeasible")) << "\n";
  } else if (planner == "bottleneck") {
    const auto graph = load_typed_instance<Digraph>(in);
    report["instance_digest"] = digest(graph);
    if (!tmax) throw ValidationError("--tmax is required");
    const std::vector<Vertex> dests = parse_vertex_list(dests_str);
    std::optional<double> cap;
    if (tree_mode.empty() && dests.size() == 1)
      cap = time_varying
                ? oracles::bottleneck_path_timevarying(graph, s, dests[0], *tmax)
                : oracles::bottleneck_path(graph, s, dests[0], *tmax);
    else
      cap = oracles::bottleneck_tree(
          graph, s, dests, *tmax,
          tree_mode == "total" ? oracles::TreeTimeMode::TotalDuration
                               : oracles::TreeTimeMode::LongestPath,
          time_varying);
    report["result"]["feasible"] = cap.has_value();
    if (cap) report["result"]["capacity"] = *cap;
    human << "oracle capacity: "
          << (cap ? std::to_string(*cap) : std::string("infeasible")) << "\n";
  } else {
    throw ValidationError("unknown planner '" + planner + "'");
  }
  report["wall_time_seconds"] = timer.seconds();
  emit(g, report, human.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"offline content-delivery planning toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed/--jobs/--json/--out may follow the subcommand

  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for all randomness")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker pool size")->capture_default_str();
  app.add_flag("--json", g.json, "JSON on stdout instead of tables");
  app.add_option("--out", g.out, "write the machine-readable report here");

  // broadcast
  std::string in, search = "linear";
  auto* cmd_broadcast = app.add_subcommand("broadcast", "minimum broadcast time in a rooted tree");
  cmd_broadcast->add_option("--in", in, "tree instance")->required();
  cmd_broadcast->add_option("--search", search, "linear|binary")
      ->check(CLI::IsMember({"linear", "binary"}));

  // multicast
  std::string mc_in, mc_model;
  int mc_source = -1;
  bool mc_all_roots = false;
  auto* cmd_multicast = app.add_subcommand("multicast", "minimum-cost frequency multicast");
  cmd_multicast->add_option("--in", mc_in, "frequency instance")->required();
  auto* src_opt = cmd_multicast->add_option("--source", mc_source, "source vertex");
  cmd_multicast->add_flag("--all-roots", mc_all_roots, "solve every source");
  cmd_multicast->add_option("--model", mc_model, "per-freq|matrix")
      ->check(CLI::IsMember({"per-freq", "matrix"}));

  // streams
  std::string st_in, st_dp = "auto", st_memory = "full";
  auto* cmd_streams = app.add_subcommand("streams", "minimum-makespan stream schedule");
  cmd_streams->add_option("--in", st_in, "stream system")->required();
  cmd_streams->add_option("--dp", st_dp, "waits|history|auto")
      ->check(CLI::IsMember({"waits", "history", "auto"}));
  cmd_streams->add_option("--memory", st_memory, "full|rolling")
      ->check(CLI::IsMember({"full", "rolling"}));

  // streams-sweep
  int sw_a_max = 7, sw_b_max = 4, sw_n = 3, sw_m = 100;
  auto* cmd_sweep = app.add_subcommand("streams-sweep", "DP-vs-greedy scenario sweep");
  cmd_sweep->add_option("--a-max", sw_a_max)->capture_default_str();
  cmd_sweep->add_option("--b-max", sw_b_max)->capture_default_str();
  cmd_sweep->add_option("--n", sw_n)->capture_default_str();
  cmd_sweep->add_option("--m", sw_m)->capture_default_str();

  // reorder
  std::string re_in, re_agg;
  bool re_cost_only = false;
  auto* cmd_reorder = app.add_subcommand("reorder", "minimum-cost packet reordering");
  cmd_reorder->add_option("--in", re_in, "reorder instance")->required();
  cmd_reorder->add_option("--agg", re_agg, "sum|max")
      ->check(CLI::IsMember({"sum", "max"}));
  cmd_reorder->add_flag("--cost-only", re_cost_only, "two-row mode, no move list");

  // tpt
  std::string tp_in, tp_policy;
  std::int64_t tp_target = 0;
  auto* cmd_tpt = app.add_subcommand("tpt", "processing-time ordering");
  cmd_tpt->add_option("--in", tp_in, "tpt instance")->required();
  auto* target_opt = cmd_tpt->add_option("--target", tp_target, "target TPT value");
  cmd_tpt->add_option("--policy", tp_policy, "a|b|c|d|e|random")
      ->check(CLI::IsMember({"a", "b", "c", "d", "e", "random"}));

  // tpt-bench
  std::string tb_suite;
  auto* cmd_tpt_bench = app.add_subcommand("tpt-bench", "swap-policy benchmark over a directory");
  cmd_tpt_bench->add_option("--suite", tb_suite, "directory of tpt instances")->required();

  // resource-path
  std::string rp_in, rp_catalog, rp_recharge = "partial";
  int rp_s = 0, rp_t = 0;
  double rp_tmax = 0.0;
  auto* cmd_resource = app.add_subcommand("resource-path", "cheapest feasible resource type");
  cmd_resource->add_option("--in", rp_in, "graph instance")->required();
  cmd_resource->add_option("--catalog", rp_catalog, "resource catalog")->required();
  cmd_resource->add_option("--s", rp_s, "start vertex")->required();
  cmd_resource->add_option("--t", rp_t, "destination vertex")->required();
  auto* rp_tmax_opt = cmd_resource->add_option("--tmax", rp_tmax, "duration bound");
  cmd_resource->add_option("--recharge", rp_recharge, "partial|full")
      ->check(CLI::IsMember({"partial", "full"}));

  // bottleneck
  std::string bn_in, bn_dests, bn_tree;
  int bn_s = 0;
  double bn_tmax = 0.0;
  bool bn_time_varying = false;
  auto* cmd_bottleneck = app.add_subcommand("bottleneck", "maximum-capacity route");
  cmd_bottleneck->add_option("--in", bn_in, "graph instance")->required();
  cmd_bottleneck->add_option("--s", bn_s, "source vertex")->required();
  cmd_bottleneck->add_option("--d", bn_dests, "destination list D1,D2,...")->required();
  cmd_bottleneck->add_option("--tmax", bn_tmax, "duration bound")->required();
  cmd_bottleneck->add_option("--tree", bn_tree, "longest|total")
      ->check(CLI::IsMember({"longest", "total"}));
  cmd_bottleneck->add_flag("--time-varying", bn_time_varying, "step-profile capacities");

  // generate
  GenerateOpts gen_opts;
  auto* cmd_generate = app.add_subcommand("generate", "random instance generation");
  cmd_generate
      ->add_option("kind", gen_opts.kind,
                   "rooted_tree|digraph|stream_system|reorder|tpt|"
                   "resource_catalog|freq_multicast")
      ->required();
  cmd_generate->add_option("--n", gen_opts.n)->capture_default_str();
  cmd_generate->add_option("--m", gen_opts.m)->capture_default_str();
  cmd_generate->add_option("--k", gen_opts.k)->capture_default_str();
  cmd_generate->add_option("--a-max", gen_opts.a_max)->capture_default_str();
  cmd_generate->add_option("--b-max", gen_opts.b_max)->capture_default_str();
  cmd_generate->add_option("--types", gen_opts.types)->capture_default_str();
  cmd_generate->add_option("--cap-max", gen_opts.cap_max)->capture_default_str();
  cmd_generate->add_option("--charge-prob", gen_opts.charge_prob)->capture_default_str();
  cmd_generate->add_option("--agg", gen_opts.agg, "sum|max")
      ->check(CLI::IsMember({"sum", "max"}));
  cmd_generate->add_flag("--matrix", gen_opts.matrix, "matrix cost model");
  cmd_generate->add_flag("--with-target", gen_opts.with_target, "achievable TPT target");
  cmd_generate->add_flag("--with-tcharge", gen_opts.with_tcharge, "charge-time model");
  cmd_generate->add_flag("--with-rc", gen_opts.with_rc, "resource consumptions");
  cmd_generate->add_flag("--with-durations", gen_opts.with_durations, "edge durations");
  cmd_generate->add_flag("--with-caps", gen_opts.with_caps, "static capacities");
  cmd_generate->add_flag("--with-profiles", gen_opts.with_profiles, "capacity profiles");

  // verify
  std::string vf_suite = "all";
  int vf_count = 0;
  auto* cmd_verify = app.add_subcommand("verify", "planner-vs-oracle suites");
  cmd_verify->add_option("suite", vf_suite,
                         "broadcast|multicast|streams|reorder|tpt|resource|"
                         "bottleneck|all");
  cmd_verify->add_option("--count", vf_count, "instances per suite (0 = defaults)");

  // oracle
  std::string or_planner, or_in, or_catalog, or_dests = "0", or_tree;
  int or_source = -1, or_s = 0, or_t = 0;
  double or_tmax = 0.0;
  bool or_time_varying = false;
  auto* cmd_oracle = app.add_subcommand("oracle", "brute-force reference answers");
  cmd_oracle->add_option("planner", or_planner, "planner name")->required();
  cmd_oracle->add_option("--in", or_in, "instance file")->required();
  cmd_oracle->add_option("--catalog", or_catalog, "resource catalog");
  auto* or_source_opt = cmd_oracle->add_option("--source", or_source, "multicast source");
  cmd_oracle->add_option("--s", or_s, "source vertex");
  cmd_oracle->add_option("--t", or_t, "destination vertex");
  cmd_oracle->add_option("--d", or_dests, "destination list");
  auto* or_tmax_opt = cmd_oracle->add_option("--tmax", or_tmax, "duration bound");
  cmd_oracle->add_option("--tree", or_tree, "longest|total")
      ->check(CLI::IsMember({"longest", "total"}));
  cmd_oracle->add_flag("--time-varying", or_time_varying, "step-profile capacities");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_broadcast->parsed()) return run_broadcast(g, in, search);
    if (cmd_multicast->parsed())
      return run_multicast(g, mc_in,
                           src_opt->count() ? std::optional<int>(mc_source)
                                            : std::nullopt,
                           mc_all_roots, mc_model);
    if (cmd_streams->parsed()) return run_streams(g, st_in, st_dp, st_memory);
    if (cmd_sweep->parsed())
      return run_streams_sweep(g, sw_a_max, sw_b_max, sw_n, sw_m);
    if (cmd_reorder->parsed()) return run_reorder(g, re_in, re_agg, re_cost_only);
    if (cmd_tpt->parsed())
      return run_tpt(g, tp_in,
                     target_opt->count() ? std::optional<std::int64_t>(tp_target)
                                         : std::nullopt,
                     tp_policy);
    if (cmd_tpt_bench->parsed()) return run_tpt_bench(g, tb_suite);
    if (cmd_resource->parsed())
      return run_resource_path(g, rp_in, rp_catalog, rp_s, rp_t,
                               rp_tmax_opt->count() ? std::optional<double>(rp_tmax)
                                                    : std::nullopt,
                               rp_recharge);
    if (cmd_bottleneck->parsed())
      return run_bottleneck(g, bn_in, bn_s, bn_dests, bn_tmax, bn_tree,
                            bn_time_varying);
    if (cmd_generate->parsed()) return run_generate(g, gen_opts);
    if (cmd_verify->parsed()) return run_verify(g, vf_suite, vf_count);
    if (cmd_oracle->parsed())
      return run_oracle(g, or_planner, or_in, or_catalog,
                        or_source_opt->count() ? std::optional<int>(or_source)
                                               : std::nullopt,
                        or_s, or_t, or_dests,
                        or_tmax_opt->count() ? std::optional<double>(or_tmax)
                                             : std::nullopt,
                        or_tree, or_time_varying);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const oracles::GuardError& e) {
    std::cerr << "oracle guard: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
