#include "cdplan/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

namespace cdplan::oracles {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Broadcast: BFS over informed sets
// ---------------------------------------------------------------------------

// Only maximal send sets are expanded per round: informing strictly fewer
// vertices in a round never helps (see docs/broadcast_oracle_note.md).
int min_broadcast_time(const RootedTree& tree) {
  tree.validate();
  if (tree.n > OracleGuard::kBroadcastMaxN)
    throw GuardError("broadcast oracle limited to n <= " +
                     std::to_string(OracleGuard::kBroadcastMaxN));
  const int n = tree.n;
  const unsigned full = (1u << n) - 1;

  // path_mask[u][v]: vertices on the tree path u..v (v in T(u)), else 0
  std::vector<std::vector<unsigned>> path_mask(n, std::vector<unsigned>(n, 0));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (tree.is_proper_descendant(v, u)) {
        unsigned mask = 0;
        for (Vertex w : tree.path_down(u, v)) mask |= 1u << w;
        path_mask[u][v] = mask;
      }

  auto successor_masks = [&](unsigned informed) {
    std::vector<Vertex> senders;
    for (Vertex u = 0; u < n; ++u)
      if (informed & (1u << u)) senders.push_back(u);

    std::set<unsigned> result;
    // choice per sender: receiver or none; prune on path overlap
    std::function<void(std::size_t, unsigned, unsigned)> rec =
        [&](std::size_t idx, unsigned used, unsigned received) {
          if (idx == senders.size()) {
            // keep maximal sets only
            for (Vertex u : senders) {
              bool sent = false;
              for (Vertex v = 0; v < n && !sent; ++v)
                if (path_mask[u][v] && (path_mask[u][v] & used) == 0 &&
                    !(informed & (1u << v)) && !(received & (1u << v)))
                  sent = true;
              if (sent) return;  // u could still send: not maximal
            }
            result.insert(informed | received);
            return;
          }
          Vertex u = senders[idx];
          rec(idx + 1, used, received);
          for (Vertex v = 0; v < n; ++v) {
            unsigned pm = path_mask[u][v];
            if (!pm || (pm & used) || (informed & (1u << v)) ||
                (received & (1u << v)))
              continue;
            rec(idx + 1, used | pm, received | (1u << v));
          }
        };
    rec(0, 0, 0);
    return result;
  };

  std::vector<int> dist(1u << n, -1);
  unsigned start = 1u << tree.root;
  dist[start] = 0;
  std::queue<unsigned> frontier;
  frontier.push(start);
  while (!frontier.empty()) {
    unsigned cur = frontier.front();
    frontier.pop();
    if (cur == full) return dist[cur];
    for (unsigned next : successor_masks(cur)) {
      if (dist[next] < 0) {
        dist[next] = dist[cur] + 1;
        frontier.push(next);
      }
    }
  }
  throw std::logic_error("broadcast oracle: full set unreachable");
}

// ---------------------------------------------------------------------------
// Frequency multicast: enumerate frequency assignments
// ---------------------------------------------------------------------------

double multicast_min_cost(const FreqInstance& inst, Vertex src) {
  inst.validate();
  if (inst.n > OracleGuard::kMulticastMaxN ||
      inst.k > OracleGuard::kMulticastMaxK)
    throw GuardError("multicast oracle limited to n <= " +
                     std::to_string(OracleGuard::kMulticastMaxN) +
                     ", k <= " + std::to_string(OracleGuard::kMulticastMaxK));
  if (src < 0 || src >= inst.n) throw ValidationError("source out of range");
  if (inst.n == 1) return 0.0;

  auto adj = inst.adjacency();
  std::vector<Vertex> parent(inst.n, -1);
  std::vector<Vertex> order{src};
  std::vector<bool> seen(inst.n, false);
  seen[src] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Vertex w : adj[order[i]])
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = order[i];
        order.push_back(w);
      }

  std::vector<Vertex> forwarding;  // everything except constrained leaves
  for (Vertex v = 0; v < inst.n; ++v)
    if (v == src || inst.degree(v) > 1) forwarding.push_back(v);

  const bool matrix = inst.has_matrix();
  std::vector<int> fwd_index(inst.n, -1);
  for (std::size_t i = 0; i < forwarding.size(); ++i)
    fwd_index[forwarding[i]] = static_cast<int>(i);

  double best = kInf;
  std::vector<int> out_freq(forwarding.size(), 1);
  // in the matrix model the source's incoming frequency is also free
  int src_fin_options = matrix ? inst.k : 1;

  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == forwarding.size()) {
      for (int src_fin = 1; src_fin <= src_fin_options; ++src_fin) {
        double cost = 0.0;
        bool ok = true;
        for (Vertex v = 0; v < inst.n && ok; ++v) {
          if (fwd_index[v] >= 0) {
            int fout = out_freq[fwd_index[v]];
            if (v == src) {
              if (matrix)
                cost += inst.conv_matrix[v][src_fin - 1][fout - 1];
              // per-frequency model: the source starts on any frequency free
            } else {
              int fin = out_freq[fwd_index[parent[v]]];
              if (matrix)
                cost += inst.conv_matrix[v][fin - 1][fout - 1];
              else if (fin != fout)
                cost += inst.conv_cost[v][fout - 1];
            }
          } else {
            // constrained leaf: must receive exactly its frequency
            int fin = out_freq[fwd_index[parent[v]]];
            if (fin != inst.leaf_freq.at(v)) ok = false;
          }
        }
        if (ok) best = std::min(best, cost);
      }
      return;
    }
    for (int fr = 1; fr <= inst.k; ++fr) {
      out_freq[idx] = fr;
      rec(idx + 1);
    }
  };
  rec(0);
  return best;
}

// ---------------------------------------------------------------------------
// Stream scheduling: exhaustive action-sequence search
// ---------------------------------------------------------------------------

int stream_min_makespan(const StreamSystem& sys) {
  sys.validate();
  if (sys.n > OracleGuard::kStreamMaxN || sys.m > OracleGuard::kStreamMaxM ||
      sys.max_cooldown() > OracleGuard::kStreamMaxB)
    throw GuardError("stream oracle limited to n <= " +
                     std::to_string(OracleGuard::kStreamMaxN) + ", m <= " +
                     std::to_string(OracleGuard::kStreamMaxM) + ", B <= " +
                     std::to_string(OracleGuard::kStreamMaxB));
  if (sys.m == 0) return 0;

  const int horizon = sys.m + sys.m * (1 + sys.max_cooldown());
  const int am = sys.max_send_cap();
  int best = horizon + 1;
  std::vector<int> waits(sys.n, 0);

  std::function<void(int, int)> rec = [&](int time, int sent) {
    if (sent >= sys.m) {
      best = std::min(best, time);
      return;
    }
    // optimistic bound: best stream every remaining unit
    int bound = time + (sys.m - sent + am - 1) / am;
    if (bound >= best || time >= horizon) return;
    std::vector<int> saved = waits;
    for (int i = 0; i < sys.n; ++i) {
      if (saved[i] != 0) continue;
      for (int j = 0; j < sys.n; ++j) waits[j] = std::max(saved[j] - 1, 0);
      waits[i] = sys.cooldown[i];
      rec(time + 1, std::min(sent + sys.send_cap[i], sys.m));
      waits = saved;
    }
    // idle
    for (int j = 0; j < sys.n; ++j) waits[j] = std::max(saved[j] - 1, 0);
    rec(time + 1, sent);
    waits = saved;
  };
  rec(0, 0);
  if (best > horizon)
    throw std::logic_error("stream oracle: no schedule within horizon");
  return best;
}

// ---------------------------------------------------------------------------
// Reordering: enumerate front/back decision sequences
// ---------------------------------------------------------------------------

double reorder_min_cost(const ReorderInstance& inst) {
  inst.validate();
  if (inst.n > OracleGuard::kReorderMaxN)
    throw GuardError("reorder oracle limited to n <= " +
                     std::to_string(OracleGuard::kReorderMaxN));
  const int n = inst.n;

  double best = kInf;
  for (unsigned bits = 0; bits < (1u << (n - 1)); ++bits) {
    // bit set => extend at the front; the number of fronts fixes the
    // first packet
    int fronts = static_cast<int>(std::popcount(bits));
    int lo = fronts + 1, hi = fronts + 1;

    std::vector<int> buffer = inst.arrival;  // receive buffer contents
    double agg = 0.0;
    bool first = true;
    auto take = [&](int packet, int step) {
      auto it = std::find(buffer.begin(), buffer.end(), packet);
      int pos = static_cast<int>(it - buffer.begin()) + 1;
      buffer.erase(it);
      double c = inst.cost_at(step, pos);
      if (first) {
        agg = c;
        first = false;
      } else {
        agg = inst.agg == Aggregation::Sum ? agg + c : std::max(agg, c);
      }
    };
    take(lo, 1);
    for (int step = 2; step <= n; ++step) {
      if (bits & (1u << (step - 2)))
        take(--lo, step);
      else
        take(++hi, step);
    }
    best = std::min(best, agg);
  }
  return best;
}

// ---------------------------------------------------------------------------
// TPT: enumerate permutations
// ---------------------------------------------------------------------------

namespace {

template <class Fn>
void for_each_tpt(const TptInstance& inst, Fn&& fn) {
  inst.validate();
  if (inst.n > OracleGuard::kTptMaxN)
    throw GuardError("tpt oracle limited to n <= " +
                     std::to_string(OracleGuard::kTptMaxN));
  std::vector<int> q(inst.n);
  std::iota(q.begin(), q.end(), 0);
  do {
    std::int64_t total = 0;
    for (int i = 0; i < inst.n; ++i) total += inst.effort[i] * inst.size[q[i]];
    fn(total);
  } while (std::next_permutation(q.begin(), q.end()));
}

}  // namespace

std::pair<std::int64_t, std::int64_t> tpt_min_max(const TptInstance& inst) {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for_each_tpt(inst, [&](std::int64_t v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  });
  return {lo, hi};
}

std::set<std::int64_t> tpt_value_set(const TptInstance& inst) {
  std::set<std::int64_t> values;
  for_each_tpt(inst, [&](std::int64_t v) { values.insert(v); });
  return values;
}

// ---------------------------------------------------------------------------
// Rechargeable resources: implicit-state exhaustive search
// ---------------------------------------------------------------------------

std::optional<int> resource_min_type(const Digraph& g,
                                     const ResourceCatalog& cat, Vertex s,
                                     Vertex t, std::optional<double> tmax) {
  g.validate();
  cat.validate();
  if (g.n > OracleGuard::kResourceMaxN ||
      cat.cap.back() > OracleGuard::kResourceMaxCap)
    throw GuardError("resource oracle limited to n <= " +
                     std::to_string(OracleGuard::kResourceMaxN) + ", cap <= " +
                     std::to_string(OracleGuard::kResourceMaxCap));
  if (cat.tcharge && (cat.tcharge->fixed != 0.0 || cat.tcharge->per_unit != 0.0))
    throw GuardError("resource oracle supports instantaneous recharges only");
  for (const Edge& e : g.edges) {
    if (!e.attrs.rc) throw ValidationError("edge missing rc attribute");
    if (tmax && !e.attrs.duration)
      throw ValidationError("edge missing t attribute");
  }

  std::vector<std::vector<std::pair<Vertex, const Edge*>>> out(g.n);
  for (const Edge& e : g.edges) out[e.u].emplace_back(e.v, &e);

  auto feasible = [&](std::int64_t cap) {
    // best arrival per (vertex, remaining); recharges are free, so the
    // level is normalized to cap at charging points
    std::vector<std::vector<double>> best(
        g.n, std::vector<double>(cap + 1, kInf));
    std::function<void(Vertex, std::int64_t, double)> relax =
        [&](Vertex u, std::int64_t w, double time) {
          if (cat.is_charging_point(u)) w = cap;
          if (time >= best[u][w]) return;
          best[u][w] = time;
          for (const auto& [v, e] : out[u]) {
            std::int64_t rc = *e->attrs.rc;
            if (w < rc) continue;
            relax(v, w - rc, time + (tmax ? *e->attrs.duration : 0.0));
          }
        };
    relax(s, cap, 0.0);
    double arrival = *std::min_element(best[t].begin(), best[t].end());
    return tmax ? arrival <= *tmax : arrival < kInf;
  };

  for (int i = 0; i < cat.type_count(); ++i)
    if (feasible(cat.cap[i])) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Bottleneck paths and trees: simple-path / spanning-tree enumeration
// ---------------------------------------------------------------------------

namespace {

void check_bottleneck_guard(const Digraph& g) {
  g.validate();
  if (g.n > OracleGuard::kBottleneckMaxN)
    throw GuardError("bottleneck oracle limited to n <= " +
                     std::to_string(OracleGuard::kBottleneckMaxN));
}

// all (duration, realized capacity) pairs over simple s->d paths
std::vector<std::pair<double, double>> enumerate_paths(const Digraph& g,
                                                       Vertex s, Vertex d,
                                                       bool time_varying) {
  std::vector<std::vector<const Edge*>> out(g.n);
  for (const Edge& e : g.edges) {
    if (!e.attrs.duration) throw ValidationError("edge missing t attribute");
    if (time_varying) {
      if (!e.attrs.cap_profile)
        throw ValidationError("edge missing cap_profile attribute");
    } else if (!e.attrs.cap) {
      throw ValidationError("edge missing cap attribute");
    }
    out[e.u].push_back(&e);
  }
  std::vector<std::pair<double, double>> results;
  std::vector<bool> visited(g.n, false);
  std::function<void(Vertex, double, double)> dfs = [&](Vertex u, double dur,
                                                        double capacity) {
    if (u == d) {
      results.emplace_back(dur, capacity);
      return;
    }
    visited[u] = true;
    for (const Edge* e : out[u]) {
      if (visited[e->v]) continue;
      double arrival = dur + *e->attrs.duration;
      double edge_cap =
          time_varying ? e->attrs.cap_profile->at(arrival) : *e->attrs.cap;
      dfs(e->v, arrival, std::min(capacity, edge_cap));
    }
    visited[u] = false;
  };
  dfs(s, 0.0, kInf);
  return results;
}

std::vector<double> capacity_candidates(const Digraph& g, bool time_varying) {
  std::set<double> values;
  if (time_varying) values.insert(0.0);
  for (const Edge& e : g.edges) {
    if (time_varying) {
      for (const auto& [time, capv] : e.attrs.cap_profile->steps)
        values.insert(capv);
    } else if (e.attrs.cap) {
      values.insert(*e.attrs.cap);
    }
  }
  return {values.rbegin(), values.rend()};  // descending
}

}  // namespace

std::optional<double> bottleneck_path(const Digraph& g, Vertex s, Vertex d,
                                      double tmax) {
  check_bottleneck_guard(g);
  std::optional<double> best;
  for (const auto& [dur, capacity] : enumerate_paths(g, s, d, false))
    if (dur <= tmax && (!best || capacity > *best)) best = capacity;
  return best;
}

std::optional<double> bottleneck_path_timevarying(const Digraph& g, Vertex s,
                                                  Vertex d, double tmax) {
  check_bottleneck_guard(g);
  std::optional<double> best;
  for (const auto& [dur, capacity] : enumerate_paths(g, s, d, true))
    if (dur <= tmax && (!best || capacity > *best)) best = capacity;
  return best;
}

std::optional<double> bottleneck_tree(const Digraph& g, Vertex s,
                                      const std::vector<Vertex>& dests,
                                      double tmax, TreeTimeMode mode,
                                      bool time_varying) {
  check_bottleneck_guard(g);
  if (dests.empty()) throw ValidationError("destination set must be nonempty");

  if (mode == TreeTimeMode::LongestPath) {
    // per-destination shortest durations restricted to capacity >= C
    std::vector<std::vector<std::pair<double, double>>> paths;
    for (Vertex d : dests) paths.push_back(enumerate_paths(g, s, d, time_varying));
    for (double c : capacity_candidates(g, time_varying)) {
      double tree_time = 0.0;
      bool ok = true;
      for (const auto& list : paths) {
        double dur = kInf;
        for (const auto& [pd, pc] : list)
          if (pc >= c) dur = std::min(dur, pd);
        if (dur == kInf) {
          ok = false;
          break;
        }
        tree_time = std::max(tree_time, dur);
      }
      if (ok && tree_time <= tmax) return c;
    }
    return std::nullopt;
  }

  // total-duration mode, static capacities only
  if (time_varying)
    throw ValidationError(
        "total-duration tree time is defined for static capacities only");
  struct UEdge {
    Vertex a, b;
    double dur, cap;
  };
  std::vector<UEdge> uedges;
  for (const Edge& e : g.edges) {
    if (!e.attrs.cap || !e.attrs.duration)
      throw ValidationError("edge missing cap or t attribute");
    uedges.push_back({e.u, e.v, *e.attrs.duration, *e.attrs.cap});
  }
  if (static_cast<int>(uedges.size()) > OracleGuard::kBottleneckMaxEdges)
    throw GuardError("bottleneck tree oracle limited to m <= " +
                     std::to_string(OracleGuard::kBottleneckMaxEdges));

  for (double c : capacity_candidates(g, false)) {
    std::vector<const UEdge*> all_surviving;
    for (const UEdge& e : uedges)
      if (e.cap >= c) all_surviving.push_back(&e);
    // component of s
    std::vector<bool> comp(g.n, false);
    comp[s] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const UEdge* e : all_surviving) {
        if (comp[e->a] != comp[e->b]) {
          comp[e->a] = comp[e->b] = true;
          grew = true;
        }
      }
    }
    if (!std::all_of(dests.begin(), dests.end(), [&](Vertex d) { return comp[d]; }))
      continue;
    int comp_size = static_cast<int>(std::count(comp.begin(), comp.end(), true));
    if (comp_size == 1) {
      if (0.0 <= tmax) return c;
      continue;
    }
    // restrict to the component; any acyclic pick of comp_size-1 edges
    // then spans it
    std::vector<const UEdge*> surviving;
    for (const UEdge* e : all_surviving)
      if (comp[e->a] && comp[e->b]) surviving.push_back(e);
    // minimum spanning tree total by subset enumeration
    int need = comp_size - 1;
    int mcount = static_cast<int>(surviving.size());
    double best_sum = kInf;
    std::vector<int> pick;
    std::function<void(int, double)> choose = [&](int start, double sum) {
      if (static_cast<int>(pick.size()) == need) {
        // spanning-tree check over the component
        std::vector<int> dsu(g.n);
        std::iota(dsu.begin(), dsu.end(), 0);
        std::function<int(int)> find = [&](int x) {
          while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
          return x;
        };
        int merges = 0;
        for (int idx : pick) {
          int ra = find(surviving[idx]->a), rb = find(surviving[idx]->b);
          if (ra == rb) return;  // cycle
          dsu[ra] = rb;
          ++merges;
        }
        if (merges == need) best_sum = std::min(best_sum, sum);
        return;
      }
      if (sum >= best_sum) return;
      for (int i = start; i <= mcount - (need - static_cast<int>(pick.size())); ++i) {
        pick.push_back(i);
        choose(i + 1, sum + surviving[i]->dur);
        pick.pop_back();
      }
    };
    choose(0, 0.0);
    if (best_sum <= tmax) return c;
  }
  return std::nullopt;
}

}  // namespace cdplan::oracles
