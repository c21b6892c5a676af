#include "cdplan/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace cdplan::bottleneck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

double edge_duration(const Edge& e) {
  if (!e.attrs.duration)
    throw ValidationError("edge " + std::to_string(e.u) + "->" +
                          std::to_string(e.v) + " lacks a duration");
  if (*e.attrs.duration < 0)
    throw ValidationError("negative duration on edge " + std::to_string(e.u) +
                          "->" + std::to_string(e.v));
  return *e.attrs.duration;
}

double edge_cap(const Edge& e) {
  if (!e.attrs.cap)
    throw ValidationError("edge " + std::to_string(e.u) + "->" +
                          std::to_string(e.v) + " lacks a capacity");
  return *e.attrs.cap;
}

const CapacityProfile& edge_profile(const Edge& e) {
  if (!e.attrs.cap_profile)
    throw ValidationError("edge " + std::to_string(e.u) + "->" +
                          std::to_string(e.v) + " lacks a capacity profile");
  e.attrs.cap_profile->validate();
  return *e.attrs.cap_profile;
}

void check_query(const Digraph& g, Vertex s, const std::vector<Vertex>& dests,
                 double tmax) {
  g.validate();
  if (s < 0 || s >= g.n) throw ValidationError("source out of range");
  if (dests.empty()) throw ValidationError("empty destination set");
  for (Vertex d : dests)
    if (d < 0 || d >= g.n) throw ValidationError("destination out of range");
  if (tmax < 0) throw ValidationError("negative duration bound");
}

struct Labels {
  std::vector<double> dist;
  std::vector<Vertex> parent;
  std::vector<int> parent_edge;
};

// Minimal-arrival labels on the subgraph admitted at threshold c. In the
// time-varying case an edge is admitted when its profile at the
// traversal-completion time is >= c, which is sound because profiles
// never increase and the labels are minimal arrivals.
Labels dijkstra(const Digraph& g, const std::vector<std::vector<int>>& out,
                Vertex s, double c, bool time_varying) {
  Labels lab;
  lab.dist.assign(g.n, kInf);
  lab.parent.assign(g.n, -1);
  lab.parent_edge.assign(g.n, -1);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  lab.dist[s] = 0.0;
  heap.push({0.0, s});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > lab.dist[u]) continue;
    for (int ei : out[u]) {
      const Edge& e = g.edges[ei];
      const double nd = d + edge_duration(e);
      const bool admitted =
          time_varying ? edge_profile(e).at(nd) >= c : edge_cap(e) >= c;
      if (!admitted) continue;
      if (nd < lab.dist[e.v]) {
        lab.dist[e.v] = nd;
        lab.parent[e.v] = u;
        lab.parent_edge[e.v] = ei;
        heap.push({nd, e.v});
      }
    }
  }
  return lab;
}

std::vector<std::vector<int>> out_edges(const Digraph& g) {
  std::vector<std::vector<int>> out(g.n);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    out[g.edges[e].u].push_back(e);
  return out;
}

std::vector<std::vector<int>> in_edges(const Digraph& g) {
  std::vector<std::vector<int>> in(g.n);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    in[g.edges[e].v].push_back(e);
  return in;
}

std::vector<double> static_candidates(const Digraph& g) {
  std::set<double> caps;
  for (const Edge& e : g.edges) caps.insert(edge_cap(e));
  return {caps.begin(), caps.end()};
}

std::vector<double> profile_candidates(const Digraph& g) {
  std::set<double> caps{0.0};
  for (const Edge& e : g.edges)
    for (const auto& [time, cap] : edge_profile(e).steps) {
      (void)time;
      caps.insert(cap);
    }
  return {caps.begin(), caps.end()};
}

struct Dsu {
  std::vector<int> up;
  explicit Dsu(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[a] = b;
    return true;
  }
};

struct TotalDurationProbe {
  bool feasible = false;
  double mst_sum = 0.0;
  std::vector<int> mst_edges;  ///< indices into g.edges
};

// Case b) feasibility: minimum spanning tree (Kruskal, undirected) of
// s's component in the cap >= c subgraph; every destination must lie in
// that component and the tree's duration sum must fit tmax.
TotalDurationProbe probe_total(const Digraph& g, Vertex s,
                               const std::vector<Vertex>& dests, double tmax,
                               double c) {
  TotalDurationProbe probe;
  std::vector<int> admitted;
  for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei)
    if (edge_cap(g.edges[ei]) >= c) admitted.push_back(ei);

  Dsu comp(g.n);
  for (int ei : admitted) comp.unite(g.edges[ei].u, g.edges[ei].v);
  const int root = comp.find(s);
  for (Vertex d : dests)
    if (comp.find(d) != root) return probe;

  std::stable_sort(admitted.begin(), admitted.end(), [&](int a, int b) {
    const double da = edge_duration(g.edges[a]);
    const double db = edge_duration(g.edges[b]);
    if (da != db) return da < db;
    if (g.edges[a].u != g.edges[b].u) return g.edges[a].u < g.edges[b].u;
    return g.edges[a].v < g.edges[b].v;
  });
  Dsu mst(g.n);
  for (int ei : admitted) {
    if (comp.find(g.edges[ei].u) != root) continue;
    if (mst.unite(g.edges[ei].u, g.edges[ei].v)) {
      probe.mst_sum += edge_duration(g.edges[ei]);
      probe.mst_edges.push_back(ei);
    }
  }
  probe.feasible = probe.mst_sum <= tmax + kEps;
  return probe;
}

// Largest feasible candidate (ascending list, monotone feasibility).
// Returns the index, or nullopt when even the smallest fails.
template <class Feasible>
std::optional<std::size_t> search_candidates(const std::vector<double>& cands,
                                             Feasible feasible,
                                             std::uint64_t& probes) {
  auto probe = [&](std::size_t i) {
    probes += 1;
    return feasible(cands[i]);
  };
  if (cands.empty() || !probe(0)) return std::nullopt;
  std::size_t lo = 0, hi = cands.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (probe(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  if (lo + 1 < cands.size() && probe(lo + 1))
    throw std::logic_error("bottleneck feasibility is not monotone");
  return lo;
}

std::vector<Vertex> parent_chain(const Labels& lab, Vertex s, Vertex d) {
  std::vector<Vertex> path;
  for (Vertex v = d; v != -1; v = lab.parent[v]) {
    path.push_back(v);
    if (v == s) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Lexicographically smallest vertex sequence among minimal-duration
// admitted paths (static capacities): greedy forward walk guided by
// distances to the destination on the reversed graph.
std::vector<Vertex> lex_min_path(const Digraph& g,
                                 const std::vector<std::vector<int>>& out,
                                 const std::vector<std::vector<int>>& in,
                                 Vertex s, Vertex d, double c,
                                 const Labels& fwd) {
  // reverse Dijkstra: rdist[v] = minimal duration v -> d
  std::vector<double> rdist(g.n, kInf);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  rdist[d] = 0.0;
  heap.push({0.0, d});
  while (!heap.empty()) {
    const auto [dd, v] = heap.top();
    heap.pop();
    if (dd > rdist[v]) continue;
    for (int ei : in[v]) {
      const Edge& e = g.edges[ei];
      if (edge_cap(e) < c) continue;
      const double nd = dd + edge_duration(e);
      if (nd < rdist[e.u]) {
        rdist[e.u] = nd;
        heap.push({nd, e.u});
      }
    }
  }

  const double total = fwd.dist[d];
  std::vector<Vertex> path{s};
  std::vector<bool> visited(g.n, false);
  visited[s] = true;
  Vertex u = s;
  double acc = 0.0;
  for (int step = 0; u != d && step < g.n; ++step) {
    Vertex best = -1;
    double best_dur = kInf;
    for (int ei : out[u]) {
      const Edge& e = g.edges[ei];
      if (edge_cap(e) < c || visited[e.v]) continue;
      const double dur = edge_duration(e);
      if (acc + dur + rdist[e.v] > total + kEps) continue;
      if (best == -1 || e.v < best || (e.v == best && dur < best_dur)) {
        best = e.v;
        best_dur = dur;
      }
    }
    if (best == -1) return parent_chain(fwd, s, d);  // fall back
    u = best;
    acc += best_dur;
    visited[u] = true;
    path.push_back(u);
  }
  if (u != d) return parent_chain(fwd, s, d);
  return path;
}

std::optional<PathResult> solve_path(const Digraph& g, Vertex s, Vertex d,
                                     double tmax, bool time_varying,
                                     CapacityDomain domain, double eps) {
  check_query(g, s, {d}, tmax);
  const auto out = out_edges(g);
  std::uint64_t probes = 0;
  auto feasible = [&](double c) {
    return dijkstra(g, out, s, c, time_varying).dist[d] <= tmax + kEps;
  };

  double capacity;
  if (domain == CapacityDomain::EdgeSet) {
    const std::vector<double> cands =
        time_varying ? profile_candidates(g) : static_candidates(g);
    auto idx = search_candidates(cands, feasible, probes);
    if (!idx) return std::nullopt;
    capacity = cands[*idx];
  } else {
    if (eps <= 0) throw ValidationError("epsilon must be positive");
    double lo = 0.0;
    double hi = 0.0;
    if (time_varying) {
      for (const Edge& e : g.edges)
        for (const auto& step : edge_profile(e).steps)
          hi = std::max(hi, step.second);
    } else {
      for (const Edge& e : g.edges) hi = std::max(hi, edge_cap(e));
    }
    probes += 1;
    if (!feasible(lo)) return std::nullopt;
    probes += 1;
    if (feasible(hi)) {
      lo = hi;
    } else {
      while (hi - lo > eps) {
        const double mid = lo + (hi - lo) / 2;
        probes += 1;
        if (feasible(mid))
          lo = mid;
        else
          hi = mid;
      }
    }
    capacity = lo;
  }

  const Labels fwd = dijkstra(g, out, s, capacity, time_varying);
  PathResult result;
  result.capacity = capacity;
  result.duration = fwd.dist[d];
  result.probes = probes;
  if (s == d) {
    result.path = {s};
    result.duration = 0.0;
  } else if (time_varying) {
    result.path = parent_chain(fwd, s, d);
  } else {
    result.path = lex_min_path(g, out, in_edges(g), s, d, capacity, fwd);
  }
  return result;
}

}  // namespace

std::optional<PathResult> max_capacity_path(const Digraph& g, Vertex s,
                                            Vertex d, double tmax,
                                            CapacityDomain domain, double eps) {
  return solve_path(g, s, d, tmax, false, domain, eps);
}

std::optional<PathResult> max_capacity_path_timevarying(const Digraph& g,
                                                        Vertex s, Vertex d,
                                                        double tmax,
                                                        CapacityDomain domain,
                                                        double eps) {
  return solve_path(g, s, d, tmax, true, domain, eps);
}

std::optional<TreeResult> max_capacity_tree(const Digraph& g, Vertex s,
                                            const std::vector<Vertex>& dests,
                                            double tmax, TreeTime mode,
                                            bool time_varying) {
  check_query(g, s, dests, tmax);
  if (time_varying && mode == TreeTime::TotalDuration)
    throw ValidationError(
        "total-duration trees are not defined for time-varying capacities");

  std::uint64_t probes = 0;
  const std::vector<double> cands =
      time_varying ? profile_candidates(g) : static_candidates(g);

  if (mode == TreeTime::LongestPath) {
    const auto out = out_edges(g);
    auto feasible = [&](double c) {
      const Labels lab = dijkstra(g, out, s, c, time_varying);
      for (Vertex d : dests)
        if (lab.dist[d] > tmax + kEps) return false;
      return true;
    };
    auto idx = search_candidates(cands, feasible, probes);
    if (!idx) return std::nullopt;
    const double capacity = cands[*idx];
    const Labels lab = dijkstra(g, out, s, capacity, time_varying);
    TreeResult result;
    result.capacity = capacity;
    result.probes = probes;
    std::set<std::pair<Vertex, Vertex>> edges;
    for (Vertex d : dests) {
      result.duration = std::max(result.duration, lab.dist[d]);
      for (Vertex v = d; lab.parent[v] != -1; v = lab.parent[v])
        edges.insert({lab.parent[v], v});
    }
    result.edges.assign(edges.begin(), edges.end());
    return result;
  }

  // Total-duration feasibility is not monotone in the threshold: raising c
  // can shrink s's component and with it the spanning-tree sum. Scan the
  // candidates from the largest down instead of bisecting.
  std::optional<double> capacity_found;
  for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
    probes += 1;
    if (probe_total(g, s, dests, tmax, *it).feasible) {
      capacity_found = *it;
      break;
    }
  }
  if (!capacity_found) return std::nullopt;
  const double capacity = *capacity_found;
  const TotalDurationProbe probe = probe_total(g, s, dests, tmax, capacity);

  TreeResult result;
  result.capacity = capacity;
  result.duration = probe.mst_sum;
  result.probes = probes;

  // witness: prune spanning-tree leaves outside s and the destinations
  std::set<Vertex> keep{s};
  keep.insert(dests.begin(), dests.end());
  std::map<Vertex, std::vector<int>> incident;
  std::set<int> alive(probe.mst_edges.begin(), probe.mst_edges.end());
  for (int ei : probe.mst_edges) {
    incident[g.edges[ei].u].push_back(ei);
    incident[g.edges[ei].v].push_back(ei);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [v, inc] : incident) {
      if (keep.count(v)) continue;
      int live = 0, last = -1;
      for (int ei : inc)
        if (alive.count(ei)) {
          live += 1;
          last = ei;
        }
      if (live == 1) {
        alive.erase(last);
        changed = true;
      }
    }
  }
  for (int ei : probe.mst_edges)
    if (alive.count(ei)) result.edges.push_back({g.edges[ei].u, g.edges[ei].v});
  return result;
}

}  // namespace cdplan::bottleneck
