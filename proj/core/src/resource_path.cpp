#include "cdplan/resource_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace cdplan::resource_path {

namespace {

constexpr std::uint64_t kMaxStates = 1ull << 24;
constexpr double kTimeEps = 1e-9;

std::int64_t edge_rc(const Edge& e) {
  if (!e.attrs.rc)
    throw ValidationError("edge " + std::to_string(e.u) + "->" +
                          std::to_string(e.v) + " lacks rc");
  if (*e.attrs.rc < 0)
    throw ValidationError("negative rc on edge " + std::to_string(e.u) + "->" +
                          std::to_string(e.v));
  return *e.attrs.rc;
}

double edge_duration(const Edge& e) {
  if (!e.attrs.duration)
    throw ValidationError("edge " + std::to_string(e.u) + "->" +
                          std::to_string(e.v) + " lacks a duration");
  if (*e.attrs.duration < 0)
    throw ValidationError("negative duration on edge " + std::to_string(e.u) +
                          "->" + std::to_string(e.v));
  return *e.attrs.duration;
}

void check_query(const Digraph& g, const ResourceCatalog& cat, Vertex s,
                 Vertex t) {
  g.validate();
  cat.validate();
  if (s < 0 || s >= g.n || t < 0 || t >= g.n)
    throw ValidationError("query vertex out of range");
  if (cat.type_count() == 0) throw ValidationError("empty resource catalog");
}

std::vector<std::vector<int>> out_edges(const Digraph& g) {
  std::vector<std::vector<int>> out(g.n);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    out[g.edges[e].u].push_back(e);
  return out;
}

std::uint64_t state_count(const Digraph& g, std::int64_t cap) {
  const std::uint64_t states =
      static_cast<std::uint64_t>(g.n) * (static_cast<std::uint64_t>(cap) + 1);
  if (states > kMaxStates)
    throw ValidationError("expanded graph has " + std::to_string(states) +
                          " states (limit " + std::to_string(kMaxStates) + ")");
  return states;
}

std::vector<Vertex> charging_vertices(const Digraph& g,
                                      const ResourceCatalog& cat) {
  std::set<Vertex> unique;
  for (Vertex v : cat.charging_points)
    if (v >= 0 && v < g.n) unique.insert(v);
  return {unique.begin(), unique.end()};
}

// Untimed feasibility probe: BFS over (vertex, remaining) from (s, cap).
// Returns the state chain of the first destination state reached.
std::optional<std::vector<std::int64_t>> probe_reach(
    const Digraph& g, const ResourceCatalog& cat, Vertex s, Vertex t,
    RechargeMode mode, std::int64_t cap,
    const std::vector<std::vector<int>>& out) {
  const std::uint64_t states = state_count(g, cap);
  const std::int64_t width = cap + 1;
  std::vector<std::int64_t> parent(states, -2);  // -2 unvisited, -1 start
  std::queue<std::int64_t> queue;
  const std::int64_t start = static_cast<std::int64_t>(s) * width + cap;
  parent[start] = -1;
  queue.push(start);
  std::int64_t goal = -1;
  while (!queue.empty() && goal < 0) {
    const std::int64_t cur = queue.front();
    queue.pop();
    const Vertex u = static_cast<Vertex>(cur / width);
    const std::int64_t w = cur % width;
    auto visit = [&](std::int64_t next) {
      if (parent[next] != -2) return;
      parent[next] = cur;
      if (next / width == t && goal < 0) goal = next;
      queue.push(next);
    };
    if (u == t) {
      goal = cur;
      break;
    }
    for (int e : out[u]) {
      const std::int64_t rc = edge_rc(g.edges[e]);
      if (w >= rc)
        visit(static_cast<std::int64_t>(g.edges[e].v) * width + (w - rc));
    }
    if (cat.is_charging_point(u) && w < cap) {
      if (mode == RechargeMode::FullOnly) {
        visit(static_cast<std::int64_t>(u) * width + cap);
      } else {
        for (std::int64_t w2 = w + 1; w2 <= cap; ++w2)
          visit(static_cast<std::int64_t>(u) * width + w2);
      }
    }
  }
  if (goal < 0) return std::nullopt;
  std::vector<std::int64_t> chain;
  for (std::int64_t cur = goal; cur != -1; cur = parent[cur])
    chain.push_back(cur);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Timed probe: Dijkstra over the same expanded graph; move edges weigh
// their duration, charge edges the charge time. Returns (chain, duration)
// of the earliest-arrival destination state within tmax.
std::optional<std::pair<std::vector<std::int64_t>, double>> probe_timed(
    const Digraph& g, const ResourceCatalog& cat, Vertex s, Vertex t,
    RechargeMode mode, std::int64_t cap, double tmax,
    const std::vector<std::vector<int>>& out) {
  const std::uint64_t states = state_count(g, cap);
  const std::int64_t width = cap + 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(states, kInf);
  std::vector<std::int64_t> parent(states, -2);
  using Item = std::pair<double, std::int64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const std::int64_t start = static_cast<std::int64_t>(s) * width + cap;
  dist[start] = 0.0;
  parent[start] = -1;
  heap.push({0.0, start});
  while (!heap.empty()) {
    const auto [d, cur] = heap.top();
    heap.pop();
    if (d > dist[cur]) continue;
    const Vertex u = static_cast<Vertex>(cur / width);
    const std::int64_t w = cur % width;
    auto relax = [&](std::int64_t next, double weight) {
      if (d + weight < dist[next]) {
        dist[next] = d + weight;
        parent[next] = cur;
        heap.push({dist[next], next});
      }
    };
    for (int e : out[u]) {
      const std::int64_t rc = edge_rc(g.edges[e]);
      if (w >= rc)
        relax(static_cast<std::int64_t>(g.edges[e].v) * width + (w - rc),
              edge_duration(g.edges[e]));
    }
    if (cat.is_charging_point(u) && w < cap) {
      if (mode == RechargeMode::FullOnly) {
        relax(static_cast<std::int64_t>(u) * width + cap,
              cat.charge_time(u, w, cap));
      } else {
        for (std::int64_t w2 = w + 1; w2 <= cap; ++w2)
          relax(static_cast<std::int64_t>(u) * width + w2,
                cat.charge_time(u, w, w2));
      }
    }
  }
  std::int64_t goal = -1;
  for (std::int64_t w = 0; w <= cap; ++w) {
    const std::int64_t state = static_cast<std::int64_t>(t) * width + w;
    if (dist[state] <= tmax && (goal < 0 || dist[state] < dist[goal]))
      goal = state;
  }
  if (goal < 0) return std::nullopt;
  std::vector<std::int64_t> chain;
  for (std::int64_t cur = goal; cur != -1; cur = parent[cur])
    chain.push_back(cur);
  std::reverse(chain.begin(), chain.end());
  return std::make_pair(std::move(chain), dist[goal]);
}

Witness chain_to_witness(std::int64_t width,
                         const std::vector<std::int64_t>& chain) {
  Witness w;
  for (std::int64_t state : chain) {
    Hop hop;
    hop.vertex = static_cast<Vertex>(state / width);
    hop.remaining = state % width;
    w.hops.push_back(hop);
  }
  return w;
}

// Shared binary-search skeleton: probe(type) -> feasible?; on success the
// last probe at the answer index also produces the witness.
template <class Probe>
Result search_types(const ResourceCatalog& cat, Probe probe) {
  Result result;
  const int k = cat.type_count();
  auto feasible = [&](int type, Witness* witness) {
    result.probes += 1;
    return probe(type, witness);
  };
  if (!feasible(k - 1, nullptr)) return result;
  int lo = 0, hi = k - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (feasible(mid, nullptr))
      hi = mid;
    else
      lo = mid + 1;
  }
  // monotonicity spot-check around the answer
  if (lo > 0 && feasible(lo - 1, nullptr))
    throw std::logic_error("resource feasibility is not monotone in type");
  Witness witness;
  if (!feasible(lo, &witness))
    throw std::logic_error("answer type failed its confirming probe");
  result.type = lo;
  result.witness = std::move(witness);
  return result;
}

}  // namespace

Result min_cost_feasible(const Digraph& g, const ResourceCatalog& cat, Vertex s,
                         Vertex t, RechargeMode mode) {
  check_query(g, cat, s, t);
  const auto out = out_edges(g);
  return search_types(cat, [&](int type, Witness* witness) {
    const std::int64_t cap = cat.cap[type];
    auto chain = probe_reach(g, cat, s, t, mode, cap, out);
    if (!chain) return false;
    if (witness) *witness = chain_to_witness(cap + 1, *chain);
    return true;
  });
}

Result min_cost_timed(const Digraph& g, const ResourceCatalog& cat, Vertex s,
                      Vertex t, double tmax, RechargeMode mode) {
  check_query(g, cat, s, t);
  if (tmax < 0) throw ValidationError("negative duration bound");
  const auto out = out_edges(g);
  return search_types(cat, [&](int type, Witness* witness) {
    const std::int64_t cap = cat.cap[type];
    auto res = probe_timed(g, cat, s, t, mode, cap, tmax, out);
    if (!res) return false;
    if (witness) {
      const std::int64_t width = cap + 1;
      Witness w;
      double arrival = 0.0;
      for (std::size_t i = 0; i < res->first.size(); ++i) {
        const std::int64_t state = res->first[i];
        Hop hop;
        hop.vertex = static_cast<Vertex>(state / width);
        hop.remaining = state % width;
        if (i > 0) {
          const std::int64_t prev = res->first[i - 1];
          const Vertex pu = static_cast<Vertex>(prev / width);
          const std::int64_t pw = prev % width;
          if (hop.vertex == pu) {
            arrival += cat.charge_time(pu, pw, hop.remaining);
          } else {
            // recover the move edge's duration: cheapest matching edge
            double best = std::numeric_limits<double>::infinity();
            for (const Edge& e : g.edges)
              if (e.u == pu && e.v == hop.vertex &&
                  edge_rc(e) == pw - hop.remaining)
                best = std::min(best, edge_duration(e));
            arrival += best;
          }
        }
        hop.arrival = arrival;
        w.hops.push_back(hop);
      }
      w.duration = res->second;
      *witness = std::move(w);
    }
    return true;
  });
}

std::optional<int> feasibility_unconstrained_shortcut(const Digraph& g,
                                                      const ResourceCatalog& cat,
                                                      Vertex s, Vertex t) {
  check_query(g, cat, s, t);
  if (!cat.charging_points.empty())
    throw ValidationError("shortcut requires a catalog without charging points");
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 2;
  std::vector<std::int64_t> dist(g.n, kInf);
  const auto out = out_edges(g);
  using Item = std::pair<std::int64_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[s] = 0;
  heap.push({0, s});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (int e : out[u]) {
      const std::int64_t nd = d + edge_rc(g.edges[e]);
      if (nd < dist[g.edges[e].v]) {
        dist[g.edges[e].v] = nd;
        heap.push({nd, g.edges[e].v});
      }
    }
  }
  if (dist[t] >= kInf) return std::nullopt;
  auto it = std::lower_bound(cat.cap.begin(), cat.cap.end(), dist[t]);
  if (it == cat.cap.end()) return std::nullopt;
  return static_cast<int>(it - cat.cap.begin());
}

EdgeCounts expanded_edge_count(const Digraph& g, const ResourceCatalog& cat,
                               int type, RechargeMode mode) {
  g.validate();
  cat.validate();
  if (type < 0 || type >= cat.type_count())
    throw ValidationError("type index out of range");
  const std::int64_t cap = cat.cap[type];
  state_count(g, cap);
  const std::vector<Vertex> charging = charging_vertices(g, cat);
  EdgeCounts counts;
  for (std::int64_t w = 0; w <= cap; ++w) {
    for (const Edge& e : g.edges)
      if (w >= edge_rc(e)) counts.moves += 1;
    for (Vertex v : charging) {
      (void)v;
      if (mode == RechargeMode::FullOnly) {
        if (w < cap) counts.charges += 1;
      } else {
        counts.charges += static_cast<std::uint64_t>(cap - w);
      }
    }
  }
  return counts;
}

EdgeCounts expanded_edge_formula(const Digraph& g, const ResourceCatalog& cat,
                                 int type, RechargeMode mode) {
  g.validate();
  cat.validate();
  if (type < 0 || type >= cat.type_count())
    throw ValidationError("type index out of range");
  const std::int64_t cap = cat.cap[type];
  const std::uint64_t charging = charging_vertices(g, cat).size();
  EdgeCounts counts;
  for (const Edge& e : g.edges) {
    const std::int64_t rc = edge_rc(e);
    if (rc <= cap) counts.moves += static_cast<std::uint64_t>(cap - rc + 1);
  }
  if (mode == RechargeMode::FullOnly)
    counts.charges = charging * static_cast<std::uint64_t>(cap);
  else
    counts.charges = charging * static_cast<std::uint64_t>(cap) *
                     static_cast<std::uint64_t>(cap + 1) / 2;
  return counts;
}

void validate_witness(const Digraph& g, const ResourceCatalog& cat, int type,
                      Vertex s, Vertex t, RechargeMode mode, const Witness& w,
                      std::optional<double> tmax) {
  check_query(g, cat, s, t);
  if (type < 0 || type >= cat.type_count())
    throw ValidationError("type index out of range");
  const std::int64_t cap = cat.cap[type];
  if (w.hops.empty()) throw ValidationError("witness: empty hop list");
  if (w.hops.front().vertex != s || w.hops.front().remaining != cap)
    throw ValidationError("witness: does not start at (s, cap)");
  if (w.hops.back().vertex != t)
    throw ValidationError("witness: does not end at the destination");
  const bool timed = tmax.has_value();
  for (std::size_t i = 0; i < w.hops.size(); ++i) {
    const Hop& hop = w.hops[i];
    if (hop.remaining < 0 || hop.remaining > cap)
      throw ValidationError("witness: remaining out of range at hop " +
                            std::to_string(i));
    if (i == 0) continue;
    const Hop& prev = w.hops[i - 1];
    if (hop.vertex == prev.vertex) {
      if (hop.remaining <= prev.remaining)
        throw ValidationError("witness: recharge does not increase remaining");
      if (!cat.is_charging_point(hop.vertex))
        throw ValidationError("witness: recharge at a non-charging vertex " +
                              std::to_string(hop.vertex));
      if (mode == RechargeMode::FullOnly && hop.remaining != cap)
        throw ValidationError("witness: partial recharge in full-only mode");
      if (timed &&
          std::abs(hop.arrival - prev.arrival -
                   cat.charge_time(hop.vertex, prev.remaining, hop.remaining)) >
              kTimeEps)
        throw ValidationError("witness: recharge arrival time inconsistent");
    } else {
      bool matched = false;
      for (const Edge& e : g.edges) {
        if (e.u != prev.vertex || e.v != hop.vertex) continue;
        if (edge_rc(e) != prev.remaining - hop.remaining) continue;
        if (timed &&
            std::abs(hop.arrival - prev.arrival - edge_duration(e)) > kTimeEps)
          continue;
        matched = true;
        break;
      }
      if (!matched)
        throw ValidationError("witness: no edge matches hop " +
                              std::to_string(i));
    }
  }
  if (timed) {
    if (std::abs(w.duration - w.hops.back().arrival) > kTimeEps)
      throw ValidationError("witness: duration does not match final arrival");
    if (w.duration > *tmax + kTimeEps)
      throw ValidationError("witness: duration exceeds the bound");
  }
}

}  // namespace cdplan::resource_path
