/// \file resource_path.hpp
/// Feasible s->t paths using a consumable, rechargeable resource, picking
/// the cheapest resource type by binary search over the sorted catalog.
/// Untimed reachability and the duration-bounded variant with charge
/// times both run on the expanded (vertex, remaining) graph.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cdplan/model.hpp"

namespace cdplan::resource_path {

enum class RechargeMode { Partial, FullOnly };

/// One state along the witness: at `vertex` with `remaining` resource.
/// Consecutive hops on the same vertex are recharges. `arrival` is the
/// cumulative duration (always 0 in the untimed problem).
struct Hop {
  Vertex vertex = 0;
  std::int64_t remaining = 0;
  double arrival = 0.0;
};

struct Witness {
  std::vector<Hop> hops;
  double duration = 0.0;
};

struct Result {
  std::optional<int> type;  ///< 0-based catalog index; nullopt = infeasible
  std::optional<Witness> witness;
  std::uint64_t probes = 0;
};

/// Smallest resource type admitting a path from (s, cap) to the
/// destination at any remaining level; recharges allowed at charging
/// points, to any higher level (Partial) or only to full (FullOnly).
Result min_cost_feasible(const Digraph& g, const ResourceCatalog& cat, Vertex s,
                         Vertex t, RechargeMode mode = RechargeMode::Partial);

/// Charge-free special case: smallest type with cap >= the minimum total
/// resource consumption (single Dijkstra). Rejects catalogs that declare
/// charging points.
std::optional<int> feasibility_unconstrained_shortcut(const Digraph& g,
                                                      const ResourceCatalog& cat,
                                                      Vertex s, Vertex t);

/// Duration-bounded variant: smallest type whose shortest expanded-graph
/// path (edge durations plus charge times) stays within tmax.
Result min_cost_timed(const Digraph& g, const ResourceCatalog& cat, Vertex s,
                      Vertex t, double tmax,
                      RechargeMode mode = RechargeMode::Partial);

struct EdgeCounts {
  std::uint64_t moves = 0;
  std::uint64_t charges = 0;
};

/// Expanded-graph edge count by explicit enumeration of every state's
/// outgoing transitions.
EdgeCounts expanded_edge_count(const Digraph& g, const ResourceCatalog& cat,
                               int type, RechargeMode mode);

/// The same count in closed form: moves sum max(0, cap - rc + 1) per
/// edge; charges per charging point are cap*(cap+1)/2 (Partial) or cap
/// (FullOnly).
EdgeCounts expanded_edge_formula(const Digraph& g, const ResourceCatalog& cat,
                                 int type, RechargeMode mode);

/// Replays a witness: legal transitions only, remaining never negative,
/// recharges only at charging points (to full in FullOnly mode), arrival
/// times consistent, duration within tmax when given. Throws
/// ValidationError on any violation.
void validate_witness(const Digraph& g, const ResourceCatalog& cat, int type,
                      Vertex s, Vertex t, RechargeMode mode, const Witness& w,
                      std::optional<double> tmax = std::nullopt);

}  // namespace cdplan::resource_path
