/// \file oracles.hpp
/// Brute-force reference implementations used to verify the planners.
/// Each oracle refuses instances above its guard limits instead of
/// silently truncating. Oracles depend only on the model types.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdplan/model.hpp"

namespace cdplan::oracles {

/// Instance exceeds an oracle's guard limits.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Conservative per-oracle size limits; every oracle finishes well under
/// ten seconds within these bounds.
struct OracleGuard {
  static constexpr int kBroadcastMaxN = 8;
  static constexpr int kMulticastMaxN = 9;
  static constexpr int kMulticastMaxK = 3;
  static constexpr int kStreamMaxN = 3;
  static constexpr int kStreamMaxM = 8;
  static constexpr int kStreamMaxB = 2;
  static constexpr int kReorderMaxN = 12;
  static constexpr int kTptMaxN = 8;
  static constexpr int kResourceMaxN = 6;
  static constexpr std::int64_t kResourceMaxCap = 12;
  static constexpr int kBottleneckMaxN = 7;
  static constexpr int kBottleneckMaxEdges = 16;
};

/// Exact minimum broadcast time by breadth-first search over informed
/// sets, expanding per round every maximal legal vertex-disjoint send set.
int min_broadcast_time(const RootedTree& tree);

/// Exact minimum multicast cost from `src` by enumerating every frequency
/// assignment to the forwarding vertices. Handles both cost models.
double multicast_min_cost(const FreqInstance& inst, Vertex src);

/// Exact minimum makespan by exhaustive search over action sequences up to
/// a dominance horizon.
int stream_min_makespan(const StreamSystem& sys);

/// Exact minimum reorder cost by enumerating all 2^(n-1) front/back
/// decision sequences against a real double-ended buffer.
double reorder_min_cost(const ReorderInstance& inst);

/// Exact minimum and maximum TPT over all n! permutations.
std::pair<std::int64_t, std::int64_t> tpt_min_max(const TptInstance& inst);

/// All achievable TPT values over all n! permutations.
std::set<std::int64_t> tpt_value_set(const TptInstance& inst);

/// Smallest feasible resource type (0-based index) by linear scan over
/// types and exhaustive search over the implicit state space. Charge
/// times must be zero (instantaneous recharge model).
std::optional<int> resource_min_type(const Digraph& g,
                                     const ResourceCatalog& cat, Vertex s,
                                     Vertex t,
                                     std::optional<double> tmax = std::nullopt);

/// Maximum s->d path capacity with duration <= tmax, by enumerating all
/// simple paths; nullopt when no path meets the bound.
std::optional<double> bottleneck_path(const Digraph& g, Vertex s, Vertex d,
                                      double tmax);

/// Time-varying variant: capacities evaluated at each edge's
/// traversal-completion time along the enumerated path.
std::optional<double> bottleneck_path_timevarying(const Digraph& g, Vertex s,
                                                  Vertex d, double tmax);

enum class TreeTimeMode { LongestPath, TotalDuration };

/// Maximum multicast tree capacity: longest-path mode enumerates
/// per-destination simple paths; total-duration mode enumerates spanning
/// trees of the surviving component.
std::optional<double> bottleneck_tree(const Digraph& g, Vertex s,
                                      const std::vector<Vertex>& dests,
                                      double tmax, TreeTimeMode mode,
                                      bool time_varying = false);

}  // namespace cdplan::oracles
