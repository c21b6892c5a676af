/// \file model.hpp
/// Instance and result data types shared by every planner and oracle:
/// rooted trees, attributed digraphs, stream systems, reorder/TPT
/// instances, resource catalogs and broadcast schedules, together with
/// their validation and JSON (de)serialization.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cdplan {

using Vertex = int;

/// Malformed document (not valid JSON, missing fields, wrong types).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally well-formed document violating a domain invariant.
/// The message names the violated invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Trees and graphs
// ---------------------------------------------------------------------------

/// Directed rooted tree over dense vertex ids 0..n-1.
/// Children lists keep the order given at construction; planners are
/// required to be order-independent in their results.
struct RootedTree {
  int n = 0;
  Vertex root = 0;
  std::vector<Vertex> parent;                 ///< parent[root] == -1
  std::vector<std::vector<Vertex>> children;  ///< ordered

  /// Builds the tree from a parent array (-1 marks the root) and checks
  /// all invariants: exactly one root, acyclic, all vertices reachable.
  static RootedTree from_parents(std::vector<Vertex> parents);

  void validate() const;

  int subtree_size(Vertex u) const;
  bool is_proper_descendant(Vertex v, Vertex ancestor) const;
  /// Tree path ancestor..v inclusive; precondition: v in T(ancestor).
  std::vector<Vertex> path_down(Vertex ancestor, Vertex v) const;
};

/// Piecewise-constant, right-continuous capacity step function of time.
/// Times strictly increase starting at 0; capacities never increase.
struct CapacityProfile {
  std::vector<std::pair<double, double>> steps;  ///< (time, capacity)

  double at(double t) const;
  void validate() const;
};

struct EdgeAttrs {
  std::optional<std::int64_t> rc;  ///< resource consumption
  std::optional<double> duration;
  std::optional<double> cap;
  std::optional<CapacityProfile> cap_profile;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  EdgeAttrs attrs;
};

/// Directed graph; parallel edges permitted, self-loops rejected.
struct Digraph {
  int n = 0;
  std::vector<Edge> edges;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Broadcast schedules
// ---------------------------------------------------------------------------

struct Transmission {
  Vertex sender = 0;
  Vertex receiver = 0;
};

struct BroadcastSchedule {
  std::vector<std::vector<Transmission>> rounds;
};

struct ScheduleCheck {
  bool ok = true;
  std::string message;  ///< names round and pair on violation
};

/// Checks a schedule against the single-port vertex-disjoint line model:
/// receivers are proper descendants of senders, per-round transmission
/// paths are pairwise vertex-disjoint, senders are informed before they
/// send, and every non-root vertex receives exactly once.
ScheduleCheck validate_broadcast_schedule(const RootedTree& tree,
                                          const BroadcastSchedule& sched);

// ---------------------------------------------------------------------------
// Stream scheduling
// ---------------------------------------------------------------------------

/// m identical packets over n parallel streams; stream i sends up to
/// send_cap[i] packets per time unit and then cools down cooldown[i] units.
struct StreamSystem {
  int n = 0;
  int m = 0;
  std::vector<int> send_cap;  ///< A_i >= 1
  std::vector<int> cooldown;  ///< B_i >= 0

  int max_send_cap() const;
  int max_cooldown() const;
  void validate() const;
};

// ---------------------------------------------------------------------------
// Packet reordering
// ---------------------------------------------------------------------------

enum class Aggregation { Sum, Max };

/// Packets 1..n received in buffer order arrival[0..n-1] (a permutation);
/// move costs are a full n x n table indexed (step, position), 1-based.
struct ReorderInstance {
  int n = 0;
  std::vector<int> arrival;
  std::vector<std::vector<double>> cost;
  Aggregation agg = Aggregation::Sum;

  double cost_at(int step, int pos) const { return cost[step - 1][pos - 1]; }
  void validate() const;

  /// The c(i, pos) = pos cost table.
  static std::vector<std::vector<double>> position_cost_table(int n);
};

// ---------------------------------------------------------------------------
// Processing-time ordering
// ---------------------------------------------------------------------------

struct TptInstance {
  int n = 0;
  std::vector<std::int64_t> size;    ///< sz(i) > 0, 1-based packet i at size[i-1]
  std::vector<std::int64_t> effort;  ///< p(j) > 0, per-time-unit effort
  std::optional<std::int64_t> target;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Rechargeable resources
// ---------------------------------------------------------------------------

///// Linear charge-duration model: fixed + per_unit * (c2 - c1).
struct ChargeTime {
  double fixed = 0.0;
  double per_unit = 0.0;

  double operator()(std::int64_t c1, std::int64_t c2) const {
    return fixed + per_unit * static_cast<double>(c2 - c1);
  }
};

/// Sorted resource types plus the charging-point predicate and the
/// optional charge-time function.
struct ResourceCatalog {
  std::vector<std::int64_t> cap;  ///< non-decreasing
  std::vector<double> cost;       ///< non-decreasing
  std::vector<Vertex> charging_points;
  std::optional<ChargeTime> tcharge;

  int type_count() const { return static_cast<int>(cap.size()); }
  bool is_charging_point(Vertex v) const;
  double charge_time(Vertex v, std::int64_t c1, std::int64_t c2) const;
  void validate() const;
};

// ---------------------------------------------------------------------------
// Frequency multicast
// ---------------------------------------------------------------------------

/// Undirected tree with frequency constraints on the degree-1 vertices and
/// either a per-node-per-frequency conversion cost table or a per-node
/// conversion matrix. Frequencies are 1..k.
struct FreqInstance {
  int n = 0;
  int k = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::map<Vertex, int> leaf_freq;
  std::vector<std::vector<double>> conv_cost;  ///< n x k, or empty
  std::vector<std::vector<std::vector<double>>> conv_matrix;  ///< n x k x k, or empty

  bool has_matrix() const { return !conv_matrix.empty(); }
  std::vector<std::vector<Vertex>> adjacency() const;
  int degree(Vertex v) const;
  void validate() const;
};

// ---------------------------------------------------------------------------
// Loading / saving
// ---------------------------------------------------------------------------

enum class InstanceKind {
  RootedTree,
  Digraph,
  StreamSystem,
  Reorder,
  Tpt,
  ResourceCatalog,
  FreqMulticast,
};

std::string to_string(InstanceKind kind);
InstanceKind instance_kind_from_string(const std::string& s);

using AnyInstance = std::variant<RootedTree, Digraph, StreamSystem,
                                 ReorderInstance, TptInstance, ResourceCatalog,
                                 FreqInstance>;

InstanceKind kind_of(const AnyInstance& inst);

/// Parses and validates the JSON document at `path`; the document is
/// self-describing via its top-level "kind" field.
AnyInstance load_instance(const std::string& path);
/// As load_instance, but rejects documents whose kind differs from `kind`.
AnyInstance load_instance(const std::string& path, InstanceKind kind);
AnyInstance instance_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const AnyInstance& inst);
void save_instance(const std::string& path, const AnyInstance& inst);

nlohmann::json schedule_to_json(const BroadcastSchedule& sched);
BroadcastSchedule schedule_from_json(const nlohmann::json& j);

template <class T>
T load_typed_instance(const std::string& path) {
  AnyInstance any = load_instance(path);
  if (!std::holds_alternative<T>(any))
    throw ValidationError("instance kind mismatch in " + path);
  return std::get<T>(std::move(any));
}

}  // namespace cdplan
