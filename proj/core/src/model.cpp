#include "cdplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cdplan {

using nlohmann::json;

// ---------------------------------------------------------------------------
// RootedTree
// ---------------------------------------------------------------------------

RootedTree RootedTree::from_parents(std::vector<Vertex> parents) {
  RootedTree t;
  t.n = static_cast<int>(parents.size());
  t.parent = std::move(parents);
  int roots = 0;
  for (Vertex v = 0; v < t.n; ++v) {
    if (t.parent[v] < 0) {
      ++roots;
      t.root = v;
    }
  }
  if (roots != 1)
    throw ValidationError("rooted tree must have exactly one root, found " +
                          std::to_string(roots));
  t.children.assign(t.n, {});
  for (Vertex v = 0; v < t.n; ++v) {
    if (v == t.root) continue;
    Vertex p = t.parent[v];
    if (p < 0 || p >= t.n)
      throw ValidationError("parent id out of range for vertex " +
                            std::to_string(v));
    t.children[p].push_back(v);
  }
  t.validate();
  return t;
}

void RootedTree::validate() const {
  if (n <= 0) throw ValidationError("tree must have at least one vertex");
  if (static_cast<int>(parent.size()) != n ||
      static_cast<int>(children.size()) != n)
    throw ValidationError("parent/children arrays must have length n");
  if (root < 0 || root >= n || parent[root] != -1)
    throw ValidationError("root must be the unique vertex without a parent");
  // parent/children mutual consistency
  std::vector<int> child_count(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    std::set<Vertex> seen;
    for (Vertex c : children[u]) {
      if (c < 0 || c >= n || parent[c] != u)
        throw ValidationError("children list inconsistent with parent array");
      if (!seen.insert(c).second)
        throw ValidationError("duplicate child in children list");
      ++child_count[c];
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (v != root && child_count[v] != 1)
      throw ValidationError("every non-root vertex must appear in exactly one "
                            "children list");
  }
  // acyclicity + reachability from root
  std::vector<bool> visited(n, false);
  std::vector<Vertex> stack{root};
  visited[root] = true;
  int reached = 0;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex c : children[u]) {
      if (visited[c]) throw ValidationError("cycle detected in tree");
      visited[c] = true;
      stack.push_back(c);
    }
  }
  if (reached != n)
    throw ValidationError("all vertices must be reachable from the root");
}

int RootedTree::subtree_size(Vertex u) const {
  int count = 0;
  std::vector<Vertex> stack{u};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    ++count;
    for (Vertex c : children[v]) stack.push_back(c);
  }
  return count;
}

bool RootedTree::is_proper_descendant(Vertex v, Vertex ancestor) const {
  if (v == ancestor) return false;
  Vertex cur = v;
  while (cur != root) {
    cur = parent[cur];
    if (cur == ancestor) return true;
  }
  return false;
}

std::vector<Vertex> RootedTree::path_down(Vertex ancestor, Vertex v) const {
  std::vector<Vertex> rev;
  Vertex cur = v;
  while (true) {
    rev.push_back(cur);
    if (cur == ancestor) break;
    if (cur == root)
      throw ValidationError("path_down: vertex is not a descendant");
    cur = parent[cur];
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

// ---------------------------------------------------------------------------
// CapacityProfile / Digraph
// ---------------------------------------------------------------------------

double CapacityProfile::at(double t) const {
  double value = steps.front().second;
  for (const auto& [time, capv] : steps) {
    if (time <= t)
      value = capv;
    else
      break;
  }
  return value;
}

void CapacityProfile::validate() const {
  if (steps.empty()) throw ValidationError("capacity profile must be nonempty");
  if (steps.front().first != 0.0)
    throw ValidationError("capacity profile must start at time 0");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].second < 0)
      throw ValidationError("capacity profile values must be nonnegative");
    if (i > 0) {
      if (steps[i].first <= steps[i - 1].first)
        throw ValidationError("capacity profile times must strictly increase");
      if (steps[i].second > steps[i - 1].second)
        throw ValidationError(
            "capacity profile must be monotonically non-increasing");
    }
  }
}

void Digraph::validate() const {
  if (n <= 0) throw ValidationError("digraph must have at least one vertex");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw ValidationError("edge endpoint out of range");
    if (e.u == e.v)
      throw ValidationError("self-loop on vertex " + std::to_string(e.u));
    if (e.attrs.rc && *e.attrs.rc < 0)
      throw ValidationError("resource consumption must be nonnegative");
    if (e.attrs.duration && *e.attrs.duration < 0)
      throw ValidationError("edge duration must be nonnegative");
    if (e.attrs.cap && *e.attrs.cap < 0)
      throw ValidationError("edge capacity must be nonnegative");
    if (e.attrs.cap && e.attrs.cap_profile)
      throw ValidationError("at most one of cap / cap_profile may be set");
    if (e.attrs.cap_profile) e.attrs.cap_profile->validate();
  }
}

// ---------------------------------------------------------------------------
// Broadcast schedule validation
// ---------------------------------------------------------------------------

ScheduleCheck validate_broadcast_schedule(const RootedTree& tree,
                                          const BroadcastSchedule& sched) {
  auto fail = [](std::string msg) { return ScheduleCheck{false, std::move(msg)}; };

  std::vector<bool> informed(tree.n, false);
  std::vector<int> received_count(tree.n, 0);
  informed[tree.root] = true;

  for (std::size_t r = 0; r < sched.rounds.size(); ++r) {
    std::vector<bool> used(tree.n, false);
    for (const Transmission& tx : sched.rounds[r]) {
      if (tx.sender < 0 || tx.sender >= tree.n || tx.receiver < 0 ||
          tx.receiver >= tree.n)
        return fail("round " + std::to_string(r) + ": vertex out of range");
      if (!tree.is_proper_descendant(tx.receiver, tx.sender))
        return fail("round " + std::to_string(r) + ": receiver " +
                    std::to_string(tx.receiver) +
                    " is not a proper descendant of sender " +
                    std::to_string(tx.sender));
      if (!informed[tx.sender])
        return fail("round " + std::to_string(r) + ": sender " +
                    std::to_string(tx.sender) +
                    " has not received the message yet");
      for (Vertex v : tree.path_down(tx.sender, tx.receiver)) {
        if (used[v])
          return fail("round " + std::to_string(r) + ": transmission paths are "
                      "not vertex-disjoint at vertex " + std::to_string(v) +
                      " (pair " + std::to_string(tx.sender) + "->" +
                      std::to_string(tx.receiver) + ")");
        used[v] = true;
      }
      ++received_count[tx.receiver];
    }
    // receivers become informed only after the round completes
    for (const Transmission& tx : sched.rounds[r]) informed[tx.receiver] = true;
  }

  for (Vertex v = 0; v < tree.n; ++v) {
    if (v == tree.root) {
      if (received_count[v] != 0)
        return fail("root must never appear as a receiver");
    } else if (received_count[v] != 1) {
      return fail("vertex " + std::to_string(v) + " appears as receiver " +
                  std::to_string(received_count[v]) + " times, expected 1");
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// StreamSystem / ReorderInstance / TptInstance
// ---------------------------------------------------------------------------

int StreamSystem::max_send_cap() const {
  return *std::max_element(send_cap.begin(), send_cap.end());
}

int StreamSystem::max_cooldown() const {
  return *std::max_element(cooldown.begin(), cooldown.end());
}

void StreamSystem::validate() const {
  if (n < 1) throw ValidationError("stream system needs n >= 1");
  if (m < 0) throw ValidationError("packet count must be nonnegative");
  if (static_cast<int>(send_cap.size()) != n ||
      static_cast<int>(cooldown.size()) != n)
    throw ValidationError("A and B arrays must have length n");
  for (int a : send_cap)
    if (a < 1) throw ValidationError("send capacities must satisfy A_i >= 1");
  for (int b : cooldown)
    if (b < 0) throw ValidationError("cooldowns must satisfy B_i >= 0");
}

void ReorderInstance::validate() const {
  if (n < 1) throw ValidationError("reorder instance needs n >= 1");
  if (static_cast<int>(arrival.size()) != n)
    throw ValidationError("arrival order must have length n");
  std::vector<bool> seen(n + 1, false);
  for (int x : arrival) {
    if (x < 1 || x > n || seen[x])
      throw ValidationError("arrival order must be a permutation of 1..n");
    seen[x] = true;
  }
  if (static_cast<int>(cost.size()) != n)
    throw ValidationError("cost table must be n x n");
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("cost table must be n x n");
    for (double c : row)
      if (c < 0) throw ValidationError("move costs must be nonnegative");
  }
}

std::vector<std::vector<double>> ReorderInstance::position_cost_table(int n) {
  std::vector<std::vector<double>> table(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int pos = 0; pos < n; ++pos) table[i][pos] = pos + 1;
  return table;
}

void TptInstance::validate() const {
  if (n < 1) throw ValidationError("tpt instance needs n >= 1");
  if (static_cast<int>(size.size()) != n ||
      static_cast<int>(effort.size()) != n)
    throw ValidationError("size and effort arrays must have length n");
  for (auto s : size)
    if (s <= 0) throw ValidationError("packet sizes must be positive");
  for (auto p : effort)
    if (p <= 0) throw ValidationError("processing efforts must be positive");
}

// ---------------------------------------------------------------------------
// ResourceCatalog
// ---------------------------------------------------------------------------

bool ResourceCatalog::is_charging_point(Vertex v) const {
  return std::find(charging_points.begin(), charging_points.end(), v) !=
         charging_points.end();
}

double ResourceCatalog::charge_time(Vertex, std::int64_t c1,
                                    std::int64_t c2) const {
  if (!tcharge) return 0.0;
  return (*tcharge)(c1, c2);
}

void ResourceCatalog::validate() const {
  if (cap.empty()) throw ValidationError("resource catalog must be nonempty");
  if (cap.size() != cost.size())
    throw ValidationError("cap and cost arrays must have equal length");
  for (std::size_t i = 0; i < cap.size(); ++i) {
    if (cap[i] < 0) throw ValidationError("capacities must be nonnegative");
    if (cost[i] < 0) throw ValidationError("costs must be nonnegative");
    if (i > 0 && cap[i] < cap[i - 1])
      throw ValidationError("capacities must be non-decreasing");
    if (i > 0 && cost[i] < cost[i - 1])
      throw ValidationError("costs must be non-decreasing");
  }
  for (Vertex v : charging_points)
    if (v < 0) throw ValidationError("charging point id must be nonnegative");
  if (tcharge && (tcharge->fixed < 0 || tcharge->per_unit < 0))
    throw ValidationError("charge times must be nonnegative");
}

// ---------------------------------------------------------------------------
// FreqInstance
// ---------------------------------------------------------------------------

std::vector<std::vector<Vertex>> FreqInstance::adjacency() const {
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

int FreqInstance::degree(Vertex v) const {
  int d = 0;
  for (const auto& [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

void FreqInstance::validate() const {
  if (n < 1) throw ValidationError("frequency instance needs n >= 1");
  if (k < 1) throw ValidationError("frequency count must satisfy k >= 1");
  if (static_cast<int>(edges.size()) != n - 1)
    throw ValidationError("tree must have exactly n-1 edges");
  auto adj = adjacency();
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loop in tree");
  }
  // connectivity (with n-1 edges this also implies acyclicity)
  std::vector<bool> visited(n, false);
  std::vector<Vertex> stack{0};
  visited[0] = true;
  int reached = 0;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex w : adj[u])
      if (!visited[w]) {
        visited[w] = true;
        stack.push_back(w);
      }
  }
  if (reached != n) throw ValidationError("tree must be connected");

  for (Vertex v = 0; v < n; ++v) {
    bool is_leaf = n > 1 && degree(v) == 1;
    bool constrained = leaf_freq.count(v) > 0;
    if (is_leaf && !constrained)
      throw ValidationError("leaf vertex " + std::to_string(v) +
                            " must have a receive frequency");
    if (!is_leaf && constrained)
      throw ValidationError("non-leaf vertex " + std::to_string(v) +
                            " must not have a receive frequency");
  }
  for (const auto& [v, fr] : leaf_freq)
    if (fr < 1 || fr > k)
      throw ValidationError("leaf frequency out of range 1..k");

  if (conv_cost.empty() == conv_matrix.empty())
    throw ValidationError(
        "exactly one of conv_cost / conv_matrix must be present");
  if (!conv_cost.empty()) {
    if (static_cast<int>(conv_cost.size()) != n)
      throw ValidationError("conv_cost must be n x k");
    for (const auto& row : conv_cost) {
      if (static_cast<int>(row.size()) != k)
        throw ValidationError("conv_cost must be n x k");
      for (double c : row)
        if (!(c >= 0) || !std::isfinite(c))
          throw ValidationError("conversion costs must be finite and >= 0");
    }
  } else {
    if (static_cast<int>(conv_matrix.size()) != n)
      throw ValidationError("conv_matrix must be n x k x k");
    for (const auto& mat : conv_matrix) {
      if (static_cast<int>(mat.size()) != k)
        throw ValidationError("conv_matrix must be n x k x k");
      for (const auto& row : mat) {
        if (static_cast<int>(row.size()) != k)
          throw ValidationError("conv_matrix must be n x k x k");
        for (double c : row)
          if (!(c >= 0) || !std::isfinite(c))
            throw ValidationError("conversion costs must be finite and >= 0");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::RootedTree: return "rooted_tree";
    case InstanceKind::Digraph: return "digraph";
    case InstanceKind::StreamSystem: return "stream_system";
    case InstanceKind::Reorder: return "reorder";
    case InstanceKind::Tpt: return "tpt";
    case InstanceKind::ResourceCatalog: return "resource_catalog";
    case InstanceKind::FreqMulticast: return "freq_multicast";
  }
  throw std::logic_error("unknown instance kind");
}

InstanceKind instance_kind_from_string(const std::string& s) {
  if (s == "rooted_tree") return InstanceKind::RootedTree;
  if (s == "digraph") return InstanceKind::Digraph;
  if (s == "stream_system") return InstanceKind::StreamSystem;
  if (s == "reorder") return InstanceKind::Reorder;
  if (s == "tpt") return InstanceKind::Tpt;
  if (s == "resource_catalog") return InstanceKind::ResourceCatalog;
  if (s == "freq_multicast") return InstanceKind::FreqMulticast;
  throw ParseError("unknown instance kind \"" + s + "\"");
}

InstanceKind kind_of(const AnyInstance& inst) {
  return static_cast<InstanceKind>(inst.index());
}

namespace {

template <class T>
T require(const json& j, const char* field) {
  if (!j.contains(field))
    throw ParseError(std::string("missing field \"") + field + "\"");
  try {
    return j.at(field).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field \"") + field + "\": " + e.what());
  }
}

json profile_to_json(const CapacityProfile& p) {
  json arr = json::array();
  for (const auto& [t, c] : p.steps) arr.push_back({t, c});
  return arr;
}

CapacityProfile profile_from_json(const json& j) {
  CapacityProfile p;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError("cap_profile entries must be [time, capacity] pairs");
    p.steps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  p.validate();
  return p;
}

json tree_to_json(const RootedTree& t) {
  return json{{"kind", "rooted_tree"}, {"n", t.n}, {"parents", t.parent}};
}

RootedTree tree_from_json(const json& j) {
  auto parents = require<std::vector<Vertex>>(j, "parents");
  return RootedTree::from_parents(std::move(parents));
}

json digraph_to_json(const Digraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges) {
    json je{{"u", e.u}, {"v", e.v}};
    if (e.attrs.rc) je["rc"] = *e.attrs.rc;
    if (e.attrs.duration) je["t"] = *e.attrs.duration;
    if (e.attrs.cap) je["cap"] = *e.attrs.cap;
    if (e.attrs.cap_profile) je["cap_profile"] = profile_to_json(*e.attrs.cap_profile);
    edges.push_back(std::move(je));
  }
  return json{{"kind", "digraph"}, {"n", g.n}, {"edges", std::move(edges)}};
}

Digraph digraph_from_json(const json& j) {
  Digraph g;
  g.n = require<int>(j, "n");
  if (!j.contains("edges")) throw ParseError("missing field \"edges\"");
  for (const json& je : j.at("edges")) {
    Edge e;
    e.u = require<Vertex>(je, "u");
    e.v = require<Vertex>(je, "v");
    if (je.contains("rc")) e.attrs.rc = je.at("rc").get<std::int64_t>();
    if (je.contains("t")) e.attrs.duration = je.at("t").get<double>();
    if (je.contains("cap")) e.attrs.cap = je.at("cap").get<double>();
    if (je.contains("cap_profile"))
      e.attrs.cap_profile = profile_from_json(je.at("cap_profile"));
    g.edges.push_back(std::move(e));
  }
  g.validate();
  return g;
}

json streams_to_json(const StreamSystem& s) {
  return json{{"kind", "stream_system"},
              {"n", s.n},
              {"m", s.m},
              {"A", s.send_cap},
              {"B", s.cooldown}};
}

StreamSystem streams_from_json(const json& j) {
  StreamSystem s;
  s.n = require<int>(j, "n");
  s.m = require<int>(j, "m");
  s.send_cap = require<std::vector<int>>(j, "A");
  s.cooldown = require<std::vector<int>>(j, "B");
  s.validate();
  return s;
}

json reorder_to_json(const ReorderInstance& r) {
  return json{{"kind", "reorder"},
              {"n", r.n},
              {"p", r.arrival},
              {"agg", r.agg == Aggregation::Sum ? "sum" : "max"},
              {"cost", r.cost}};
}

ReorderInstance reorder_from_json(const json& j) {
  ReorderInstance r;
  r.n = require<int>(j, "n");
  r.arrival = require<std::vector<int>>(j, "p");
  std::string agg = j.value("agg", "sum");
  if (agg == "sum")
    r.agg = Aggregation::Sum;
  else if (agg == "max")
    r.agg = Aggregation::Max;
  else
    throw ParseError("agg must be \"sum\" or \"max\"");
  if (j.contains("cost"))
    r.cost = j.at("cost").get<std::vector<std::vector<double>>>();
  else
    r.cost = ReorderInstance::position_cost_table(r.n);
  r.validate();
  return r;
}

json tpt_to_json(const TptInstance& t) {
  json j{{"kind", "tpt"}, {"n", t.n}, {"sz", t.size}, {"p", t.effort}};
  if (t.target) j["target"] = *t.target;
  return j;
}

TptInstance tpt_from_json(const json& j) {
  TptInstance t;
  t.n = require<int>(j, "n");
  t.size = require<std::vector<std::int64_t>>(j, "sz");
  t.effort = require<std::vector<std::int64_t>>(j, "p");
  if (j.contains("target")) t.target = j.at("target").get<std::int64_t>();
  t.validate();
  return t;
}

json catalog_to_json(const ResourceCatalog& c) {
  json j{{"kind", "resource_catalog"},
         {"cap", c.cap},
         {"cost", c.cost},
         {"charging_points", c.charging_points}};
  if (c.tcharge)
    j["tcharge"] = {{"fixed", c.tcharge->fixed},
                    {"per_unit", c.tcharge->per_unit}};
  return j;
}

ResourceCatalog catalog_from_json(const json& j) {
  ResourceCatalog c;
  c.cap = require<std::vector<std::int64_t>>(j, "cap");
  c.cost = require<std::vector<double>>(j, "cost");
  c.charging_points = j.value("charging_points", std::vector<Vertex>{});
  if (j.contains("tcharge")) {
    ChargeTime tc;
    tc.fixed = j.at("tcharge").value("fixed", 0.0);
    tc.per_unit = j.at("tcharge").value("per_unit", 0.0);
    c.tcharge = tc;
  }
  c.validate();
  return c;
}

json freq_to_json(const FreqInstance& f) {
  json edges = json::array();
  for (const auto& [u, v] : f.edges) edges.push_back({u, v});
  json leaves = json::object();
  for (const auto& [v, fr] : f.leaf_freq) leaves[std::to_string(v)] = fr;
  json j{{"kind", "freq_multicast"},
         {"n", f.n},
         {"k", f.k},
         {"edges", std::move(edges)},
         {"leaf_freq", std::move(leaves)}};
  if (!f.conv_cost.empty()) j["conv_cost"] = f.conv_cost;
  if (!f.conv_matrix.empty()) j["conv_matrix"] = f.conv_matrix;
  return j;
}

FreqInstance freq_from_json(const json& j) {
  FreqInstance f;
  f.n = require<int>(j, "n");
  f.k = require<int>(j, "k");
  if (!j.contains("edges")) throw ParseError("missing field \"edges\"");
  for (const json& je : j.at("edges")) {
    if (!je.is_array() || je.size() != 2)
      throw ParseError("edges entries must be [u, v] pairs");
    f.edges.emplace_back(je[0].get<Vertex>(), je[1].get<Vertex>());
  }
  if (j.contains("leaf_freq")) {
    for (const auto& [key, val] : j.at("leaf_freq").items())
      f.leaf_freq[std::stoi(key)] = val.get<int>();
  }
  if (j.contains("conv_cost"))
    f.conv_cost = j.at("conv_cost").get<std::vector<std::vector<double>>>();
  if (j.contains("conv_matrix"))
    f.conv_matrix =
        j.at("conv_matrix").get<std::vector<std::vector<std::vector<double>>>>();
  f.validate();
  return f;
}

}  // namespace

AnyInstance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance document must be an object");
  InstanceKind kind = instance_kind_from_string(require<std::string>(j, "kind"));
  switch (kind) {
    case InstanceKind::RootedTree: return tree_from_json(j);
    case InstanceKind::Digraph: return digraph_from_json(j);
    case InstanceKind::StreamSystem: return streams_from_json(j);
    case InstanceKind::Reorder: return reorder_from_json(j);
    case InstanceKind::Tpt: return tpt_from_json(j);
    case InstanceKind::ResourceCatalog: return catalog_from_json(j);
    case InstanceKind::FreqMulticast: return freq_from_json(j);
  }
  throw std::logic_error("unknown instance kind");
}

AnyInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return instance_from_json(j);
}

AnyInstance load_instance(const std::string& path, InstanceKind kind) {
  AnyInstance inst = load_instance(path);
  if (kind_of(inst) != kind)
    throw ValidationError(path + ": expected kind \"" + to_string(kind) +
                          "\", found \"" + to_string(kind_of(inst)) + "\"");
  return inst;
}

json instance_to_json(const AnyInstance& inst) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RootedTree>) return tree_to_json(v);
        else if constexpr (std::is_same_v<T, Digraph>) return digraph_to_json(v);
        else if constexpr (std::is_same_v<T, StreamSystem>) return streams_to_json(v);
        else if constexpr (std::is_same_v<T, ReorderInstance>) return reorder_to_json(v);
        else if constexpr (std::is_same_v<T, TptInstance>) return tpt_to_json(v);
        else if constexpr (std::is_same_v<T, ResourceCatalog>) return catalog_to_json(v);
        else return freq_to_json(v);
      },
      inst);
}

void save_instance(const std::string& path, const AnyInstance& inst) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

json schedule_to_json(const BroadcastSchedule& sched) {
  json rounds = json::array();
  for (const auto& round : sched.rounds) {
    json jr = json::array();
    for (const Transmission& tx : round)
      jr.push_back({{"sender", tx.sender}, {"receiver", tx.receiver}});
    rounds.push_back(std::move(jr));
  }
  return json{{"rounds", std::move(rounds)}};
}

BroadcastSchedule schedule_from_json(const json& j) {
  BroadcastSchedule sched;
  for (const json& jr : j.at("rounds")) {
    std::vector<Transmission> round;
    for (const json& jt : jr)
      round.push_back({require<Vertex>(jt, "sender"),
                       require<Vertex>(jt, "receiver")});
    sched.rounds.push_back(std::move(round));
  }
  return sched;
}

}  // namespace cdplan
