#include "cdplan/generators.hpp"

#include <algorithm>
#include <numeric>

namespace cdplan::gen {

namespace {

int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::int64_t uniform64(std::mt19937& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace

RootedTree random_tree(int n, std::mt19937& rng) {
  std::vector<Vertex> parents(n, -1);
  for (int i = 1; i < n; ++i) parents[i] = uniform(rng, 0, i - 1);
  return RootedTree::from_parents(std::move(parents));
}

RootedTree random_tree_bounded(int n, int max_children, std::mt19937& rng) {
  std::vector<Vertex> parents(n, -1);
  std::vector<int> child_count(n, 0);
  std::vector<Vertex> eligible{0};
  for (int i = 1; i < n; ++i) {
    const int pick = uniform(rng, 0, static_cast<int>(eligible.size()) - 1);
    const Vertex p = eligible[pick];
    parents[i] = p;
    if (++child_count[p] >= max_children)
      eligible.erase(eligible.begin() + pick);
    eligible.push_back(i);
  }
  return RootedTree::from_parents(std::move(parents));
}

RootedTree star_tree(int n) {
  std::vector<Vertex> parents(n, 0);
  parents[0] = -1;
  return RootedTree::from_parents(std::move(parents));
}

RootedTree path_tree(int n) {
  std::vector<Vertex> parents(n);
  for (int i = 0; i < n; ++i) parents[i] = i - 1;
  return RootedTree::from_parents(std::move(parents));
}

StreamSystem random_stream_system(int n, int m, int a_max, int b_max,
                                  std::mt19937& rng) {
  StreamSystem sys;
  sys.n = n;
  sys.m = m;
  sys.send_cap.resize(n);
  sys.cooldown.resize(n);
  for (int i = 0; i < n; ++i) {
    sys.send_cap[i] = uniform(rng, 1, a_max);
    sys.cooldown[i] = uniform(rng, 0, b_max);
  }
  sys.validate();
  return sys;
}

ReorderInstance random_reorder(int n, Aggregation agg, std::mt19937& rng) {
  ReorderInstance inst;
  inst.n = n;
  inst.agg = agg;
  inst.arrival.resize(n);
  std::iota(inst.arrival.begin(), inst.arrival.end(), 1);
  std::shuffle(inst.arrival.begin(), inst.arrival.end(), rng);
  inst.cost.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      inst.cost[i][j] = static_cast<double>(uniform(rng, 0, 9));
  inst.validate();
  return inst;
}

TptInstance random_tpt(int n, std::int64_t sz_max, std::int64_t p_max,
                       bool with_target, std::mt19937& rng) {
  TptInstance inst;
  inst.n = n;
  inst.size.resize(n);
  inst.effort.resize(n);
  for (int i = 0; i < n; ++i) {
    inst.size[i] = uniform64(rng, 1, sz_max);
    inst.effort[i] = uniform64(rng, 1, p_max);
  }
  if (with_target) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::int64_t target = 0;
    for (int t = 0; t < n; ++t) target += inst.effort[t] * inst.size[perm[t]];
    inst.target = target;
  }
  inst.validate();
  return inst;
}

Digraph random_digraph(int n, int m, std::mt19937& rng) {
  Digraph g;
  g.n = n;
  for (int e = 0; e < m && n > 1; ++e) {
    Edge edge;
    edge.u = uniform(rng, 0, n - 1);
    edge.v = uniform(rng, 0, n - 2);
    if (edge.v >= edge.u) edge.v += 1;  // no self-loops
    g.edges.push_back(edge);
  }
  g.validate();
  return g;
}

void add_rc(Digraph& g, std::int64_t rc_max, std::mt19937& rng) {
  for (Edge& e : g.edges) e.attrs.rc = uniform64(rng, 0, rc_max);
}

void add_durations(Digraph& g, int t_max, std::mt19937& rng) {
  for (Edge& e : g.edges)
    e.attrs.duration = static_cast<double>(uniform(rng, 0, t_max));
}

void add_caps(Digraph& g, int cap_max, std::mt19937& rng) {
  for (Edge& e : g.edges)
    e.attrs.cap = static_cast<double>(uniform(rng, 1, cap_max));
}

void add_profiles(Digraph& g, int cap_max, int steps, std::mt19937& rng) {
  for (Edge& e : g.edges) {
    CapacityProfile profile;
    const int count = uniform(rng, 1, steps);
    double cap = static_cast<double>(uniform(rng, 1, cap_max));
    double time = 0.0;
    profile.steps.emplace_back(time, cap);
    for (int s = 1; s < count && cap > 0; ++s) {
      time += static_cast<double>(uniform(rng, 1, 4));
      cap = static_cast<double>(uniform64(rng, 0, static_cast<std::int64_t>(cap)));
      profile.steps.emplace_back(time, cap);
    }
    profile.validate();
    e.attrs.cap_profile = std::move(profile);
    e.attrs.cap.reset();  // profiles replace any previously set static cap
  }
}

ResourceCatalog random_catalog(int types, std::int64_t cap_max, int n,
                               double charge_prob, bool with_tcharge,
                               std::mt19937& rng) {
  ResourceCatalog cat;
  cat.cap.resize(types);
  cat.cost.resize(types);
  for (int i = 0; i < types; ++i) {
    cat.cap[i] = uniform64(rng, 1, cap_max);
    cat.cost[i] = static_cast<double>(uniform(rng, 1, 100));
  }
  std::sort(cat.cap.begin(), cat.cap.end());
  std::sort(cat.cost.begin(), cat.cost.end());
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (Vertex v = 0; v < n; ++v)
    if (coin(rng) < charge_prob) cat.charging_points.push_back(v);
  if (with_tcharge) {
    ChargeTime tc;
    tc.fixed = static_cast<double>(uniform(rng, 0, 3));
    tc.per_unit = static_cast<double>(uniform(rng, 0, 2));
    cat.tcharge = tc;
  }
  cat.validate();
  return cat;
}

FreqInstance random_freq(int n, int k, bool matrix, int max_degree,
                         std::mt19937& rng) {
  FreqInstance inst;
  inst.n = n;
  inst.k = k;
  if (n >= 3 && max_degree < 2)
    throw ValidationError("max_degree must be at least 2 for n >= 3");
  std::vector<int> degree(n, 0);
  std::vector<Vertex> eligible{0};
  for (int i = 1; i < n; ++i) {
    const int pick = uniform(rng, 0, static_cast<int>(eligible.size()) - 1);
    const Vertex p = eligible[pick];
    inst.edges.emplace_back(p, i);
    degree[p] += 1;
    degree[i] += 1;
    if (degree[p] >= max_degree) eligible.erase(eligible.begin() + pick);
    if (degree[i] < max_degree) eligible.push_back(i);
  }
  for (Vertex v = 0; v < n; ++v)
    if (n == 1 || degree[v] == 1) inst.leaf_freq[v] = uniform(rng, 1, k);
  if (matrix) {
    inst.conv_matrix.assign(
        n, std::vector<std::vector<double>>(k, std::vector<double>(k, 0.0)));
    for (int v = 0; v < n; ++v)
      for (int fin = 0; fin < k; ++fin)
        for (int fout = 0; fout < k; ++fout)
          inst.conv_matrix[v][fin][fout] =
              fin == fout ? 0.0 : static_cast<double>(uniform(rng, 0, 9));
  } else {
    inst.conv_cost.assign(n, std::vector<double>(k, 0.0));
    for (int v = 0; v < n; ++v)
      for (int f = 0; f < k; ++f)
        inst.conv_cost[v][f] = static_cast<double>(uniform(rng, 0, 9));
  }
  inst.validate();
  return inst;
}

}  // namespace cdplan::gen
