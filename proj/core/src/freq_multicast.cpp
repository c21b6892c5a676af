#include "cdplan/freq_multicast.hpp"

#include <algorithm>
#include <functional>

namespace cdplan::freq_multicast {

namespace {

struct Rooting {
  std::vector<Vertex> parent;
  std::vector<std::vector<Vertex>> sons;
  std::vector<Vertex> order;  ///< BFS order from the root
};

Rooting root_at(const FreqInstance& inst, Vertex src) {
  Rooting r;
  r.parent.assign(inst.n, -1);
  r.sons.assign(inst.n, {});
  auto adj = inst.adjacency();
  std::vector<bool> seen(inst.n, false);
  seen[src] = true;
  r.order.push_back(src);
  for (std::size_t i = 0; i < r.order.size(); ++i)
    for (Vertex w : adj[r.order[i]])
      if (!seen[w]) {
        seen[w] = true;
        r.parent[w] = r.order[i];
        r.sons[r.order[i]].push_back(w);
        r.order.push_back(w);
      }
  return r;
}

// A vertex acts as a constrained leaf iff it has degree 1 and is not the
// vertex currently acting as source.
bool acts_as_leaf(const FreqInstance& inst, Vertex v, Vertex src) {
  return inst.n > 1 && v != src && inst.degree(v) == 1;
}

// --- per-frequency model ---------------------------------------------------

void leaf_table_perfreq(const FreqInstance& inst, Vertex v, NodeTable& t) {
  const int k = inst.k;
  t.cmin_true.assign(k, kInfiniteCost);
  t.cmin_false.assign(k, kInfiniteCost);
  t.cmin_false[inst.leaf_freq.at(v) - 1] = 0.0;
  t.cbest = kInfiniteCost;
}

void internal_table_perfreq(const FreqInstance& inst, Vertex v,
                            const std::vector<Vertex>& sons,
                            const std::vector<NodeTable>& tables, NodeTable& t,
                            std::uint64_t& ops) {
  const int k = inst.k;
  t.cmin_true.assign(k, 0.0);
  t.cmin_false.assign(k, 0.0);
  for (int fr = 0; fr < k; ++fr) {
    double sum = 0.0;
    for (Vertex s : sons) {
      sum += std::min(tables[s].cmin_false[fr], tables[s].cbest);
      ++ops;
    }
    t.cmin_true[fr] = inst.conv_cost[v][fr] + sum;
    t.cmin_false[fr] = sum;  // C_min(v, true, fr) - c(v, fr), saturating
  }
  t.cbest = *std::min_element(t.cmin_true.begin(), t.cmin_true.end());
}

// --- matrix model ----------------------------------------------------------

void leaf_table_matrix(const FreqInstance& inst, Vertex v, NodeTable& t) {
  const int k = inst.k;
  int f = inst.leaf_freq.at(v) - 1;
  t.cmin.assign(k, std::vector<double>(k, kInfiniteCost));
  t.cbest_in.assign(k, kInfiniteCost);
  t.cmin[f][f] = 0.0;
  t.cbest_in[f] = 0.0;
}

void internal_table_matrix(const FreqInstance& inst, Vertex v,
                           const std::vector<Vertex>& sons,
                           const std::vector<NodeTable>& tables, NodeTable& t,
                           std::uint64_t& ops) {
  const int k = inst.k;
  t.cmin.assign(k, std::vector<double>(k, kInfiniteCost));
  t.cbest_in.assign(k, kInfiniteCost);
  for (int fout = 0; fout < k; ++fout) {
    double sum = 0.0;
    for (Vertex s : sons) {
      sum += tables[s].cbest_in[fout];
      ++ops;
    }
    for (int fin = 0; fin < k; ++fin) {
      t.cmin[fin][fout] = inst.conv_matrix[v][fin][fout] + sum;
      ++ops;
    }
  }
  for (int fin = 0; fin < k; ++fin)
    t.cbest_in[fin] = *std::min_element(t.cmin[fin].begin(), t.cmin[fin].end());
}

void compute_table(const FreqInstance& inst, Vertex v, Vertex src,
                   const std::vector<Vertex>& sons,
                   const std::vector<NodeTable>& tables, NodeTable& t,
                   std::uint64_t& ops) {
  if (acts_as_leaf(inst, v, src)) {
    if (inst.has_matrix())
      leaf_table_matrix(inst, v, t);
    else
      leaf_table_perfreq(inst, v, t);
  } else {
    if (inst.has_matrix())
      internal_table_matrix(inst, v, sons, tables, t, ops);
    else
      internal_table_perfreq(inst, v, sons, tables, t, ops);
  }
}

double table_answer(const FreqInstance& inst, const NodeTable& t) {
  if (inst.has_matrix()) {
    double best = kInfiniteCost;
    for (const auto& row : t.cmin)
      best = std::min(best, *std::min_element(row.begin(), row.end()));
    return best;
  }
  return *std::min_element(t.cmin_false.begin(), t.cmin_false.end());
}

}  // namespace

FixedRootResult solve_fixed_root(const FreqInstance& inst, Vertex src) {
  inst.validate();
  if (src < 0 || src >= inst.n) throw ValidationError("source out of range");

  FixedRootResult result;
  result.tables.resize(inst.n);
  if (inst.n == 1) {
    result.cost = 0.0;
    result.plan = Plan{{0}, {0}};
    return result;
  }

  Rooting r = root_at(inst, src);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it)
    compute_table(inst, *it, src, r.sons[*it], result.tables,
                  result.tables[*it], result.ops);

  result.cost = table_answer(inst, result.tables[src]);
  if (result.cost == kInfiniteCost) return result;

  // plan extraction, top-down
  Plan plan;
  plan.sent_freq.assign(inst.n, 0);
  plan.recv_freq.assign(inst.n, 0);
  const int k = inst.k;
  if (inst.has_matrix()) {
    const auto& t = result.tables[src];
    int best_fin = 0, best_fout = 0;
    for (int fin = 0; fin < k; ++fin)
      for (int fout = 0; fout < k; ++fout)
        if (t.cmin[fin][fout] < t.cmin[best_fin][best_fout]) {
          best_fin = fin;
          best_fout = fout;
        }
    plan.recv_freq[src] = best_fin + 1;
    plan.sent_freq[src] = best_fout + 1;
  } else {
    const auto& t = result.tables[src];
    int best = static_cast<int>(std::min_element(t.cmin_false.begin(),
                                                 t.cmin_false.end()) -
                                t.cmin_false.begin());
    plan.recv_freq[src] = best + 1;  // b = false: starts on the sent frequency
    plan.sent_freq[src] = best + 1;
  }
  for (Vertex v : r.order) {
    if (v == src || acts_as_leaf(inst, v, src)) {
      if (v != src) plan.recv_freq[v] = plan.sent_freq[r.parent[v]];
      continue;
    }
    int fin = plan.sent_freq[r.parent[v]] - 1;
    plan.recv_freq[v] = fin + 1;
    const auto& t = result.tables[v];
    if (inst.has_matrix()) {
      int best = static_cast<int>(
          std::min_element(t.cmin[fin].begin(), t.cmin[fin].end()) -
          t.cmin[fin].begin());
      plan.sent_freq[v] = best + 1;
    } else {
      // keep the parent's frequency on ties
      if (t.cmin_false[fin] <= t.cbest) {
        plan.sent_freq[v] = fin + 1;
      } else {
        int best = static_cast<int>(std::min_element(t.cmin_true.begin(),
                                                     t.cmin_true.end()) -
                                    t.cmin_true.begin());
        plan.sent_freq[v] = best + 1;
      }
    }
  }
  result.plan = std::move(plan);
  return result;
}

AllRootsResult solve_all_roots(const FreqInstance& inst) {
  inst.validate();
  AllRootsResult result;
  result.cost.assign(inst.n, kInfiniteCost);
  if (inst.n == 1) {
    result.cost[0] = 0.0;
    return result;
  }

  const Vertex r = 0;
  Rooting rooting = root_at(inst, r);
  std::vector<std::vector<Vertex>>& sons = rooting.sons;
  const std::vector<Vertex>& parent = rooting.parent;

  std::vector<NodeTable> base(inst.n);
  for (auto it = rooting.order.rbegin(); it != rooting.order.rend(); ++it)
    compute_table(inst, *it, r, sons[*it], base, base[*it], result.ops);
  result.cost[r] = table_answer(inst, base[r]);

  std::vector<NodeTable> aux = base;

  std::function<void(Vertex)> top_down = [&](Vertex i) {
    if (i != r) {
      Vertex p = parent[i];
      std::vector<Vertex> saved_p = sons[p];
      std::vector<Vertex> saved_i = sons[i];
      sons[p].erase(std::find(sons[p].begin(), sons[p].end(), i));
      if (p != r) sons[p].push_back(parent[p]);
      // p is no longer the source: a degree-1 p becomes a constrained leaf
      compute_table(inst, p, i, sons[p], aux, aux[p], result.ops);
      sons[i].push_back(p);
      compute_table(inst, i, i, sons[i], aux, aux[i], result.ops);
      result.cost[i] = table_answer(inst, aux[i]);
      sons[p] = std::move(saved_p);
      sons[i] = std::move(saved_i);
    }
    // children mutate sons[i] while rerooting; iterate over a copy
    const std::vector<Vertex> kids = sons[i];
    for (Vertex j : kids) top_down(j);
    aux[i] = base[i];
  };
  top_down(r);
  return result;
}

double replay_plan_cost(const FreqInstance& inst, Vertex src, const Plan& plan) {
  inst.validate();
  if (inst.n == 1) return 0.0;
  Rooting r = root_at(inst, src);
  double cost = 0.0;
  for (Vertex v : r.order) {
    if (acts_as_leaf(inst, v, src)) {
      int received = plan.sent_freq[r.parent[v]];
      if (received != inst.leaf_freq.at(v))
        throw ValidationError("plan replay: leaf " + std::to_string(v) +
                              " receives frequency " + std::to_string(received) +
                              ", requires " +
                              std::to_string(inst.leaf_freq.at(v)));
      continue;
    }
    int fout = plan.sent_freq[v];
    if (fout < 1 || fout > inst.k)
      throw ValidationError("plan replay: forwarding vertex without frequency");
    if (inst.has_matrix()) {
      int fin = v == src ? plan.recv_freq[v] : plan.sent_freq[r.parent[v]];
      if (fin < 1 || fin > inst.k)
        throw ValidationError("plan replay: missing incoming frequency");
      cost += inst.conv_matrix[v][fin - 1][fout - 1];
    } else if (v != src) {
      int fin = plan.sent_freq[r.parent[v]];
      if (fin != fout) cost += inst.conv_cost[v][fout - 1];
    }
  }
  return cost;
}

}  // namespace cdplan::freq_multicast
