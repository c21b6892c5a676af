#include "cdplan/tree_broadcast.hpp"

#include <algorithm>
#include <functional>
#include <cassert>
#include <queue>
#include <stdexcept>

namespace cdplan::tree_broadcast {

namespace {

// Orders candidates by tmin(child, state) descending, ties by the
// lexicographically largest tail tmin[state..]; a strict prefix counts as
// smaller than its extension. Final tie on child id for determinism.
struct Candidate {
  int cursor_index;
  Vertex child;
  int state;
};

class CandidateOrder {
 public:
  explicit CandidateOrder(const std::vector<SubtreeStrategy>& strategies)
      : strategies_(&strategies) {}

  // priority_queue comparator: returns true if a has *lower* priority.
  bool operator()(const Candidate& a, const Candidate& b) const {
    const auto& ta = (*strategies_)[a.child].tmin;
    const auto& tb = (*strategies_)[b.child].tmin;
    std::size_t ia = a.state, ib = b.state;
    while (ia < ta.size() && ib < tb.size()) {
      if (ta[ia] != tb[ib]) return ta[ia] < tb[ib];
      ++ia;
      ++ib;
    }
    if ((ia < ta.size()) != (ib < tb.size()))
      return ia >= ta.size();  // shorter tail is smaller
    return a.child > b.child;
  }

 private:
  const std::vector<SubtreeStrategy>* strategies_;
};

void bump(std::uint64_t* ops, std::uint64_t amount = 1) {
  if (ops) *ops += amount;
}

}  // namespace

FeasibleResult feasible(const std::vector<SubtreeStrategy>& strategies,
                        int t_cand, const std::vector<ChildCursor>& cursors,
                        std::uint64_t* ops) {
  FeasibleResult result;
  std::vector<int> state(cursors.size());
  CandidateOrder order(strategies);
  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap(
      order);
  for (std::size_t i = 0; i < cursors.size(); ++i) {
    state[i] = cursors[i].state;
    if (!cursors[i].done) heap.push({static_cast<int>(i), cursors[i].child, state[i]});
    bump(ops);
  }

  int remaining = t_cand;
  while (!heap.empty()) {
    Candidate top = heap.top();
    heap.pop();
    bump(ops);
    const SubtreeStrategy& strat = strategies[top.child];
    int tm = strat.tmin[top.state];
    if (remaining < tm) return result;  // infeasible
    if (remaining > tm) {
      result.sends.push_back(top.child);
    } else {
      if (top.state == strat.nsteps()) return result;  // remaining == 0, child unreached
      result.sends.push_back(strat.snd[top.state]);
      heap.push({top.cursor_index, top.child, top.state + 1});
    }
    --remaining;
  }
  result.feasible = true;
  return result;
}

int search_tmin(const std::vector<SubtreeStrategy>& strategies,
                const std::vector<ChildCursor>& cursors, int lower, int upper,
                SearchMode mode, std::uint64_t* ops) {
  if (mode == SearchMode::Linear) {
    for (int t = lower; t <= upper; ++t) {
      bump(ops);
      if (feasible(strategies, t, cursors, ops).feasible) return t;
    }
    throw std::logic_error("search_tmin: no feasible candidate in range");
  }
  int lo = lower, hi = upper;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    bump(ops);
    if (feasible(strategies, mid, cursors, ops).feasible)
      hi = mid;
    else
      lo = mid + 1;
  }
  if (!feasible(strategies, lo, cursors, ops).feasible)
    throw std::logic_error("search_tmin: no feasible candidate in range");
  return lo;
}

namespace {

// Computes one vertex's strategy; children's strategies are already in
// `strategies`. The cursor set is advanced incrementally send by send,
// which is equivalent to the replay of snd(u, 1..j) from scratch.
void compute_strategy(const RootedTree& tree, Vertex u,
                      std::vector<SubtreeStrategy>& strategies,
                      SearchMode mode, std::uint64_t* ops) {
  SubtreeStrategy& out = strategies[u];
  std::vector<ChildCursor> cursors;
  for (Vertex c : tree.children[u]) cursors.push_back({c, 0, false});

  int prev = tree.n;  // upper bound n-1 applies at step 0 via min below
  while (true) {
    bool any_active = false;
    int lower = 0;
    for (const ChildCursor& cur : cursors) {
      if (cur.done) continue;
      any_active = true;
      lower = std::max(lower, strategies[cur.child].tmin[cur.state]);
    }
    if (!any_active) {
      out.tmin.push_back(0);
      break;
    }
    int upper = std::min(tree.n - 1, prev - 1);
    int tm = search_tmin(strategies, cursors, lower, upper, mode, ops);
    out.tmin.push_back(tm);
    prev = tm;

    // The first send of the feasible simulation at tm is snd(u, step+1).
    FeasibleResult sim = feasible(strategies, tm, cursors, ops);
    assert(sim.feasible && !sim.sends.empty());
    Vertex receiver = sim.sends.front();
    out.snd.push_back(receiver);

    // Advance the cursors by that single send.
    CandidateOrder order(strategies);
    int best = -1;
    for (std::size_t i = 0; i < cursors.size(); ++i) {
      if (cursors[i].done) continue;
      Candidate cand{static_cast<int>(i), cursors[i].child, cursors[i].state};
      if (best < 0 ||
          order(Candidate{best, cursors[best].child, cursors[best].state}, cand))
        best = static_cast<int>(i);
    }
    ChildCursor& chosen = cursors[best];
    if (receiver == chosen.child)
      chosen.done = true;
    else
      ++chosen.state;
  }
}

}  // namespace

Solution solve(const RootedTree& tree, SearchMode mode) {
  tree.validate();
  Solution sol;
  sol.per_vertex.resize(tree.n);

  // bottom-up (reverse BFS) order
  std::vector<Vertex> order;
  order.reserve(tree.n);
  order.push_back(tree.root);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Vertex c : tree.children[order[i]]) order.push_back(c);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    compute_strategy(tree, *it, sol.per_vertex, mode, &sol.ops);

  sol.t_opt = sol.per_vertex[tree.root].tmin[0];

  // Replay the strategy into a round-by-round schedule. informed_round[v]
  // is the round at which v received the message (0 for the root);
  // proxy_sends[v] counts the steps of v's own strategy already performed
  // by ancestors when v becomes informed.
  std::vector<int> informed_round(tree.n, -1);
  std::vector<int> proxy_sends(tree.n, 0);
  std::vector<std::vector<ChildCursor>> cursors(tree.n);
  std::vector<int> budget(tree.n, 0);
  std::vector<Vertex> active;

  auto contains = [&](Vertex ancestor, Vertex v) {
    while (v != tree.root && v != ancestor) v = tree.parent[v];
    return v == ancestor;
  };

  // When x's send #j (0-based) is performed, how many of the receiver's
  // own sends have already happened through the proxy chain? Replays x's
  // cursors up to step j and recurses when step j is itself a proxy.
  std::function<int(Vertex, int)> receiver_proxies = [&](Vertex x,
                                                         int j) -> int {
    std::vector<ChildCursor> cur;
    for (Vertex c : tree.children[x]) cur.push_back({c, 0, false});
    for (int l = 0; l <= j; ++l) {
      Vertex r = sol.per_vertex[x].snd[l];
      for (ChildCursor& c : cur) {
        if (!contains(c.child, r)) continue;
        if (l == j)
          return r == c.child ? c.state : receiver_proxies(c.child, c.state);
        if (r == c.child)
          c.done = true;
        else
          ++c.state;
        break;
      }
    }
    throw std::logic_error("broadcast replay: send outside every subtree");
  };

  auto activate = [&](Vertex u, int round) {
    informed_round[u] = round;
    budget[u] = sol.t_opt - round;
    for (Vertex c : tree.children[u]) cursors[u].push_back({c, 0, false});
    // replay snd(u, 1..proxy_sends[u]) to restore the cursor states
    for (int l = 0; l < proxy_sends[u]; ++l) {
      Vertex r = sol.per_vertex[u].snd[l];
      for (ChildCursor& cur : cursors[u]) {
        if (!contains(cur.child, r)) continue;
        if (r == cur.child)
          cur.done = true;
        else
          ++cur.state;
        break;
      }
    }
    bool any = std::any_of(cursors[u].begin(), cursors[u].end(),
                           [](const ChildCursor& c) { return !c.done; });
    if (any) active.push_back(u);
  };

  activate(tree.root, 0);

  int round = 0;
  CandidateOrder order_cmp(sol.per_vertex);
  while (!active.empty()) {
    ++round;
    std::sort(active.begin(), active.end());
    std::vector<Transmission> txs;
    std::vector<std::pair<Vertex, int>> newly_informed;  // (vertex, proxy count)
    std::vector<Vertex> still_active;
    for (Vertex u : active) {
      int best = -1;
      for (std::size_t i = 0; i < cursors[u].size(); ++i) {
        if (cursors[u][i].done) continue;
        Candidate cand{static_cast<int>(i), cursors[u][i].child,
                       cursors[u][i].state};
        if (best < 0 ||
            order_cmp(Candidate{best, cursors[u][best].child,
                                cursors[u][best].state},
                      cand))
          best = static_cast<int>(i);
      }
      ChildCursor& chosen = cursors[u][best];
      int tm = sol.per_vertex[chosen.child].tmin[chosen.state];
      if (budget[u] < tm)
        throw std::logic_error("broadcast replay: budget below child tmin");
      Vertex receiver;
      if (budget[u] > tm) {
        receiver = chosen.child;
        chosen.done = true;
        newly_informed.emplace_back(receiver, chosen.state);
      } else {
        receiver = sol.per_vertex[chosen.child].snd[chosen.state];
        newly_informed.emplace_back(
            receiver, receiver_proxies(chosen.child, chosen.state));
        ++chosen.state;
      }
      --budget[u];
      txs.push_back({u, receiver});
      if (std::any_of(cursors[u].begin(), cursors[u].end(),
                      [](const ChildCursor& c) { return !c.done; }))
        still_active.push_back(u);
    }
    active = std::move(still_active);
    for (const auto& [v, proxies] : newly_informed) {
      proxy_sends[v] = proxies;
      activate(v, round);
    }
    sol.schedule.rounds.push_back(std::move(txs));
  }

  if (round != sol.t_opt)
    throw std::logic_error("broadcast replay used " + std::to_string(round) +
                           " rounds, expected " + std::to_string(sol.t_opt));
  return sol;
}

}  // namespace cdplan::tree_broadcast
