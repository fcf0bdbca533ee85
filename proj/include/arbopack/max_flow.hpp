#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "arbopack/digraph.hpp"

namespace arbopack::detail {

// Dinic's algorithm with every digraph edge as a unit-capacity arc, so
// parallel edges add up.
class UnitFlow {
 public:
  UnitFlow(const Digraph& g, const std::vector<bool>& mask) : n_(g.vertex_count()), head_(n_, -1) {
    for (std::size_t p = 0; p < g.edge_count(); ++p)
      if (mask[p]) {
        add_arc(g.tail_index(p), g.head_index(p));
        positions_.push_back(p);
      }
  }

  /// Flow value from s to t, stopping early once `limit` is reached.
  std::size_t run(std::size_t s, std::size_t t,
                  std::size_t limit = std::numeric_limits<std::size_t>::max()) {
    for (auto& a : arcs_) a.cap = a.original;
    std::size_t flow = 0;
    while (flow < limit && bfs(s, t)) {
      iter_.assign(head_.begin(), head_.end());
      while (flow < limit) {
        if (!dfs(s, t)) break;
        ++flow;
      }
    }
    return flow;
  }

  /// Edge positions carrying flow after run().
  std::vector<std::size_t> saturated_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < positions_.size(); ++i)
      if (arcs_[2 * i].cap == 0) out.push_back(positions_[i]);
    return out;
  }

  /// Sink side of the minimum cut nearest t after run(): vertices that reach
  /// t in the residual graph.
  std::vector<bool> sink_side(std::size_t t) const {
    std::vector<bool> seen(n_, false);
    std::vector<std::size_t> stack{t};
    seen[t] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        const auto u = arcs_[a].to;
        if (arcs_[a ^ 1].cap > 0 && !seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    int next;
    int cap;
    int original;
  };

  void add_arc(std::size_t u, std::size_t v) {
    arcs_.push_back({v, head_[u], 1, 1});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, head_[v], 0, 0});
    head_[v] = static_cast<int>(arcs_.size()) - 1;
  }

  bool bfs(std::size_t s, std::size_t t) {
    level_.assign(n_, -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  // Unit capacities: each successful call pushes exactly one unit.
  bool dfs(std::size_t v, std::size_t t) {
    if (v == t) return true;
    for (int& a = iter_[v]; a != -1; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.cap > 0 && level_[arc.to] == level_[v] + 1 && dfs(arc.to, t)) {
        --arc.cap;
        ++arcs_[a ^ 1].cap;
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> positions_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace arbopack::detail
