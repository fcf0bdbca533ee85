#pragma once

// Finite arborescence packing: rooted edge-connectivity, a constructive
// packing routine, and an independent verifier for packings.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arbopack/digraph.hpp"
#include "arbopack/max_flow.hpp"

namespace arbopack {

struct ArborescencePacking {
  Vertex root;
  std::vector<EdgeSet> parts;
  bool operator==(const ArborescencePacking&) const = default;
};

/// A side Y (root outside) entered by fewer than the requested number of edges.
struct CutCertificate {
  VertexSet side_y;
  std::size_t deficiency = 0;
  bool operator==(const CutCertificate&) const = default;
};

/// Minimum of d^-(Y) over nonempty Y not containing the root; `value` is
/// empty (unbounded) for a single-vertex graph. `side_y` attains the minimum.
struct RootConnectivity {
  std::optional<std::size_t> value;
  VertexSet side_y;

  bool unbounded() const { return !value.has_value(); }
  bool at_least(std::size_t k) const { return !value || *value >= k; }
};

namespace detail {

struct IndexConnectivity {
  std::size_t value = std::numeric_limits<std::size_t>::max();
  std::vector<bool> side_y;
};

// Minimum over targets of the r -> v flow. With a cap, each flow stops at
// `limit` and the scan stops at the first target below it; only the value is
// meaningful then. Without one, side_y is the minimum cut nearest its target,
// ties going to the later target.
inline IndexConnectivity index_root_connectivity(const Digraph& g, std::size_t root,
                                                 const std::vector<bool>& mask,
                                                 std::optional<std::size_t> limit) {
  IndexConnectivity best;
  if (g.vertex_count() <= 1) return best;
  UnitFlow flow(g, mask);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (v == root) continue;
    const auto f = flow.run(root, v, limit.value_or(std::numeric_limits<std::size_t>::max()));
    if (limit) {
      best.value = std::min(best.value, f);
      if (f < *limit) break;
    } else if (f <= best.value) {
      best.value = f;
      best.side_y = flow.sink_side(v);
    }
  }
  return best;
}

inline VertexSet to_vertex_set(const Digraph& g, const std::vector<bool>& in) {
  VertexSet out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.insert(g.vertices()[i]);
  return out;
}

}  // namespace detail

inline RootConnectivity min_root_connectivity(const Digraph& g, const Vertex& root) {
  const auto r = g.index_of(root);
  if (g.vertex_count() == 1) return {};
  auto best = detail::index_root_connectivity(g, r, std::vector<bool>(g.edge_count(), true), std::nullopt);
  return {best.value, detail::to_vertex_set(g, best.side_y)};
}

/// Pack k edge-disjoint spanning arborescences rooted at `root`, or return a
/// cut entered by fewer than k edges.
///
/// Each arborescence is grown from the root one edge at a time. Candidate
/// edges leave the current tree and are tried in ascending id order; an edge
/// is accepted when the graph minus the tree so far (and the candidate) keeps
/// root-connectivity at least the number of arborescences still owed.
inline std::variant<ArborescencePacking, CutCertificate> pack_arborescences(const Digraph& g,
                                                                            const Vertex& root,
                                                                            std::size_t k) {
  const auto r = g.index_of(root);
  if (k == 0) throw Error(ErrorCode::ZeroK, "k must be at least 1");
  const auto conn = min_root_connectivity(g, root);
  if (!conn.at_least(k)) return CutCertificate{conn.side_y, *conn.value};

  const auto n = g.vertex_count();
  std::vector<bool> available(g.edge_count(), true);
  ArborescencePacking packing{root, {}};
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t owed = k - j - 1;
    std::vector<bool> in_tree(n, false);
    in_tree[r] = true;
    std::size_t tree_size = 1;
    EdgeSet part;
    while (tree_size < n) {
      std::vector<std::size_t> candidates;
      for (std::size_t p = 0; p < g.edge_count(); ++p)
        if (available[p] && in_tree[g.tail_index(p)] && !in_tree[g.head_index(p)]) candidates.push_back(p);
      std::sort(candidates.begin(), candidates.end(),
                [&](auto a, auto b) { return g.edges()[a].id < g.edges()[b].id; });
      bool grown = false;
      for (auto p : candidates) {
        available[p] = false;
        if (owed == 0 || detail::index_root_connectivity(g, r, available, owed).value >= owed) {
          in_tree[g.head_index(p)] = true;
          ++tree_size;
          part.insert(g.edges()[p].id);
          grown = true;
          break;
        }
        available[p] = true;
      }
      if (!grown)
        throw std::logic_error("arborescence growth stalled although the cut condition holds");
    }
    packing.parts.push_back(std::move(part));
  }
  return packing;
}

enum class PackingCondition {
  UnknownRoot,
  Disjointness,
  RootInEdge,
  InDegree,
  NotTree,
};

inline std::string_view to_string(PackingCondition c) {
  switch (c) {
    case PackingCondition::UnknownRoot: return "unknown root";
    case PackingCondition::Disjointness: return "disjointness";
    case PackingCondition::RootInEdge: return "root has an in-edge";
    case PackingCondition::InDegree: return "in-degree";
    case PackingCondition::NotTree: return "not a tree";
  }
  return "?";
}

struct PackingViolation {
  std::optional<std::size_t> part;
  PackingCondition condition;
  std::optional<Vertex> vertex;
  std::size_t count = 0;
  std::string message;
};

/// Checks that the parts are pairwise disjoint spanning arborescences rooted
/// at packing.root. Returns nothing when the packing is valid.
inline std::optional<PackingViolation> verify_arborescence_packing(const Digraph& g,
                                                                    const ArborescencePacking& packing) {
  for (const auto& part : packing.parts)
    for (EdgeId id : part) (void)g.position_of(id);
  const auto r = g.find_index(packing.root);
  if (!r) return PackingViolation{std::nullopt, PackingCondition::UnknownRoot, packing.root, 0,
                                  "root '" + packing.root + "' is not a vertex"};

  std::vector<int> owner(g.edge_count(), -1);
  for (std::size_t i = 0; i < packing.parts.size(); ++i) {
    for (EdgeId id : packing.parts[i]) {
      auto& o = owner[g.position_of(id)];
      if (o >= 0)
        return PackingViolation{i, PackingCondition::Disjointness, std::nullopt, 2,
                                "edge " + to_string(id) + " lies in parts " + std::to_string(o) +
                                    " and " + std::to_string(i)};
      o = static_cast<int>(i);
    }
  }

  for (std::size_t i = 0; i < packing.parts.size(); ++i) {
    const auto mask = detail::edge_mask(g, packing.parts[i]);
    std::vector<std::size_t> indegree(g.vertex_count(), 0);
    for (std::size_t p = 0; p < mask.size(); ++p)
      if (mask[p]) ++indegree[g.head_index(p)];
    if (indegree[*r] != 0)
      return PackingViolation{i, PackingCondition::RootInEdge, packing.root, indegree[*r],
                              "d-(" + packing.root + ")=" + std::to_string(indegree[*r])};
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (v != *r && indegree[v] != 1)
        return PackingViolation{i, PackingCondition::InDegree, g.vertices()[v], indegree[v],
                                "d-(" + g.vertices()[v] + ")=" + std::to_string(indegree[v])};
    }
    const auto comps = detail::weak_components(g, mask, std::vector<bool>(g.vertex_count(), true));
    if (packing.parts[i].size() + 1 != g.vertex_count() || comps.size() != 1)
      return PackingViolation{i, PackingCondition::NotTree, std::nullopt, comps.size(),
                              "part has " + std::to_string(packing.parts[i].size()) + " edges and " +
                                  std::to_string(comps.size()) + " weak components"};
  }
  return std::nullopt;
}

}  // namespace arbopack
