#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arbopack/error.hpp"

namespace arbopack {

/// Stable identity of an edge. Parallel edges are told apart only by id, and
/// contractions and restrictions preserve ids.
struct EdgeId {
  std::int64_t value{0};
  auto operator<=>(const EdgeId&) const = default;
};

inline std::string to_string(EdgeId id) { return "e" + std::to_string(id.value); }

using Vertex = std::string;
using VertexSet = std::set<Vertex>;
using EdgeSet = std::set<EdgeId>;

struct Edge {
  EdgeId id;
  Vertex tail;
  Vertex head;
  bool operator==(const Edge&) const = default;
};

/// Finite multidigraph without loops. Immutable once built.
class Digraph {
 public:
  Digraph() = default;

  Digraph(std::vector<Vertex> vertices, std::vector<Edge> edges,
          std::map<Vertex, std::string> labels = {})
      : vertices_(std::move(vertices)), edges_(std::move(edges)), labels_(std::move(labels)) {
    index_.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (!index_.emplace(vertices_[i], i).second)
        throw Error(ErrorCode::DuplicateId, "vertex '" + vertices_[i] + "' listed twice");
    }
    out_.resize(vertices_.size());
    in_.resize(vertices_.size());
    tails_.reserve(edges_.size());
    heads_.reserve(edges_.size());
    for (std::size_t p = 0; p < edges_.size(); ++p) {
      const Edge& e = edges_[p];
      if (!position_.emplace(e.id.value, p).second)
        throw Error(ErrorCode::DuplicateId, "edge id " + std::to_string(e.id.value) + " used twice");
      const auto t = find_index(e.tail);
      const auto h = find_index(e.head);
      if (!t || !h)
        throw Error(ErrorCode::UnknownVertex, "edge " + to_string(e.id) + " has an endpoint outside the vertex set");
      if (*t == *h)
        throw Error(ErrorCode::LoopEdge, "edge " + to_string(e.id) + " is a loop at '" + e.tail + "'");
      tails_.push_back(*t);
      heads_.push_back(*h);
      out_[*t].push_back(p);
      in_[*h].push_back(p);
    }
    for (const auto& [v, _] : labels_) {
      if (!index_.contains(v))
        throw Error(ErrorCode::UnknownVertex, "label for unknown vertex '" + v + "'");
    }
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::map<Vertex, std::string>& labels() const noexcept { return labels_; }

  bool has_vertex(const Vertex& v) const { return index_.contains(v); }
  bool has_edge(EdgeId id) const { return position_.contains(id.value); }

  std::optional<std::size_t> find_index(const Vertex& v) const {
    if (auto it = index_.find(v); it != index_.end()) return it->second;
    return std::nullopt;
  }

  std::size_t index_of(const Vertex& v) const {
    if (auto i = find_index(v)) return *i;
    throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + v + "'");
  }

  std::size_t position_of(EdgeId id) const {
    if (auto it = position_.find(id.value); it != position_.end()) return it->second;
    throw Error(ErrorCode::UnknownEdge, "unknown edge " + to_string(id));
  }

  const Edge& edge(EdgeId id) const { return edges_[position_of(id)]; }

  // Index-level access used by the algorithms.
  std::size_t tail_index(std::size_t pos) const { return tails_[pos]; }
  std::size_t head_index(std::size_t pos) const { return heads_[pos]; }
  const std::vector<std::size_t>& out_positions(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_positions(std::size_t v) const { return in_[v]; }

  EdgeSet edge_ids() const {
    EdgeSet ids;
    for (const auto& e : edges_) ids.insert(e.id);
    return ids;
  }

  VertexSet vertex_set() const { return VertexSet(vertices_.begin(), vertices_.end()); }

  bool operator==(const Digraph& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::map<Vertex, std::string> labels_;
  std::unordered_map<Vertex, std::size_t> index_;
  std::unordered_map<std::int64_t, std::size_t> position_;
  std::vector<std::size_t> tails_;
  std::vector<std::size_t> heads_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

using EdgeTriple = std::tuple<EdgeId, Vertex, Vertex>;

inline Digraph build_digraph(std::vector<Vertex> vertices, const std::vector<EdgeTriple>& triples) {
  std::vector<Edge> edges;
  edges.reserve(triples.size());
  for (const auto& [id, t, h] : triples) edges.push_back({id, t, h});
  return Digraph(std::move(vertices), std::move(edges));
}

/// Ids are assigned 1, 2, ... in input order.
inline Digraph build_digraph(std::vector<Vertex> vertices,
                             const std::vector<std::pair<Vertex, Vertex>>& arcs) {
  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  std::int64_t next = 1;
  for (const auto& [t, h] : arcs) edges.push_back({EdgeId{next++}, t, h});
  return Digraph(std::move(vertices), std::move(edges));
}

/// A cut E(X, Y) seen from the Y side: `forward` runs X -> Y, `backward` Y -> X.
struct Cut {
  VertexSet side_y;
  EdgeSet forward;
  EdgeSet backward;
  bool operator==(const Cut&) const = default;
};

namespace detail {

inline std::vector<bool> membership(const Digraph& g, const VertexSet& side) {
  std::vector<bool> in(g.vertex_count(), false);
  for (const auto& v : side) in[g.index_of(v)] = true;
  return in;
}

inline std::vector<bool> edge_mask(const Digraph& g, const EdgeSet& ids) {
  std::vector<bool> mask(g.edge_count(), false);
  for (EdgeId id : ids) mask[g.position_of(id)] = true;
  return mask;
}

/// Vertices reachable from `source` through edges whose mask bit is set.
inline std::vector<bool> reachable_from(const Digraph& g, std::size_t source,
                                        const std::vector<bool>& mask) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::size_t> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto p : g.out_positions(v)) {
      if (!mask[p]) continue;
      const auto h = g.head_index(p);
      if (!seen[h]) {
        seen[h] = true;
        stack.push_back(h);
      }
    }
  }
  return seen;
}

/// Weak components of the graph restricted to masked edges (all vertices
/// kept); each component lists vertex indices in ascending order and
/// components are ordered by their smallest index.
inline std::vector<std::vector<std::size_t>> weak_components(const Digraph& g,
                                                             const std::vector<bool>& mask,
                                                             const std::vector<bool>& vertex_alive) {
  const auto n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t p = 0; p < g.edge_count(); ++p) {
    if (!mask[p]) continue;
    const auto t = g.tail_index(p), h = g.head_index(p);
    if (!vertex_alive[t] || !vertex_alive[h]) continue;
    const auto a = find(t), b = find(h);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < n; ++v)
    if (vertex_alive[v]) groups[find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(groups.size());
  for (auto& [_, members] : groups) out.push_back(std::move(members));
  return out;
}

inline std::vector<std::vector<std::size_t>> weak_components(const Digraph& g) {
  return weak_components(g, std::vector<bool>(g.edge_count(), true),
                         std::vector<bool>(g.vertex_count(), true));
}

}  // namespace detail

inline bool is_weakly_connected(const Digraph& g) {
  return g.vertex_count() <= 1 || detail::weak_components(g).size() == 1;
}

inline Cut cut_of(const Digraph& g, const VertexSet& side_y) {
  if (side_y.empty()) throw Error(ErrorCode::EmptySide, "cut side Y is empty");
  const auto in_y = detail::membership(g, side_y);
  if (side_y.size() == g.vertex_count())
    throw Error(ErrorCode::FullSide, "cut side Y contains every vertex");
  Cut cut{side_y, {}, {}};
  for (std::size_t p = 0; p < g.edge_count(); ++p) {
    const bool t = in_y[g.tail_index(p)], h = in_y[g.head_index(p)];
    if (!t && h) cut.forward.insert(g.edges()[p].id);
    if (t && !h) cut.backward.insert(g.edges()[p].id);
  }
  return cut;
}

struct Degrees {
  std::size_t in = 0;
  std::size_t out = 0;
  bool operator==(const Degrees&) const = default;
};

inline Degrees degrees(const Digraph& g, const Vertex& v) {
  const auto i = g.index_of(v);
  return {g.in_positions(i).size(), g.out_positions(i).size()};
}

/// Quotient obtained by collapsing each weak component outside a kept set.
struct ContractionResult {
  Digraph quotient;
  std::map<Vertex, Vertex> vertex_map;
  VertexSet dummies;
};

inline std::string dummy_name(const Vertex& least_member) { return "~" + least_member; }

/// Contract every weak component of g - keep to one dummy vertex named after
/// its lexicographically least member. Parallel edges survive; edges inside a
/// contracted component disappear.
inline ContractionResult contract_outside(const Digraph& g, const VertexSet& keep) {
  const auto kept = detail::membership(g, keep);
  std::vector<bool> outside(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) outside[i] = !kept[i];
  const auto components =
      detail::weak_components(g, std::vector<bool>(g.edge_count(), true), outside);

  ContractionResult result;
  std::vector<Vertex> image(g.vertex_count());
  std::vector<Vertex> quotient_vertices;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (kept[i]) {
      image[i] = g.vertices()[i];
      quotient_vertices.push_back(image[i]);
    }
  }
  std::vector<Vertex> dummy_list;
  for (const auto& comp : components) {
    Vertex least = g.vertices()[comp.front()];
    for (auto v : comp) least = std::min(least, g.vertices()[v]);
    const auto name = dummy_name(least);
    for (auto v : comp) image[v] = name;
    dummy_list.push_back(name);
  }
  std::sort(dummy_list.begin(), dummy_list.end());
  quotient_vertices.insert(quotient_vertices.end(), dummy_list.begin(), dummy_list.end());

  std::vector<Edge> edges;
  for (std::size_t p = 0; p < g.edge_count(); ++p) {
    const auto& t = image[g.tail_index(p)];
    const auto& h = image[g.head_index(p)];
    if (t == h) continue;
    edges.push_back({g.edges()[p].id, t, h});
  }
  std::map<Vertex, std::string> labels;
  for (const auto& [v, label] : g.labels())
    if (kept[g.index_of(v)]) labels.emplace(v, label);

  for (std::size_t i = 0; i < g.vertex_count(); ++i) result.vertex_map.emplace(g.vertices()[i], image[i]);
  result.dummies = VertexSet(dummy_list.begin(), dummy_list.end());
  result.quotient = Digraph(std::move(quotient_vertices), std::move(edges), std::move(labels));
  return result;
}

}  // namespace arbopack
