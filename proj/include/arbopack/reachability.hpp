#pragma once

// Directed reachability through an edge set, expressed by finite cuts:
// directed paths, crossing signatures of walks, and the per-target arc
// report on a depth-N contraction.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "arbopack/digraph.hpp"
#include "arbopack/layered_spec.hpp"

namespace arbopack {

/// Edge-once directed walk. An empty edge list is the trivial walk at `start`.
struct FiniteWalk {
  std::vector<EdgeId> edges;
  Vertex start;
  Vertex end;
  bool operator==(const FiniteWalk&) const = default;
};

/// Why `walk` is not a trail of g from start to end, if it is not one.
inline std::optional<std::string> walk_problem(const Digraph& g, const FiniteWalk& walk) {
  if (!g.has_vertex(walk.start) || !g.has_vertex(walk.end)) return "walk endpoint is not a vertex";
  if (walk.edges.empty()) {
    if (walk.start != walk.end) return "trivial walk must start where it ends";
    return std::nullopt;
  }
  EdgeSet seen;
  Vertex at = walk.start;
  for (EdgeId id : walk.edges) {
    if (!g.has_edge(id)) return "unknown edge " + to_string(id);
    if (!seen.insert(id).second) return "edge " + to_string(id) + " traversed twice";
    const auto& e = g.edge(id);
    if (e.tail != at) return "edge " + to_string(id) + " does not continue from " + at;
    at = e.head;
  }
  if (at != walk.end) return "walk ends at " + at + ", not " + walk.end;
  return std::nullopt;
}

inline FiniteWalk make_walk(const Digraph& g, const Vertex& start, std::vector<EdgeId> edges) {
  FiniteWalk walk{std::move(edges), start, start};
  if (!walk.edges.empty()) walk.end = g.edge(walk.edges.back()).head;
  if (auto problem = walk_problem(g, walk)) throw Error(ErrorCode::InvalidWalk, *problem);
  return walk;
}

struct CrossingSignature {
  Cut cut;
  std::size_t forward_count = 0;
  std::size_t backward_count = 0;
};

inline CrossingSignature crossing_signature(const Digraph& g, const EdgeSet& w, const VertexSet& side_y) {
  CrossingSignature sig{cut_of(g, side_y), 0, 0};
  for (EdgeId id : w) {
    (void)g.position_of(id);
    sig.forward_count += sig.cut.forward.contains(id);
    sig.backward_count += sig.cut.backward.contains(id);
  }
  return sig;
}

/// Cut enumeration is exponential; graphs above this many vertices are
/// refused. ARBOPACK_MAX_ENUM overrides the default of 12.
inline std::size_t enumeration_limit() {
  if (const char* env = std::getenv("ARBOPACK_MAX_ENUM")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(std::min<unsigned long long>(v, 30));
  }
  return 12;
}

namespace detail {

// Depth-first search taking out-edges in ascending id order; the first path
// found is returned as edge positions.
inline std::optional<std::vector<std::size_t>> first_path(const Digraph& g, const std::vector<bool>& mask,
                                                          std::size_t s, std::size_t t) {
  std::vector<std::vector<std::size_t>> out(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (auto p : g.out_positions(v))
      if (mask[p]) out[v].push_back(p);
    std::sort(out[v].begin(), out[v].end(), [&](auto a, auto b) { return g.edges()[a].id < g.edges()[b].id; });
  }
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::size_t> path;
  std::vector<std::size_t> cursor(g.vertex_count(), 0);
  std::vector<std::size_t> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    if (v == t) return path;
    if (cursor[v] == out[v].size()) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const auto p = out[v][cursor[v]++];
    const auto h = g.head_index(p);
    if (seen[h]) continue;
    seen[h] = true;
    stack.push_back(h);
    path.push_back(p);
  }
  return std::nullopt;
}

// Vertices from which t is reachable through masked edges.
inline std::vector<bool> reaching(const Digraph& g, std::size_t t, const std::vector<bool>& mask) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::size_t> stack{t};
  seen[t] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto p : g.in_positions(v)) {
      if (!mask[p]) continue;
      const auto u = g.tail_index(p);
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  return seen;
}

}  // namespace detail

struct Reachability {
  bool reachable = false;
  std::optional<FiniteWalk> walk;  // when reachable
  std::optional<Cut> cut;          // when not: no edge of F crosses it forward
};

/// Decides whether every cut with s outside and t inside Y is crossed forward
/// by F. A positive answer carries a directed s-t path; a negative one the cut
/// whose Y side is everything that reaches t inside F.
inline Reachability reachable_by_cut_criterion(const Digraph& g, const EdgeSet& f, const Vertex& s, const Vertex& t) {
  const auto si = g.index_of(s), ti = g.index_of(t);
  if (si == ti) throw Error(ErrorCode::SameEndpoints, "source and target coincide");
  const auto mask = detail::edge_mask(g, f);
  if (auto path = detail::first_path(g, mask, si, ti)) {
    FiniteWalk walk{{}, s, t};
    for (auto p : *path) walk.edges.push_back(g.edges()[p].id);
    return {true, walk, std::nullopt};
  }
  const auto back = detail::reaching(g, ti, mask);
  VertexSet side;
  for (std::size_t v = 0; v < back.size(); ++v)
    if (back[v]) side.insert(g.vertices()[v]);
  return {false, std::nullopt, cut_of(g, side)};
}

/// Inclusion-minimal subset of F meeting every s|t cut forward: the edge set
/// of the first directed path found with lowest edge ids tried first.
inline EdgeSet extract_directed_path(const Digraph& g, const EdgeSet& f, const Vertex& s, const Vertex& t) {
  auto reach = reachable_by_cut_criterion(g, f, s, t);
  if (!reach.reachable) throw Error(ErrorCode::NotReachable, t + " is not reachable from " + s);
  return EdgeSet(reach.walk->edges.begin(), reach.walk->edges.end());
}

struct SignatureViolation {
  Cut cut;
  std::size_t forward_count = 0;
  std::size_t backward_count = 0;
};

/// Checks forward = backward + 1 for the walk's edges on every cut with the
/// start outside and the end inside Y. Only the signatures are examined; the
/// walk's continuity is walk_problem's business.
inline std::optional<SignatureViolation> verify_walk_signature(const Digraph& g, const FiniteWalk& walk) {
  const auto s = g.index_of(walk.start), t = g.index_of(walk.end);
  if (s == t) throw Error(ErrorCode::SameEndpoints, "closed walk has no separating cut");
  const auto n = g.vertex_count();
  if (n > enumeration_limit())
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " vertices exceed the enumeration limit");
  std::vector<int> in_walk(g.edge_count(), 0);
  for (EdgeId id : walk.edges) in_walk[g.position_of(id)] = 1;

  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < n; ++v)
    if (v != s && v != t) free.push_back(v);
  std::vector<bool> in_y(n, false);
  in_y[t] = true;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    for (std::size_t b = 0; b < free.size(); ++b) in_y[free[b]] = (mask >> b) & 1U;
    std::size_t fwd = 0, bwd = 0;
    for (std::size_t p = 0; p < g.edge_count(); ++p) {
      if (!in_walk[p]) continue;
      const bool ty = in_y[g.tail_index(p)], hy = in_y[g.head_index(p)];
      fwd += !ty && hy;
      bwd += ty && !hy;
    }
    if (fwd != bwd + 1) {
      VertexSet side;
      for (std::size_t v = 0; v < n; ++v)
        if (in_y[v]) side.insert(g.vertices()[v]);
      return SignatureViolation{cut_of(g, side), fwd, bwd};
    }
  }
  return std::nullopt;
}

struct TargetVerdict {
  std::string target;
  Vertex located;
  bool reachable = false;
  std::optional<FiniteWalk> path;
  std::optional<Cut> cut;
};

struct ArcFamilyReport {
  std::size_t depth = 0;  // 0 for a plain finite digraph
  Vertex root;
  bool all_reachable = true;
  std::vector<TargetVerdict> targets;
};

inline ArcFamilyReport verify_arc_family(const Digraph& g, const EdgeSet& f, const Vertex& root,
                                         const std::vector<Vertex>& targets) {
  ArcFamilyReport report{0, root, true, {}};
  (void)g.index_of(root);
  for (const auto& t : targets) {
    TargetVerdict verdict{t, t, false, std::nullopt, std::nullopt};
    if (t == root) {
      verdict.reachable = true;
      verdict.path = FiniteWalk{{}, root, root};
    } else {
      auto r = reachable_by_cut_criterion(g, f, root, t);
      verdict.reachable = r.reachable;
      verdict.path = std::move(r.walk);
      verdict.cut = std::move(r.cut);
    }
    report.all_reachable = report.all_reachable && verdict.reachable;
    report.targets.push_back(std::move(verdict));
  }
  return report;
}

/// Reachability of vertices and ends from the root inside F, decided on G_N.
/// F is intersected with E(G_N); targets and root beyond depth N, as well as
/// ends, are queried through their dummies.
inline ArcFamilyReport verify_arc_family(const LayeredDigraphSpec& spec, const EdgeSet& f, const Root& root,
                                         const std::vector<Root>& targets, std::size_t depth) {
  const auto g = contract_at_depth(spec, depth).quotient;
  EdgeSet local;
  for (EdgeId id : f)
    if (g.has_edge(id)) local.insert(id);
  const auto r = locate_root(spec, root, depth);
  std::vector<Vertex> located;
  for (const auto& t : targets) located.push_back(locate_root(spec, t, depth));
  auto report = verify_arc_family(g, local, r, located);
  report.depth = depth;
  for (std::size_t i = 0; i < targets.size(); ++i) report.targets[i].target = to_string(targets[i]);
  return report;
}

}  // namespace arbopack
