#pragma once

// Minimal r-reachable sets and their local tree structure: unique in-edges,
// and every weak component an arborescence rooted at the root or leaving the
// truncation along a backwards ray.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arbopack/branching.hpp"
#include "arbopack/digraph.hpp"
#include "arbopack/layered_spec.hpp"
#include "arbopack/lifting.hpp"

namespace arbopack {

struct MinimizationResult {
  EdgeSet edges;
  /// For each retained edge, a cut whose only forward F' edge is that edge.
  std::map<EdgeId, Cut> witnesses;
};

namespace detail {

inline std::optional<std::size_t> first_unreached(const std::vector<bool>& seen) {
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) return v;
  return std::nullopt;
}

}  // namespace detail

/// Deletes edges of F in descending id order whenever every vertex stays
/// reachable from the root, leaving an inclusion-minimal spanning r-reachable
/// subset.
inline MinimizationResult minimize_r_reachable(const Digraph& g, const EdgeSet& f, const Vertex& root) {
  const auto r = g.index_of(root);
  auto mask = detail::edge_mask(g, f);
  if (auto v = detail::first_unreached(detail::reachable_from(g, r, mask)))
    throw Error(ErrorCode::NotReachable, "vertex '" + g.vertices()[*v] + "' is not reachable from " + root);

  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    const auto p = g.position_of(*it);
    mask[p] = false;
    if (detail::first_unreached(detail::reachable_from(g, r, mask))) mask[p] = true;
  }

  MinimizationResult result;
  for (std::size_t p = 0; p < mask.size(); ++p)
    if (mask[p]) result.edges.insert(g.edges()[p].id);
  for (EdgeId id : result.edges) {
    const auto p = g.position_of(id);
    mask[p] = false;
    const auto seen = detail::reachable_from(g, r, mask);
    mask[p] = true;
    VertexSet side;
    for (std::size_t v = 0; v < seen.size(); ++v)
      if (!seen[v]) side.insert(g.vertices()[v]);
    result.witnesses.emplace(id, cut_of(g, side));
  }
  return result;
}

struct InEdgeViolation {
  Vertex vertex;
  std::size_t count = 0;
  bool operator==(const InEdgeViolation&) const = default;
};

struct InEdgeReport {
  bool ok = true;
  std::vector<InEdgeViolation> violations;
  /// Boundary vertices whose in-edges may lie beyond the truncation.
  VertexSet indeterminate;
  /// Unique F-in-edge of every vertex that has exactly one.
  std::map<Vertex, EdgeId> parent;
};

/// Every vertex other than the root has exactly one F-in-edge and the root
/// has none. Vertices in `boundary` with fewer than two F-in-edges are
/// Boundary-Indeterminate rather than violations. A root outside g (an end,
/// or a vertex beyond the truncation) is passed as nullopt.
inline InEdgeReport check_in_edge_characterization(const Digraph& g, const EdgeSet& f,
                                                   const std::optional<Vertex>& root,
                                                   const VertexSet& boundary = {}) {
  const auto mask = detail::edge_mask(g, f);
  const auto r = root ? std::optional<std::size_t>(g.index_of(*root)) : std::nullopt;
  InEdgeReport report;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::size_t count = 0;
    std::optional<EdgeId> last;
    for (auto p : g.in_positions(v)) {
      if (!mask[p]) continue;
      ++count;
      last = g.edges()[p].id;
    }
    const auto& name = g.vertices()[v];
    if (count == 1) report.parent.emplace(name, *last);
    const std::size_t want = (r && *r == v) ? 0 : 1;
    if (count == want) continue;
    if (want == 1 && count < 2 && boundary.contains(name)) {
      report.indeterminate.insert(name);
      continue;
    }
    report.violations.push_back({name, count});
  }
  report.ok = report.violations.empty();
  return report;
}

/// Truncation form: F on B_N, with the layer N-1 vertices that receive edges
/// from layer N marked as boundary.
inline InEdgeReport check_in_edge_characterization(const LayeredDigraphSpec& spec, std::size_t depth,
                                                   const EdgeSet& f, const Root& root) {
  const auto g = truncate(spec, depth);
  std::optional<Vertex> r;
  if (const auto* v = std::get_if<AtVertex>(&root); v && g.has_vertex(v->name)) r = v->name;
  return check_in_edge_characterization(g, f, r, boundary_in_vertices(spec, depth));
}

enum class ComponentKind { RootedAtRoot, ExitsToInfinity, Violation };

inline std::string_view to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::RootedAtRoot: return "RootedAtRoot";
    case ComponentKind::ExitsToInfinity: return "ExitsToInfinity";
    case ComponentKind::Violation: return "Violation";
  }
  return "?";
}

struct ComponentVerdict {
  ComponentKind kind = ComponentKind::Violation;
  VertexSet vertices;
  EdgeSet edges;
  std::optional<Vertex> exit;  // ExitsToInfinity: where the backwards chain leaves
  std::string reason;          // Violation
};

struct ComponentReport {
  std::vector<ComponentVerdict> components;
  std::map<Vertex, EdgeId> parent;

  std::size_t count(ComponentKind k) const {
    return static_cast<std::size_t>(std::count_if(components.begin(), components.end(),
                                                  [k](const auto& c) { return c.kind == k; }));
  }
};

/// Follows each vertex's unique in-edge backwards inside its weak component
/// of (V, F). Requires check_in_edge_characterization to have passed.
inline ComponentReport classify_components(const Digraph& g, const EdgeSet& f, const std::optional<Vertex>& root,
                                           const VertexSet& boundary = {}) {
  const auto in_edges = check_in_edge_characterization(g, f, root, boundary);
  if (!in_edges.ok)
    throw Error(ErrorCode::PreconditionFailed,
                "vertex '" + in_edges.violations.front().vertex + "' has " +
                    std::to_string(in_edges.violations.front().count) + " in-edges in F");
  const auto mask = detail::edge_mask(g, f);
  const auto comps = detail::weak_components(g, mask, std::vector<bool>(g.vertex_count(), true));

  std::vector<std::optional<std::size_t>> parent(g.vertex_count());
  for (const auto& [v, id] : in_edges.parent) parent[g.index_of(v)] = g.tail_index(g.position_of(id));

  ComponentReport report;
  report.parent = in_edges.parent;
  for (const auto& comp : comps) {
    ComponentVerdict verdict;
    std::vector<bool> member(g.vertex_count(), false);
    for (auto v : comp) {
      member[v] = true;
      verdict.vertices.insert(g.vertices()[v]);
    }
    for (std::size_t p = 0; p < mask.size(); ++p)
      if (mask[p] && member[g.tail_index(p)]) verdict.edges.insert(g.edges()[p].id);

    // Walk every chain of unique in-edges; it must end without repeating a
    // vertex, and all chains of a component end at the same place.
    std::optional<std::size_t> sink;
    for (auto start : comp) {
      std::vector<bool> visited(g.vertex_count(), false);
      auto at = start;
      bool cycle = false;
      while (parent[at]) {
        visited[at] = true;
        at = *parent[at];
        if (visited[at]) {
          cycle = true;
          break;
        }
      }
      if (cycle) {
        verdict.reason = "directed cycle through '" + g.vertices()[at] + "'";
        break;
      }
      if (sink && *sink != at) {
        verdict.reason = "chains end at both '" + g.vertices()[*sink] + "' and '" + g.vertices()[at] + "'";
        break;
      }
      sink = at;
    }
    if (verdict.reason.empty() && verdict.edges.size() + 1 != comp.size())
      verdict.reason = "weak cycle: " + std::to_string(verdict.edges.size()) + " edges on " +
                       std::to_string(comp.size()) + " vertices";

    if (!verdict.reason.empty()) {
      verdict.kind = ComponentKind::Violation;
    } else if (root && g.vertices()[*sink] == *root) {
      verdict.kind = ComponentKind::RootedAtRoot;
    } else if (boundary.contains(g.vertices()[*sink])) {
      verdict.kind = ComponentKind::ExitsToInfinity;
      verdict.exit = g.vertices()[*sink];
    } else {
      verdict.kind = ComponentKind::Violation;
      verdict.reason = "chains end at '" + g.vertices()[*sink] + "', which is neither the root nor on the boundary";
    }
    report.components.push_back(std::move(verdict));
  }
  return report;
}

inline ComponentReport classify_components(const LayeredDigraphSpec& spec, std::size_t depth, const EdgeSet& f,
                                           const Root& root) {
  const auto g = truncate(spec, depth);
  std::optional<Vertex> r;
  if (const auto* v = std::get_if<AtVertex>(&root); v && g.has_vertex(v->name)) r = v->name;
  return classify_components(g, f, r, boundary_in_vertices(spec, depth));
}

/// Edges of g (a truncation or contraction of spec) whose head in the
/// infinite digraph has in-degree one; every spanning r-reachable set must
/// contain them.
inline EdgeSet globally_forced_edges(const LayeredDigraphSpec& spec, const Digraph& g) {
  EdgeSet forced;
  for (const auto& e : g.edges()) {
    const auto original = spec.edge_by_id(e.id);
    if (original && template_degrees(spec, original->head).in == 1) forced.insert(e.id);
  }
  return forced;
}

struct LevelProbe {
  std::size_t depth = 0;
  Vertex root;
  EdgeSet minimal;
  bool unique_in_edges = false;      // (ii)
  bool single_rooted_component = false;  // (iii)
  std::size_t components = 0;
  std::map<EdgeId, VertexSet> witnesses;
  bool witnesses_valid = false;      // (iii) => (i) by single-edge deletion
  EdgeSet forced;  // forced edges with heads in S_n other than the root
  bool forced_contained = false;
  bool passed() const { return unique_in_edges && single_rooted_component && witnesses_valid && forced_contained; }
};

struct ProbeReport {
  std::vector<LevelProbe> levels;
  bool passed() const {
    return std::all_of(levels.begin(), levels.end(), [](const auto& l) { return l.passed(); });
  }
};

/// On every G_n, n <= N: minimize the lifted chain's part, then confirm the
/// unique-in-edge and arborescence properties and that every retained edge is
/// the only forward edge of some cut.
inline std::variant<ProbeReport, ConditionCertificate> char_equivalence_probe(const LayeredDigraphSpec& spec,
                                                                              const Root& root, std::size_t depth) {
  auto lifted = lift_chain(spec, root, 1, depth);
  if (auto* cert = std::get_if<ConditionCertificate>(&lifted)) return *cert;
  ProbeReport report;
  for (const auto& level : std::get<PackingChain>(lifted).levels) {
    const auto g = contract_at_depth(spec, level.depth).quotient;
    LevelProbe probe;
    probe.depth = level.depth;
    probe.root = level.root;
    auto minimal = minimize_r_reachable(g, level.parts.front(), level.root);
    probe.minimal = minimal.edges;

    const auto in_edges = check_in_edge_characterization(g, probe.minimal, level.root);
    probe.unique_in_edges = in_edges.ok && in_edges.indeterminate.empty();
    if (probe.unique_in_edges) {
      const auto comps = classify_components(g, probe.minimal, level.root);
      probe.components = comps.components.size();
      probe.single_rooted_component =
          comps.components.size() == 1 && comps.components.front().kind == ComponentKind::RootedAtRoot;
    }

    probe.witnesses_valid = true;
    for (const auto& [id, cut] : minimal.witnesses) {
      probe.witnesses.emplace(id, cut.side_y);
      std::size_t forward = 0;
      for (EdgeId e : probe.minimal) forward += cut.forward.contains(e);
      EdgeSet without = probe.minimal;
      without.erase(id);
      const bool isolates = forward == 1 && cut.forward.contains(id) && !cut.side_y.contains(level.root);
      probe.witnesses_valid = probe.witnesses_valid && isolates && !is_spanning_reachable(g, without, level.root);
    }

    // Only heads realized in S_n have their full in-degree inside G_n.
    for (EdgeId id : globally_forced_edges(spec, g)) {
      const auto& head = g.edge(id).head;
      if (head != level.root && !spec.locate_dummy(head)) probe.forced.insert(id);
    }
    probe.forced_contained = std::includes(probe.minimal.begin(), probe.minimal.end(), probe.forced.begin(),
                                           probe.forced.end());
    report.levels.push_back(std::move(probe));
  }
  return report;
}

}  // namespace arbopack
