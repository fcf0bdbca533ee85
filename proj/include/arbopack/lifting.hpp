#pragma once

// Packings of spanning r-reachable sets on the contractions G_1..G_N and the
// restriction maps between consecutive levels.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arbopack/branching.hpp"
#include "arbopack/digraph.hpp"
#include "arbopack/layered_spec.hpp"

namespace arbopack {

/// k pairwise disjoint spanning r-reachable edge sets of G_depth.
struct LevelPacking {
  std::size_t depth = 0;
  Vertex root;
  std::vector<EdgeSet> parts;
  bool operator==(const LevelPacking&) const = default;
};

/// Levels for depths 1..N; level n is level n+1 intersected with E(G_n).
struct PackingChain {
  std::vector<LevelPacking> levels;
  bool operator==(const PackingChain&) const = default;
};

/// A cut of G_depth with the root outside Y entered by fewer than k edges.
/// `dummies` explains every dummy vertex of Y in terms of the infinite graph.
struct ConditionCertificate {
  std::size_t depth = 0;
  Vertex root;
  VertexSet side_y;
  std::size_t deficiency = 0;
  std::map<Vertex, std::string> dummies;
};

/// Image in G_to of a vertex of G_from (to <= from).
inline Vertex project_vertex(const LayeredDigraphSpec& spec, const Vertex& v, std::size_t from, std::size_t to) {
  if (auto dummy = spec.locate_dummy(v)) {
    return LayeredDigraphSpec::dummy_name(spec.classes()[spec.ascend(dummy->first, from - to)], to);
  }
  if (auto loc = spec.locate_layer_vertex(v); loc && loc->second >= to)
    return LayeredDigraphSpec::dummy_name(spec.classes()[spec.class_at_depth(loc->first, loc->second, to)], to);
  return v;
}

/// Every vertex is reachable from the root through `part`; on a finite
/// digraph this is the cut condition defining spanning r-reachable sets.
inline bool is_spanning_reachable(const Digraph& g, const EdgeSet& part, const Vertex& root) {
  const auto seen = detail::reachable_from(g, g.index_of(root), detail::edge_mask(g, part));
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

/// Reason the level packing is invalid on `g`, if any.
inline std::optional<std::string> level_packing_problem(const Digraph& g, const LevelPacking& p) {
  if (!g.has_vertex(p.root)) return "root '" + p.root + "' is not a vertex of G_" + std::to_string(p.depth);
  EdgeSet used;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    for (EdgeId id : p.parts[i]) {
      if (!g.has_edge(id)) return "part " + std::to_string(i) + " uses " + to_string(id) + " outside G_" + std::to_string(p.depth);
      if (!used.insert(id).second) return "edge " + to_string(id) + " is shared by two parts";
    }
    if (!is_spanning_reachable(g, p.parts[i], p.root))
      return "part " + std::to_string(i) + " does not reach every vertex from " + p.root;
  }
  return std::nullopt;
}

inline LevelPacking restrict_packing(const LevelPacking& p, const LayeredDigraphSpec& spec) {
  if (p.depth < 1) throw Error(ErrorCode::InvalidLevelPacking, "cannot restrict below depth 0");
  const auto upper = contract_at_depth(spec, p.depth).quotient;
  if (auto problem = level_packing_problem(upper, p)) throw Error(ErrorCode::InvalidLevelPacking, *problem);

  const auto n = p.depth - 1;
  const auto lower = contract_at_depth(spec, n).quotient;
  LevelPacking out{n, project_vertex(spec, p.root, p.depth, n), {}};
  for (const auto& part : p.parts) {
    EdgeSet kept;
    for (EdgeId id : part)
      if (lower.has_edge(id)) kept.insert(id);
    out.parts.push_back(std::move(kept));
  }
  if (auto problem = level_packing_problem(lower, out)) throw Error(ErrorCode::InvalidLevelPacking, *problem);
  return out;
}

inline ConditionCertificate make_certificate(const LayeredDigraphSpec& spec, std::size_t depth, Vertex root,
                                             CutCertificate cut) {
  ConditionCertificate cert{depth, std::move(root), std::move(cut.side_y), cut.deficiency, {}};
  for (const auto& v : cert.side_y)
    if (spec.locate_dummy(v)) cert.dummies.emplace(v, describe_vertex(spec, v));
  return cert;
}

/// Checks min root-connectivity >= k on G_1..G_N. Returns the first failing
/// level's cut, or nothing when the condition holds to depth N.
inline std::optional<ConditionCertificate> check_packing_condition(const LayeredDigraphSpec& spec, const Root& root,
                                                                   std::size_t k, std::size_t max_depth) {
  if (k == 0) throw Error(ErrorCode::ZeroK, "k must be at least 1");
  if (max_depth == 0) throw Error(ErrorCode::PreconditionFailed, "depth must be at least 1");
  for (std::size_t n = 1; n <= max_depth; ++n) {
    const auto g = contract_at_depth(spec, n).quotient;
    const auto r = locate_root(spec, root, n);
    const auto conn = min_root_connectivity(g, r);
    if (!conn.at_least(k)) return make_certificate(spec, n, r, CutCertificate{conn.side_y, *conn.value});
  }
  return std::nullopt;
}

/// Packs k arborescences on G_N and restricts them down to G_1, giving a
/// restriction-consistent chain; fails with the condition's certificate.
inline std::variant<PackingChain, ConditionCertificate> lift_chain(const LayeredDigraphSpec& spec, const Root& root,
                                                                   std::size_t k, std::size_t max_depth) {
  if (auto cert = check_packing_condition(spec, root, k, max_depth)) return *cert;
  const auto top = contract_at_depth(spec, max_depth).quotient;
  const auto r = locate_root(spec, root, max_depth);
  auto packed = pack_arborescences(top, r, k);
  if (auto* cut = std::get_if<CutCertificate>(&packed)) return make_certificate(spec, max_depth, r, *cut);

  std::vector<LevelPacking> reversed;
  reversed.push_back({max_depth, r, std::get<ArborescencePacking>(packed).parts});
  while (reversed.back().depth > 1) reversed.push_back(restrict_packing(reversed.back(), spec));
  return PackingChain{{reversed.rbegin(), reversed.rend()}};
}

}  // namespace arbopack
