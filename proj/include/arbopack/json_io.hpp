#pragma once

// JSON forms of digraphs, packings, certificates and reports, and DOT export.

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arbopack/branching.hpp"
#include "arbopack/digraph.hpp"
#include "arbopack/lifting.hpp"
#include "arbopack/pseudo_arborescence.hpp"
#include "arbopack/reachability.hpp"

namespace arbopack {

using nlohmann::json;

inline json ids_json(const EdgeSet& ids) {
  json out = json::array();
  for (EdgeId id : ids) out.push_back(id.value);
  return out;
}

inline json ids_json(const std::vector<EdgeId>& ids) {
  json out = json::array();
  for (EdgeId id : ids) out.push_back(id.value);
  return out;
}

inline EdgeSet edge_set_from_json(const json& doc) {
  if (!doc.is_array()) throw Error(ErrorCode::SchemaError, "edge list must be an array of ids");
  EdgeSet out;
  for (const auto& v : doc) {
    if (!v.is_number_integer()) throw Error(ErrorCode::SchemaError, "edge ids must be integers");
    out.insert(EdgeId{v.get<std::int64_t>()});
  }
  return out;
}

inline json digraph_to_json(const Digraph& g) {
  json doc;
  doc["vertices"] = g.vertices();
  doc["edges"] = json::array();
  for (const auto& e : g.edges()) doc["edges"].push_back(json::array({e.id.value, e.tail, e.head}));
  if (!g.labels().empty()) doc["labels"] = g.labels();
  return doc;
}

inline Digraph digraph_from_json(const json& doc) {
  const auto vertices = detail::string_list(detail::require(doc, "vertices"), "vertices");
  std::vector<Edge> edges;
  const auto& rows = detail::require(doc, "edges");
  if (!rows.is_array()) throw Error(ErrorCode::SchemaError, "edges must be an array");
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() || !row[1].is_string() ||
        !row[2].is_string())
      throw Error(ErrorCode::SchemaError, "edges rows must be [id, tail, head]");
    edges.push_back({EdgeId{row[0].get<std::int64_t>()}, row[1].get<std::string>(), row[2].get<std::string>()});
  }
  std::map<Vertex, std::string> labels;
  if (doc.contains("labels")) {
    const auto& l = doc.at("labels");
    if (!l.is_object()) throw Error(ErrorCode::SchemaError, "labels must be an object");
    for (const auto& [k, v] : l.items()) {
      if (!v.is_string()) throw Error(ErrorCode::SchemaError, "labels must map to strings");
      labels.emplace(k, v.get<std::string>());
    }
  }
  return Digraph(vertices, std::move(edges), std::move(labels));
}

inline json parts_json(const std::vector<EdgeSet>& parts) {
  json out = json::array();
  for (const auto& p : parts) out.push_back(ids_json(p));
  return out;
}

inline json chain_to_json(const PackingChain& chain) {
  json out = json::array();
  for (const auto& level : chain.levels)
    out.push_back({{"n", level.depth}, {"root", level.root}, {"parts", parts_json(level.parts)}});
  return out;
}

/// Roots are not part of the chain schema; they are recomputed from `root`.
inline PackingChain chain_from_json(const json& doc, const LayeredDigraphSpec& spec, const Root& root) {
  if (!doc.is_array()) throw Error(ErrorCode::SchemaError, "chain must be an array of levels");
  PackingChain chain;
  for (const auto& level : doc) {
    const auto& n = detail::require(level, "n");
    if (!n.is_number_unsigned()) throw Error(ErrorCode::SchemaError, "level n must be a nonnegative integer");
    LevelPacking p{n.get<std::size_t>(), locate_root(spec, root, n.get<std::size_t>()), {}};
    const auto& parts = detail::require(level, "parts");
    if (!parts.is_array()) throw Error(ErrorCode::SchemaError, "parts must be an array");
    for (const auto& part : parts) p.parts.push_back(edge_set_from_json(part));
    chain.levels.push_back(std::move(p));
  }
  return chain;
}

inline json cut_to_json(const Cut& cut) {
  return {{"Y", cut.side_y}, {"forward", ids_json(cut.forward)}, {"backward", ids_json(cut.backward)}};
}

inline json walk_to_json(const FiniteWalk& w) {
  return {{"start", w.start}, {"end", w.end}, {"edges", ids_json(w.edges)}};
}

inline json certificate_to_json(const ConditionCertificate& c) {
  return {{"n", c.depth}, {"root", c.root}, {"Y", c.side_y}, {"in_degree", c.deficiency}, {"dummies", c.dummies}};
}

inline json packing_to_json(const ArborescencePacking& p) {
  return {{"root", p.root}, {"parts", parts_json(p.parts)}};
}

inline json parent_json(const std::map<Vertex, EdgeId>& parent) {
  json out = json::object();
  for (const auto& [v, id] : parent) out[v] = id.value;
  return out;
}

inline json minimization_to_json(const MinimizationResult& m) {
  json witnesses = json::object();
  for (const auto& [id, cut] : m.witnesses) witnesses[std::to_string(id.value)] = cut_to_json(cut);
  return {{"edges", ids_json(m.edges)}, {"witnesses", witnesses}};
}

inline json in_edge_report_to_json(const InEdgeReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back({{"vertex", v.vertex}, {"in_edges", v.count}});
  return {{"ok", r.ok},
          {"violations", violations},
          {"indeterminate", r.indeterminate},
          {"parent", parent_json(r.parent)}};
}

inline json component_report_to_json(const ComponentReport& r) {
  json comps = json::array();
  for (const auto& c : r.components) {
    json item = {{"kind", to_string(c.kind)}, {"vertices", c.vertices}, {"edges", ids_json(c.edges)}};
    if (c.exit) item["exit"] = *c.exit;
    if (!c.reason.empty()) item["reason"] = c.reason;
    comps.push_back(std::move(item));
  }
  return {{"components", comps}, {"parent", parent_json(r.parent)}};
}

inline ComponentKind component_kind_from_string(const std::string& s) {
  for (auto k : {ComponentKind::RootedAtRoot, ComponentKind::ExitsToInfinity, ComponentKind::Violation})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::SchemaError, "unknown component kind '" + s + "'");
}

inline ComponentReport component_report_from_json(const json& doc) {
  ComponentReport r;
  for (const auto& item : detail::require(doc, "components")) {
    ComponentVerdict c;
    c.kind = component_kind_from_string(detail::require(item, "kind").get<std::string>());
    const auto vs = detail::string_list(detail::require(item, "vertices"), "vertices");
    c.vertices = VertexSet(vs.begin(), vs.end());
    c.edges = edge_set_from_json(detail::require(item, "edges"));
    if (item.contains("exit")) c.exit = item.at("exit").get<std::string>();
    if (item.contains("reason")) c.reason = item.at("reason").get<std::string>();
    r.components.push_back(std::move(c));
  }
  for (const auto& [v, id] : detail::require(doc, "parent").items()) r.parent.emplace(v, EdgeId{id.get<std::int64_t>()});
  return r;
}

inline json probe_to_json(const ProbeReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    json witnesses = json::object();
    for (const auto& [id, side] : l.witnesses) witnesses[std::to_string(id.value)] = side;
    levels.push_back({{"n", l.depth},
                      {"root", l.root},
                      {"minimal", ids_json(l.minimal)},
                      {"unique_in_edges", l.unique_in_edges},
                      {"single_rooted_component", l.single_rooted_component},
                      {"components", l.components},
                      {"witnesses", witnesses},
                      {"witnesses_valid", l.witnesses_valid},
                      {"forced", ids_json(l.forced)},
                      {"forced_contained", l.forced_contained},
                      {"passed", l.passed()}});
  }
  return {{"passed", r.passed()}, {"levels", levels}};
}

inline json arc_report_to_json(const ArcFamilyReport& r) {
  json targets = json::array();
  for (const auto& t : r.targets) {
    json item = {{"target", t.target}, {"located", t.located}, {"reachable", t.reachable}};
    if (t.path) item["path"] = walk_to_json(*t.path);
    if (t.cut) item["cut"] = cut_to_json(*t.cut);
    targets.push_back(std::move(item));
  }
  return {{"n", r.depth}, {"root", r.root}, {"all_reachable", r.all_reachable}, {"targets", targets}};
}

// ---------------------------------------------------------------------------
// DOT

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Edges are labelled with their ids. Edges of part 0 are solid black; later
/// parts cycle through dashed, dotted and bold in distinct colours; edges in
/// no part are grey. Dummy vertices are drawn as boxes.
inline std::string to_dot(const Digraph& g, const std::vector<EdgeSet>& parts = {}) {
  static const char* styles[] = {"solid", "dashed", "dotted", "bold"};
  static const char* colours[] = {"black", "blue", "red", "darkgreen", "orange", "purple", "brown", "cyan"};
  std::ostringstream out;
  out << "digraph G {\n";
  for (const auto& v : g.vertices()) {
    out << "  " << detail::dot_quote(v);
    std::vector<std::string> attrs;
    if (!v.empty() && v.front() == '~') attrs.push_back("shape=box");
    if (auto it = g.labels().find(v); it != g.labels().end()) attrs.push_back("label=" + detail::dot_quote(it->second));
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
      out << "]";
    }
    out << ";\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << detail::dot_quote(e.tail) << " -> " << detail::dot_quote(e.head) << " [label=\""
        << e.id.value << "\"";
    std::size_t part = parts.size();
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (parts[i].contains(e.id)) {
        part = i;
        break;
      }
    if (part < parts.size()) {
      out << ", style=" << styles[part % 4] << ", color=" << colours[part % 8];
    } else if (!parts.empty()) {
      out << ", color=grey";
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace arbopack
