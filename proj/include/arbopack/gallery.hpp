#pragma once

// Built-in layered specs showing rays, several ends, forced circles and
// highly connected one-ended graphs. Each entry states properties that the
// library can recompute.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arbopack/branching.hpp"
#include "arbopack/layered_spec.hpp"
#include "arbopack/max_flow.hpp"
#include "arbopack/pseudo_arborescence.hpp"
#include "arbopack/reachability.hpp"

namespace arbopack {

struct GalleryExpectation {
  std::size_t end_count = 0;
  std::size_t depth = 5;  // depth at which min_connectivity is measured
  std::size_t min_connectivity = 0;
  bool forced_circle = false;
};

struct GalleryEntry {
  std::string name;
  LayeredDigraphSpec spec;
  Root root;
  GalleryExpectation expected;
};

inline const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names{"forward_ray", "backward_ray_root", "two_ended", "forced_circle",
                                              "grid"};
  return names;
}

/// `k` is the parallel multiplicity for grid and must be absent otherwise.
inline GalleryEntry make_example(std::string_view name, std::optional<std::size_t> k = std::nullopt) {
  if (name != "grid" && k) throw Error(ErrorCode::BadParams, std::string(name) + " takes no parameter");
  LayeredTemplate t;
  t.prefix_vertices = {"r"};
  GalleryExpectation expected;
  if (name == "forward_ray") {
    t.layer_vertices = {"v"};
    t.up = {{"v", "v", +1}};
    t.attach = {{"r", "v", +1}};
    expected = {1, 5, 1, false};
  } else if (name == "backward_ray_root") {
    t.layer_vertices = {"u"};
    t.up = {{"u", "u", -1}};
    t.attach = {{"r", "u", -1}};
    expected = {1, 5, 0, false};
  } else if (name == "two_ended") {
    t.layer_vertices = {"a", "b"};
    t.up = {{"a", "a", +1}, {"b", "b", +1}};
    t.attach = {{"r", "a", +1}, {"r", "b", +1}};
    expected = {2, 5, 1, false};
  } else if (name == "forced_circle") {
    // Rays a and b leave r; each c@i is entered from a@i and b@i, so a@i and
    // b@i keep in-degree one while c ties both rays into a single end.
    t.layer_vertices = {"a", "b", "c"};
    t.intra = {{"a", "c"}, {"b", "c"}};
    t.up = {{"a", "a", +1}, {"b", "b", +1}};
    t.attach = {{"r", "a", +1}, {"r", "b", +1}};
    expected = {1, 5, 1, true};
  } else if (name == "grid") {
    const std::size_t mult = k.value_or(2);
    if (mult == 0 || mult > 16) throw Error(ErrorCode::BadParams, "grid multiplicity must be in 1..16");
    // Ladder x/y with every template edge repeated `mult` times.
    t.layer_vertices = {"x", "y"};
    for (std::size_t i = 0; i < mult; ++i) {
      t.intra.push_back({"x", "y"});
      t.intra.push_back({"y", "x"});
      t.up.push_back({"x", "x", +1});
      t.up.push_back({"y", "y", +1});
      t.attach.push_back({"r", "x", +1});
    }
    expected = {1, 8, mult, false};
  } else {
    throw Error(ErrorCode::UnknownExample, "no gallery example '" + std::string(name) + "'");
  }
  std::string full(name);
  if (name == "grid") full += "(" + std::to_string(k.value_or(2)) + ")";
  return {full, LayeredDigraphSpec::create(std::move(t)), AtVertex{"r"}, expected};
}

/// Accepts "grid(3)" as well as plain names.
inline GalleryEntry make_example_from_string(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos) return make_example(text);
  if (text.back() != ')') throw Error(ErrorCode::BadParams, "malformed example '" + std::string(text) + "'");
  const auto arg = text.substr(open + 1, text.size() - open - 2);
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
  if (ec != std::errc{} || ptr != arg.data() + arg.size())
    throw Error(ErrorCode::BadParams, "bad parameter in '" + std::string(text) + "'");
  return make_example(text.substr(0, open), k);
}

/// Truncated trace of an infinite circle through the root: two edge-disjoint
/// paths from the root into one dummy of G_n whose edges inside B_n are all
/// globally forced, plus two distinct minimal root-to-dummy edge sets.
struct ForcedCircleWitness {
  std::size_t depth = 0;
  Vertex dummy;
  std::array<FiniteWalk, 2> paths;
  std::array<EdgeSet, 2> arcs;
};

namespace detail {

// Splits a unit s-t flow given by its edge positions into edge-disjoint
// s-t paths, dropping any circulation.
inline std::vector<std::vector<std::size_t>> decompose_flow(const Digraph& g, std::vector<std::size_t> carrying,
                                                            std::size_t s, std::size_t t, std::size_t count) {
  std::vector<bool> left(g.edge_count(), false);
  for (auto p : carrying) left[p] = true;
  std::vector<std::vector<std::size_t>> paths;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::size_t> trail;
    auto at = s;
    while (at != t) {
      std::optional<std::size_t> next;
      for (auto p : g.out_positions(at))
        if (left[p] && (!next || g.edges()[p].id < g.edges()[*next].id)) next = p;
      if (!next) return paths;
      left[*next] = false;
      trail.push_back(*next);
      at = g.head_index(*next);
    }
    // Shortcut revisits so the result is a path.
    std::vector<std::size_t> path;
    std::vector<std::size_t> vertices{s};
    for (auto p : trail) {
      const auto h = g.head_index(p);
      auto seen = std::find(vertices.begin(), vertices.end(), h);
      if (seen != vertices.end()) {
        const auto keep = static_cast<std::size_t>(seen - vertices.begin());
        vertices.resize(keep + 1);
        path.resize(keep);
      } else {
        vertices.push_back(h);
        path.push_back(p);
      }
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace detail

inline std::optional<ForcedCircleWitness> forced_circle_witness(const LayeredDigraphSpec& spec, const Vertex& root,
                                                                std::size_t n) {
  const auto contraction = contract_at_depth(spec, n);
  const auto& g = contraction.quotient;
  if (!g.has_vertex(root) || spec.locate_dummy(root)) return std::nullopt;
  const auto inside = truncate(spec, n);
  EdgeSet forced;
  for (EdgeId id : globally_forced_edges(spec, inside))
    if (inside.edge(id).head != root) forced.insert(id);

  for (const auto& dummy : contraction.dummies) {
    EdgeSet usable = forced;
    for (const auto& e : g.edges())
      if (e.head == dummy && !contraction.dummies.contains(e.tail)) usable.insert(e.id);
    const auto mask = detail::edge_mask(g, usable);
    detail::UnitFlow flow(g, mask);
    const auto s = g.index_of(root), t = g.index_of(dummy);
    if (flow.run(s, t, 2) < 2) continue;
    auto split = detail::decompose_flow(g, flow.saturated_positions(), s, t, 2);
    if (split.size() < 2) continue;

    ForcedCircleWitness w;
    w.depth = n;
    w.dummy = dummy;
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<EdgeId> ids;
      for (auto p : split[i]) ids.push_back(g.edges()[p].id);
      w.paths[i] = make_walk(g, root, ids);
    }
    w.arcs[0] = extract_directed_path(g, usable, root, dummy);
    bool second = false;
    for (EdgeId drop : w.arcs[0]) {
      EdgeSet rest = usable;
      rest.erase(drop);
      if (!reachable_by_cut_criterion(g, rest, root, dummy).reachable) continue;
      w.arcs[1] = extract_directed_path(g, rest, root, dummy);
      second = true;
      break;
    }
    if (second) return w;
  }
  return std::nullopt;
}

/// Recomputes an entry's expected properties; returns one message per mismatch.
inline std::vector<std::string> self_check(const GalleryEntry& entry) {
  std::vector<std::string> problems;
  const auto ends = list_ends(entry.spec).size();
  if (ends != entry.expected.end_count)
    problems.push_back(entry.name + ": " + std::to_string(ends) + " ends, expected " +
                       std::to_string(entry.expected.end_count));
  const auto d = entry.expected.depth;
  const auto g = contract_at_depth(entry.spec, d).quotient;
  const auto conn = min_root_connectivity(g, locate_root(entry.spec, entry.root, d));
  if (!conn.value || *conn.value != entry.expected.min_connectivity)
    problems.push_back(entry.name + ": min root connectivity at depth " + std::to_string(d) + " is " +
                       (conn.value ? std::to_string(*conn.value) : "unbounded") + ", expected " +
                       std::to_string(entry.expected.min_connectivity));
  bool circle = true;
  const auto* r = std::get_if<AtVertex>(&entry.root);
  for (std::size_t n = 3; n <= 6 && circle; ++n) circle = r && forced_circle_witness(entry.spec, r->name, n).has_value();
  if (circle != entry.expected.forced_circle)
    problems.push_back(entry.name + ": forced-circle flag is " + (circle ? "set" : "clear") + " but expected " +
                       (entry.expected.forced_circle ? "set" : "clear"));
  return problems;
}

}  // namespace arbopack
