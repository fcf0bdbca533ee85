#pragma once

// Command-line front end. parse_args turns argv into a CommandRequest and
// run executes it, writing the report to `out` and diagnostics to `err`.
// Exit status: 0 ok, 1 condition violated (a certificate is printed),
// 2 usage or input error.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arbopack/gallery.hpp"
#include "arbopack/json_io.hpp"
#include "arbopack/lifting.hpp"
#include "arbopack/pseudo_arborescence.hpp"
#include "arbopack/reachability.hpp"

namespace arbopack::cli {

enum class Format { Json, Dot, Text };

struct CommandRequest {
  std::string subcommand;
  std::string spec_path;  // layered spec or finite digraph JSON
  std::string gallery;    // gallery name, e.g. "grid(3)"
  std::string gallery_action = "list";
  std::string root = "r";
  std::size_t k = 1;
  std::size_t depth = 1;
  Format format = Format::Json;
  std::string edges = "all";  // comma-separated ids or "all"
  std::string targets;        // comma-separated vertices or end:LABEL
  std::string from;
  std::string to;
};

/// Parse failure carrying the text CLI11 would print and the exit status.
struct ParseOutcome {
  std::optional<CommandRequest> request;
  int status = 0;
  std::string message;
};

inline ParseOutcome parse_args(int argc, const char* const* argv) {
  CLI::App app{"arbopack: arborescence packings on finite and periodic infinite digraphs", "arbopack"};
  app.require_subcommand(1, 1);
  CommandRequest req;
  std::string format = "json";

  auto source = [&](CLI::App* sub) {
    sub->add_option("--spec", req.spec_path, "layered spec or finite digraph JSON file");
    sub->add_option("--gallery", req.gallery, "built-in example, e.g. forward_ray or grid(3)");
  };
  auto common = [&](CLI::App* sub, bool with_k) {
    source(sub);
    sub->add_option("--root", req.root, "root vertex, or end:LABEL")->capture_default_str();
    if (with_k) sub->add_option("--k", req.k, "number of parts")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--depth", req.depth, "depth N of the contraction G_N")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "json, dot or text")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "dot", "text"}));
  };
  auto* pack = app.add_subcommand("pack", "pack k spanning r-reachable sets on G_1..G_N");
  common(pack, true);
  auto* cond = app.add_subcommand("condition", "check min root connectivity >= k on G_1..G_N");
  common(cond, true);
  auto* minimize = app.add_subcommand("minimize", "minimize a spanning r-reachable set on G_N");
  common(minimize, false);
  minimize->add_option("--edges", req.edges, "edge ids of F, comma-separated, or all")->capture_default_str();
  auto* verify = app.add_subcommand("verify-char", "minimality characterization probe on G_1..G_N");
  common(verify, false);
  auto* reach = app.add_subcommand("reach", "which targets F reaches from the root on G_N");
  common(reach, false);
  reach->add_option("--edges", req.edges, "edge ids of F, comma-separated, or all")->capture_default_str();
  reach->add_option("--targets", req.targets, "comma-separated vertices or end:LABEL (default: all of G_N)");
  auto* walk = app.add_subcommand("walk", "directed path inside F and its crossing signatures");
  common(walk, false);
  walk->add_option("--edges", req.edges, "edge ids of F, comma-separated, or all")->capture_default_str();
  walk->add_option("--from", req.from, "start vertex or end:LABEL")->required();
  walk->add_option("--to", req.to, "target vertex or end:LABEL")->required();
  auto* trunc = app.add_subcommand("truncate", "emit B_N");
  common(trunc, false);
  auto* contract = app.add_subcommand("contract", "emit G_N");
  common(contract, false);
  auto* gallery = app.add_subcommand("gallery", "list or show built-in examples");
  gallery->add_option("action", req.gallery_action, "list or show")->check(CLI::IsMember({"list", "show"}));
  gallery->add_option("name", req.gallery, "example to show");
  gallery->add_option("--gallery", req.gallery, "example to show");
  gallery->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    outcome.message = app.help();
    return outcome;
  } catch (const CLI::CallForAllHelp&) {
    outcome.message = app.help("", CLI::AppFormatMode::All);
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.status = 2;
    outcome.message = e.what();
    return outcome;
  }
  req.subcommand = app.get_subcommands().front()->get_name();
  req.format = format == "dot" ? Format::Dot : format == "text" ? Format::Text : Format::Json;
  outcome.request = req;
  return outcome;
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline EdgeSet parse_edges(const std::string& text, const Digraph& g) {
  if (text == "all") return g.edge_ids();
  EdgeSet out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || used == 0) throw Error(ErrorCode::BadParams, "bad edge id '" + item + "'");
    out.insert(EdgeId{v});
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadParams, "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

/// A finite digraph document becomes a spec whose prefix is the digraph; its
/// edge ids must be 1..m in listing order so they survive the conversion.
inline LayeredDigraphSpec load_spec(const CommandRequest& req) {
  if (req.spec_path.empty() == req.gallery.empty())
    throw Error(ErrorCode::BadParams, "give exactly one of --spec and --gallery");
  if (!req.gallery.empty()) return make_example_from_string(req.gallery).spec;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(req.spec_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  if (doc.is_object() && doc.contains("prefix")) return parse_spec(doc);
  const auto g = digraph_from_json(doc);
  for (std::size_t p = 0; p < g.edge_count(); ++p)
    if (g.edges()[p].id.value != static_cast<std::int64_t>(p + 1))
      throw Error(ErrorCode::SchemaError, "finite digraph edge ids must be 1..m in listing order");
  return finite_spec(g);
}

inline std::string set_text(const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : s) {
    out += (first ? "" : ", ") + v;
    first = false;
  }
  return out + "}";
}

inline std::string ids_text(const EdgeSet& s) {
  std::string out = "{";
  bool first = true;
  for (EdgeId id : s) {
    out += (first ? "" : ", ") + std::to_string(id.value);
    first = false;
  }
  return out + "}";
}

inline std::string ids_text(const std::vector<EdgeId>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i].value);
  return out;
}

inline std::string graph_text(const Digraph& g) {
  std::ostringstream out;
  out << "vertices (" << g.vertex_count() << "):";
  for (const auto& v : g.vertices()) out << " " << v;
  out << "\nedges (" << g.edge_count() << "):\n";
  for (const auto& e : g.edges()) out << "  " << e.id.value << ": " << e.tail << " -> " << e.head << "\n";
  return out.str();
}

inline std::string certificate_text(const ConditionCertificate& c) {
  std::ostringstream out;
  out << "condition violated at depth " << c.depth << ": Y = " << set_text(c.side_y) << " (root " << c.root
      << " outside) has in-degree " << c.deficiency << "\n";
  for (const auto& [v, what] : c.dummies) out << "  " << v << ": " << what << "\n";
  return out.str();
}

inline void emit(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << "\n"; }

}  // namespace detail

inline int run_checked(const CommandRequest& req, std::ostream& out) {
  using namespace arbopack::detail;
  using namespace arbopack::cli::detail;
  const auto& cmd = req.subcommand;

  if (cmd == "gallery") {
    if (req.gallery_action == "list") {
      if (req.format == Format::Text) {
        for (const auto& n : gallery_names()) out << n << "\n";
      } else {
        emit(out, gallery_names());
      }
      return 0;
    }
    if (req.gallery.empty()) throw Error(ErrorCode::BadParams, "gallery show needs an example name");
    const auto entry = make_example_from_string(req.gallery);
    const auto problems = self_check(entry);
    nlohmann::json doc = {{"name", entry.name},
                          {"root", to_string(entry.root)},
                          {"spec", arbopack::to_json(entry.spec)},
                          {"expected",
                           {{"ends", entry.expected.end_count},
                            {"depth", entry.expected.depth},
                            {"min_root_connectivity", entry.expected.min_connectivity},
                            {"forced_circle", entry.expected.forced_circle}}},
                          {"self_check", problems}};
    if (req.format == Format::Text) {
      out << entry.name << ": " << entry.expected.end_count << " end(s), min root connectivity "
          << entry.expected.min_connectivity << " at depth " << entry.expected.depth << ", forced circle "
          << (entry.expected.forced_circle ? "yes" : "no") << "\n";
      for (const auto& p : problems) out << "self-check: " << p << "\n";
    } else {
      emit(out, doc);
    }
    return problems.empty() ? 0 : 1;
  }

  const auto spec = load_spec(req);
  const auto root = parse_root(req.root);
  const auto n = req.depth;
  if (n == 0) throw Error(ErrorCode::BadParams, "depth must be at least 1");

  auto reject_format = [&](Format f) {
    if (req.format == f)
      throw Error(ErrorCode::BadParams, std::string(f == Format::Dot ? "dot" : "text") + " output is not available for " + cmd);
  };

  if (cmd == "truncate" || cmd == "contract") {
    const auto g = cmd == "truncate" ? truncate(spec, n) : contract_at_depth(spec, n).quotient;
    if (req.format == Format::Dot) out << to_dot(g);
    else if (req.format == Format::Text) out << graph_text(g);
    else emit(out, digraph_to_json(g));
    return 0;
  }

  if (cmd == "condition") {
    if (req.k == 0) throw Error(ErrorCode::ZeroK, "k must be at least 1");
    reject_format(Format::Dot);
    const auto cert = check_packing_condition(spec, root, req.k, n);
    if (req.format == Format::Text) {
      if (cert) out << certificate_text(*cert);
      else out << "min root connectivity >= " << req.k << " on G_1..G_" << n << "\n";
    } else if (cert) {
      emit(out, {{"ok", false}, {"certificate", certificate_to_json(*cert)}});
    } else {
      emit(out, {{"ok", true}, {"k", req.k}, {"n", n}});
    }
    return cert ? 1 : 0;
  }

  if (cmd == "pack") {
    if (req.k == 0) throw Error(ErrorCode::ZeroK, "k must be at least 1");
    const auto result = lift_chain(spec, root, req.k, n);
    if (const auto* cert = std::get_if<ConditionCertificate>(&result)) {
      if (req.format == Format::Text) out << certificate_text(*cert);
      else emit(out, {{"ok", false}, {"certificate", certificate_to_json(*cert)}});
      return 1;
    }
    const auto& chain = std::get<PackingChain>(result);
    if (req.format == Format::Dot) {
      out << to_dot(contract_at_depth(spec, n).quotient, chain.levels.back().parts);
    } else if (req.format == Format::Text) {
      for (const auto& level : chain.levels) {
        out << "G_" << level.depth << " root " << level.root << ":";
        for (const auto& part : level.parts) out << " " << ids_text(part);
        out << "\n";
      }
    } else {
      emit(out, chain_to_json(chain));
    }
    return 0;
  }

  const auto contraction = contract_at_depth(spec, n);
  const auto& g = contraction.quotient;

  if (cmd == "minimize") {
    const auto f = parse_edges(req.edges, g);
    const auto r = locate_root(spec, root, n);
    const auto mask = edge_mask(g, f);
    const auto seen = reachable_from(g, g.index_of(r), mask);
    VertexSet unreached;
    for (std::size_t v = 0; v < seen.size(); ++v)
      if (!seen[v]) unreached.insert(g.vertices()[v]);
    if (!unreached.empty()) {
      const auto cut = cut_of(g, unreached);
      if (req.format == Format::Text) out << "F does not reach " << set_text(unreached) << " from " << r << "\n";
      else if (req.format == Format::Dot) out << to_dot(g, {f});
      else emit(out, {{"ok", false}, {"root", r}, {"unreached_cut", cut_to_json(cut)}});
      return 1;
    }
    const auto result = minimize_r_reachable(g, f, r);
    if (req.format == Format::Dot) {
      out << to_dot(g, {result.edges});
    } else if (req.format == Format::Text) {
      out << "minimal subset on G_" << n << " rooted at " << r << ": " << ids_text(result.edges) << "\n";
      for (const auto& [id, cut] : result.witnesses)
        out << "  " << id.value << " is the only forward edge into " << set_text(cut.side_y) << "\n";
    } else {
      auto doc = minimization_to_json(result);
      doc["ok"] = true;
      doc["n"] = n;
      doc["root"] = r;
      emit(out, doc);
    }
    return 0;
  }

  if (cmd == "verify-char") {
    reject_format(Format::Dot);
    const auto result = char_equivalence_probe(spec, root, n);
    if (const auto* cert = std::get_if<ConditionCertificate>(&result)) {
      if (req.format == Format::Text) out << certificate_text(*cert);
      else emit(out, {{"ok", false}, {"certificate", certificate_to_json(*cert)}});
      return 1;
    }
    const auto& report = std::get<ProbeReport>(result);
    if (req.format == Format::Text) {
      for (const auto& l : report.levels)
        out << "G_" << l.depth << ": minimal " << ids_text(l.minimal) << (l.passed() ? " passed" : " FAILED") << "\n";
    } else {
      emit(out, probe_to_json(report));
    }
    return report.passed() ? 0 : 1;
  }

  if (cmd == "reach") {
    reject_format(Format::Dot);
    const auto f = parse_edges(req.edges, g);
    std::vector<Root> targets;
    if (req.targets.empty()) {
      for (const auto& v : g.vertices()) targets.push_back(AtVertex{v});
    } else {
      for (const auto& t : split_list(req.targets)) targets.push_back(parse_root(t));
    }
    // Dummy names are not spec vertices; pass them through unchanged.
    std::vector<Vertex> located;
    for (const auto& t : targets) {
      const auto* v = std::get_if<AtVertex>(&t);
      located.push_back(v && g.has_vertex(v->name) ? v->name : locate_root(spec, t, n));
    }
    const auto* rv = std::get_if<AtVertex>(&root);
    const auto r = rv && g.has_vertex(rv->name) ? rv->name : locate_root(spec, root, n);
    auto report = verify_arc_family(g, f, r, located);
    report.depth = n;
    for (std::size_t i = 0; i < targets.size(); ++i) report.targets[i].target = to_string(targets[i]);
    if (req.format == Format::Text) {
      for (const auto& t : report.targets) {
        out << t.target << " (" << t.located << "): ";
        if (t.reachable) out << "reached via [" << ids_text(t.path->edges) << "]\n";
        else out << "separated by Y = " << set_text(t.cut->side_y) << "\n";
      }
    } else {
      emit(out, arc_report_to_json(report));
    }
    return report.all_reachable ? 0 : 1;
  }

  if (cmd == "walk") {
    const auto f = parse_edges(req.edges, g);
    auto locate = [&](const std::string& text) {
      const auto t = parse_root(text);
      const auto* v = std::get_if<AtVertex>(&t);
      return v && g.has_vertex(v->name) ? v->name : locate_root(spec, t, n);
    };
    const auto s = locate(req.from), t = locate(req.to);
    const auto reach = reachable_by_cut_criterion(g, f, s, t);
    if (!reach.reachable) {
      if (req.format == Format::Text) out << t << " is separated from " << s << " by Y = " << set_text(reach.cut->side_y) << "\n";
      else if (req.format == Format::Dot) out << to_dot(g, {f});
      else emit(out, {{"ok", false}, {"from", s}, {"to", t}, {"cut", cut_to_json(*reach.cut)}});
      return 1;
    }
    const auto& w = *reach.walk;
    std::optional<SignatureViolation> violation;
    bool checked = g.vertex_count() <= enumeration_limit();
    if (checked) violation = verify_walk_signature(g, w);
    if (req.format == Format::Dot) {
      out << to_dot(g, {EdgeSet(w.edges.begin(), w.edges.end())});
    } else if (req.format == Format::Text) {
      out << "path " << s << " -> " << t << ": [" << ids_text(w.edges) << "]\n";
      if (!checked) out << "signatures not enumerated: " << g.vertex_count() << " vertices exceed the limit\n";
      else if (violation) out << "signature violated on Y = " << set_text(violation->cut.side_y) << "\n";
      else out << "forward = backward + 1 on every separating cut\n";
    } else {
      nlohmann::json doc = {{"ok", !violation}, {"walk", walk_to_json(w)}, {"signatures_checked", checked}};
      if (violation)
        doc["violation"] = {{"cut", cut_to_json(violation->cut)},
                            {"forward", violation->forward_count},
                            {"backward", violation->backward_count}};
      emit(out, doc);
    }
    return violation ? 1 : 0;
  }

  throw Error(ErrorCode::BadParams, "unknown subcommand '" + cmd + "'");
}

inline int run(const CommandRequest& req, std::ostream& out, std::ostream& err) {
  try {
    return run_checked(req, out);
  } catch (const Error& e) {
    err << "arbopack: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "arbopack: SchemaError: " << e.what() << "\n";
    return 2;
  }
}

inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_args(argc, argv);
  if (!parsed.request) {
    (parsed.status == 0 ? out : err) << parsed.message << (parsed.message.ends_with('\n') ? "" : "\n");
    return parsed.status;
  }
  return run(*parsed.request, out, err);
}

}  // namespace arbopack::cli
