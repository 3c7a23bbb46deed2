#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <rfm/construct.hpp>
#include <rfm/decompose.hpp>
#include <rfm/descriptor.hpp>
#include <rfm/error.hpp>
#include <rfm/graph.hpp>
#include <rfm/invariants.hpp>
#include <rfm/render.hpp>

namespace rfm::cli {

using Json = nlohmann::json;

/// Raised for bad invocations that CLI11 cannot see (wrong file type, missing file).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FileKind { graph, descriptor, morse };

inline FileKind file_kind(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".gm")) return FileKind::graph;
  if (ends_with(".rfd")) return FileKind::descriptor;
  if (ends_with(".mf")) return FileKind::morse;
  throw UsageError("cannot tell the format of '" + path + "' (expected .gm, .rfd or .mf)");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return detail::read_all(in);
}

inline void require_kind(const std::string& path, std::initializer_list<FileKind> allowed) {
  const auto k = file_kind(path);
  for (auto a : allowed) {
    if (a == k) return;
  }
  throw UsageError("'" + path + "' has the wrong file type for this command");
}

// ---------------------------------------------------------------------------
// JSON views

inline Json to_json(const DecompositionGraph& g) {
  Json pieces = Json::array();
  for (const auto& [id, kind] : g.pieces) pieces.push_back({{"id", id}, {"kind", to_string(kind)}});
  Json gluings = Json::array();
  for (const auto& e : canonicalize(g).gluings) {
    gluings.push_back({{"from", to_string(e.from)}, {"to", to_string(e.to)}, {"matrix", {{e.matrix.a, e.matrix.b}, {e.matrix.c, e.matrix.d}}}});
  }
  return {{"pieces", pieces}, {"gluings", gluings}};
}

inline Json directions_json(const std::vector<Direction>& dirs) {
  Json out = Json::array();
  for (auto d : dirs) out.push_back(to_string(d));
  return out;
}

inline Json to_json(const RoundFoldDescriptor& d) {
  Json levels = Json::array();
  for (int k = 1; k <= d.levels; ++k) {
    Json blocks = Json::array();
    for (const auto& b : d.level(k)) blocks.push_back(to_string(b));
    levels.push_back(blocks);
  }
  auto tori = d.tori;
  std::sort(tori.begin(), tori.end());
  Json tj = Json::array();
  for (const auto& t : tori) {
    tj.push_back({{"region", t.region}, {"mu", t.multiplicity}, {"inner", to_string(t.inner)}, {"outer", to_string(t.outer)}});
  }
  return {{"levels", d.levels},   {"binding", d.binding.size()}, {"counts", d.counts},
          {"blocks", levels},     {"tori", tj},                  {"directions", directions_json(compute_directions(d))}};
}

inline Json to_json(const TreeLabeling& l) {
  Json labels = Json::object();
  for (const auto& [id, label] : l.labels) labels[std::to_string(id)] = label;
  return {{"root", l.root}, {"labels", labels}};
}

inline std::string labeling_text(const TreeLabeling& l) {
  std::ostringstream os;
  os << "root " << l.root << '\n';
  for (const auto& [id, label] : l.labels) os << "label " << id << ' ' << label << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

struct Options {
  bool json = false;
  std::string output;
  std::string input;
  std::string format;
  bool buffers = false;
  std::vector<long long> torus_bundle;
};

struct Result {
  std::string text;
  int code = 0;
};

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline RoundFoldDescriptor load_descriptor(const std::string& path) {
  return file_kind(path) == FileKind::morse ? descriptor_from_morse(parse_morse(read_file(path)))
                                            : parse_descriptor(read_file(path));
}

/// The graph construct-directed and label work on: bundles reduced, buffers inserted.
inline DecompositionGraph prepared_tree(const std::string& path) {
  return insert_plumbing_buffers(reduce_to_pants(parse_graph(read_file(path))));
}

inline Result cmd_parse(const Options& o) {
  switch (file_kind(o.input)) {
    case FileKind::graph: {
      const auto g = parse_graph(read_file(o.input));
      return {o.json ? dump({{"kind", "graph"}, {"graph", to_json(g)}}) : serialize_graph(g)};
    }
    case FileKind::descriptor: {
      const auto d = parse_descriptor(read_file(o.input));
      if (o.json) {
        Json j{{"kind", "descriptor"}, {"levels", d.levels}, {"counts", d.counts}, {"binding", d.binding.size()}};
        return {dump(j)};
      }
      return {serialize_descriptor(d)};
    }
    case FileKind::morse: {
      const auto m = parse_morse(read_file(o.input));
      if (o.json) {
        Json events = Json::array();
        for (const auto& e : m.events) {
          static const char* names[] = {"birth", "death", "merge", "split"};
          events.push_back({{"type", names[static_cast<int>(e.type)]}, {"consumed", e.consumed}, {"produced", e.produced}});
        }
        return {dump({{"kind", "morse"}, {"boundary", m.boundary}, {"events", events}})};
      }
      return {serialize_morse(m)};
    }
  }
  return {};
}

inline Result cmd_decompose(const Options& o) {
  require_kind(o.input, {FileKind::graph});
  auto g = reduce_to_pants(parse_graph(read_file(o.input)));
  if (o.buffers) g = insert_plumbing_buffers(g);
  return {o.json ? dump(to_json(g)) : serialize_graph(g)};
}

inline Result cmd_label(const Options& o) {
  require_kind(o.input, {FileKind::graph});
  const auto g = prepared_tree(o.input);
  const auto l = label_tree(g);
  if (o.json) return {dump({{"graph", to_json(g)}, {"labeling", to_json(l)}})};
  return {serialize_graph(g) + labeling_text(l)};
}

inline Result cmd_construct(const Options& o) {
  require_kind(o.input, {FileKind::graph});
  const auto g = prepared_tree(o.input);
  const auto d = construct_directed(g, label_tree(g));
  return {o.json ? dump(to_json(d)) : serialize_descriptor(d)};
}

inline Result cmd_from_morse(const Options& o) {
  require_kind(o.input, {FileKind::morse});
  const auto d = descriptor_from_morse(parse_morse(read_file(o.input)));
  return {o.json ? dump(to_json(d)) : serialize_descriptor(d)};
}

inline Result cmd_verify(const Options& o) {
  require_kind(o.input, {FileKind::descriptor});
  const auto d = parse_descriptor(read_file(o.input));
  const auto vs = verify_descriptor(d);
  if (o.json) {
    Json list = Json::array();
    for (const auto& v : vs) list.push_back({{"kind", to_string(v.kind)}, {"message", v.message}});
    Json j{{"valid", vs.empty()}, {"violations", list}};
    if (vs.empty()) j["directed"] = is_directed(d);
    return {dump(j), vs.empty() ? 0 : 1};
  }
  if (!vs.empty()) {
    std::string text;
    for (const auto& v : vs) text += "violation " + to_string(v.kind) + ": " + v.message + "\n";
    return {text, 1};
  }
  return {std::string("valid\ndirected: ") + (is_directed(d) ? "true" : "false") + "\n"};
}

inline Result cmd_directions(const Options& o) {
  require_kind(o.input, {FileKind::descriptor, FileKind::morse});
  const auto d = load_descriptor(o.input);
  const auto dirs = compute_directions(d);
  if (o.json) return {dump({{"directions", directions_json(dirs)}, {"directed", is_directed(d)}})};
  std::string text;
  for (auto dir : dirs) text += (text.empty() ? "" : " ") + to_string(dir);
  return {text + "\n"};
}

inline Result cmd_openbook(const Options& o) {
  require_kind(o.input, {FileKind::descriptor, FileKind::morse});
  const auto s = openbook_summary(load_descriptor(o.input));
  if (o.json) {
    Json seq = Json::array();
    for (const auto& c : s.critical_sequence)
      seq.push_back({{"level", c.level}, {"type", c.definite ? "definite" : "indefinite"}, {"direction", to_string(c.direction)}});
    Json j{{"binding_components", s.binding_components},
           {"page_euler_characteristic", s.page_euler_characteristic},
           {"page_boundary", s.page_boundary},
           {"page_connected", s.page_connected},
           {"critical_sequence", seq}};
    j["page_genus"] = s.page_genus ? Json(*s.page_genus) : Json(nullptr);
    return {dump(j)};
  }
  std::ostringstream os;
  os << "binding components: " << s.binding_components << '\n';
  os << "page euler characteristic: " << s.page_euler_characteristic << '\n';
  os << "page boundary circles: " << s.page_boundary << '\n';
  os << "page connected: " << (s.page_connected ? "true" : "false") << '\n';
  if (s.page_genus) os << "page genus: " << *s.page_genus << '\n';
  for (const auto& c : s.critical_sequence)
    os << "circle " << c.level << ' ' << (c.definite ? "definite" : "indefinite") << ' ' << to_string(c.direction) << '\n';
  return {os.str()};
}

inline Result cmd_homology(const Options& o) {
  require_kind(o.input, {FileKind::graph});
  const auto g = parse_graph(read_file(o.input));
  const auto h = first_homology(g);
  if (o.json) {
    Json torsion = Json::array();
    for (const auto& t : h.torsion) torsion.push_back(t.str());
    return {dump({{"free_rank", h.free_rank}, {"torsion", torsion}, {"group", to_string(h)}, {"graph_betti", graph_betti(g)}})};
  }
  return {"H1 = " + to_string(h) + "\n"};
}

inline Result cmd_admits(const Options& o) {
  DirectedDecision dec;
  if (!o.torus_bundle.empty()) {
    if (!o.input.empty()) throw UsageError("give either a file or --torus-bundle, not both");
    const auto& v = o.torus_bundle;
    dec = admits_directed(TorusBundleInput{{v[0], v[1], v[2], v[3]}});
  } else {
    if (o.input.empty()) throw UsageError("admits-directed needs a .gm file or --torus-bundle a b c d");
    require_kind(o.input, {FileKind::graph});
    dec = admits_directed(parse_graph(read_file(o.input)));
  }
  if (o.json) {
    Json j{{"verdict", to_string(dec.verdict)}, {"reason", dec.reason}};
    if (dec.witness) j["witness"] = to_json(*dec.witness);
    if (dec.witness_graph) j["witness_graph"] = to_json(*dec.witness_graph);
    return {dump(j)};
  }
  std::string text = "verdict: " + to_string(dec.verdict) + "\nreason: " + dec.reason + "\n";
  if (dec.witness_graph) text += serialize_graph(*dec.witness_graph);
  if (dec.witness) text += labeling_text(*dec.witness);
  return {text};
}

inline Result cmd_identify(const Options& o) {
  require_kind(o.input, {FileKind::morse});
  const auto name = identify_trivial_monodromy(parse_morse(read_file(o.input)));
  return {o.json ? dump({{"manifold", name}}) : name + "\n"};
}

inline Result cmd_render(const Options& o) {
  const auto kind = file_kind(o.input);
  std::string format = o.format;
  if (format.empty()) format = kind == FileKind::graph ? "dot" : "svg";
  if (kind == FileKind::graph) {
    if (format != "dot") throw UsageError("graphs render as dot only");
    return {graph_to_dot(parse_graph(read_file(o.input)))};
  }
  const auto d = load_descriptor(o.input);
  detail::require_valid(d);
  return {format == "dot" ? descriptor_to_dot(d) : descriptor_to_svg(d)};
}

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Round fold maps on graph 3-manifolds", "rfm"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  long long seed = 0;
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("-o,--output", o.output, "write output to this file");
  app.add_option("--seed", seed, "accepted for compatibility; nothing is random");

  std::function<Result(const Options&)> handler;
  auto sub = [&](const std::string& name, const std::string& help, Result (*fn)(const Options&), bool needs_input = true) {
    auto* s = app.add_subcommand(name, help);
    auto* in = s->add_option("input", o.input, "input file");
    if (needs_input) in->required();
    s->callback([&handler, fn] { handler = fn; });
    return s;
  };
  sub("parse", "parse and re-emit a .gm, .rfd or .mf file", cmd_parse);
  sub("decompose", "replace genus-zero bundles by pants and disks", cmd_decompose)
      ->add_flag("--buffers", o.buffers, "also insert plumbing buffers");
  sub("label", "label a tree decomposition", cmd_label);
  sub("construct-directed", "build a directed round fold map from a tree", cmd_construct);
  sub("from-morse", "build a round fold map from a Morse page", cmd_from_morse);
  sub("verify", "check a .rfd descriptor", cmd_verify);
  sub("directions", "inward/outward direction of each critical circle", cmd_directions);
  sub("openbook", "open book data of a round fold map", cmd_openbook);
  sub("homology", "first homology of a graph manifold", cmd_homology);
  sub("admits-directed", "decide whether a directed round fold map exists", cmd_admits, false)
      ->add_option("--torus-bundle", o.torus_bundle, "monodromy a b c d of a torus bundle")
      ->expected(4);
  sub("identify", "name the source of a trivial-monodromy Morse page", cmd_identify);
  sub("render", "draw a graph or descriptor", cmd_render)
      ->add_option("--format", o.format, "dot or svg")
      ->check(CLI::IsMember({"dot", "svg"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  (void)seed;

  Result result;
  try {
    result = handler(o);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << o.input << ": " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) err << "violation: " << v << '\n';
    return 1;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (o.output.empty()) {
    out << result.text;
  } else {
    std::ofstream file(o.output, std::ios::binary);
    if (!file) {
      err << "usage error: cannot write '" << o.output << "'\n";
      return 2;
    }
    file << result.text;
  }
  return result.code;
}

}  // namespace rfm::cli
