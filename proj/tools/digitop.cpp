// Command-line front end. JSON goes to stdout, diagnostics to stderr.
// Exit codes: 0 success, 1 property not satisfied, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "digitop/digitop.hpp"

using namespace digitop;

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFails = 1;
constexpr int kInputError = 2;

bool pretty = false;

void emit(const Json& j) { std::cout << j.dump(pretty ? 2 : -1) << "\n"; }

std::vector<std::string> split_labels(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int run_classify(const std::string& path, std::optional<int> dim, const std::optional<std::string>& boundary) {
  const auto g = load_graph(path);
  ClassificationVerdict v;
  if (boundary) {
    if (!dim) throw InputError("--boundary needs --dim");
    v = disk_verdict(g, split_labels(*boundary), *dim);
  } else if (dim) {
    if (*dim < 0) throw InputError("--dim must be non-negative");
    v = classify(g, *dim);
  } else {
    v = classify(g);
  }
  emit(verdict_json(v));
  return v ? kOk : kPropertyFails;
}

int run_reduce(const std::string& path) {
  const auto g = load_graph(path);
  auto r = reduce(g);
  emit(Json{{"residue", graph_json(r.residue)}, {"trace", trace_json(r.trace)}, {"contractible_residue", r.residue.order() == 1}});
  return kOk;
}

int run_invariants(const std::string& path) {
  emit(invariants_json(load_graph(path)));
  return kOk;
}

int run_digitize(const std::string& path, const std::optional<std::string>& pitch_text, const std::optional<std::string>& pgm) {
  auto file = shape_from_json(parse_json_text(read_file(path), path), path);
  if (pitch_text) {
    auto p = parse_rational(*pitch_text);
    if (!p) throw InputError("--pitch: expected a rational number, got \"" + *pitch_text + "\"");
    file.pitch = *p;
  }
  if (!file.pitch) throw InputError(path + ": no pitch given (use --pitch or a \"pitch\" field)");
  if (*file.pitch <= 0) throw InputError("pitch must be positive");
  DigitizeReport r;
  try {
    r = digitize_reduce(file.shape, file.window, *file.pitch);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
  auto j = digitize_json(r);
  j["empty"] = r.model.cubes.empty();
  if (pgm) {
    std::ofstream out(*pgm, std::ios::binary);
    if (!out) throw InputError(*pgm + ": cannot write");
    try {
      write_pgm(out, r.model);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--pgm: ") + e.what());
    }
  }
  emit(j);
  return kOk;
}

int run_cover(const std::string& action, const std::string& path, std::optional<std::size_t> cell,
              const std::optional<std::string>& cells) {
  const auto w = cover_from_json(parse_json_text(read_file(path), path), path);
  if (action == "validate") {
    auto r = validate_lcl(w);
    emit(lcl_json(r));
    return r.verdict ? kOk : kPropertyFails;
  }
  if (action == "nerve") {
    emit(graph_json(nerve(w)));
    return kOk;
  }
  if (action == "trace") {
    if (!cell) throw InputError("cover trace needs --cell");
    if (*cell >= w.cells.size()) throw InputError("--cell " + std::to_string(*cell) + " is out of range");
    TraceCover t;
    try {
      t = boundary_trace_cover(w, *cell);
    } catch (const CoverError& e) {
      emit(Json{{"error", e.what()}});
      return kPropertyFails;
    }
    emit(trace_cover_json(t));
    return t.isomorphic ? kOk : kPropertyFails;
  }
  if (action == "merge") {
    if (!cells) throw InputError("cover merge needs --cells");
    std::vector<std::size_t> idx;
    for (const auto& s : split_labels(*cells)) {
      try {
        idx.push_back(std::stoul(s));
      } catch (const std::exception&) {
        throw InputError("--cells: \"" + s + "\" is not an index");
      }
    }
    try {
      auto m = merge_cells(w, idx);
      emit(Json{{"cover", cover_json(m.cover)}, {"report", lcl_json(m.report)}});
      return kOk;
    } catch (const CoverError& e) {
      emit(Json{{"error", e.what()}});
      return kPropertyFails;
    }
  }
  throw InputError("unknown cover action \"" + action + "\" (validate, nerve, trace, merge)");
}

int run_catalog(const std::string& action, const std::optional<std::string>& name) {
  if (action == "list") {
    emit(Json(catalog_names()));
    return kOk;
  }
  if (action == "show") {
    if (!name) throw InputError("catalog show needs a name");
    CatalogEntry e;
    try {
      e = build_entry(*name);
    } catch (const CatalogError& err) {
      throw InputError(err.what());
    }
    auto rep = validate(e);
    emit(catalog_json(e, rep));
    return rep.ok ? kOk : kPropertyFails;
  }
  throw InputError("unknown catalog action \"" + action + "\" (list, show)");
}

int run_replay(const std::string& graph_path, const std::string& trace_path) {
  const auto g = load_graph(graph_path);
  const auto ops = trace_ops_from_json(parse_json_text(read_file(trace_path), trace_path), trace_path);
  try {
    auto [result, expanded] = replay_ops(g, ops);
    emit(Json{{"graph", graph_json(result)}, {"steps", expanded.steps.size()}, {"trace", trace_json(expanded)}});
    return kOk;
  } catch (const RejectedStep& e) {
    emit(Json{{"error", e.what()}});
    return kPropertyFails;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digital topology toolkit: graphs, covers, digitization"};
  app.require_subcommand(1);
  app.add_flag("--pretty", pretty, "Indent JSON output");
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Reserved; outputs are deterministic");

  std::string graph_path, second_path, action, shape_path;
  std::optional<int> dim;
  std::optional<std::string> boundary, pitch, pgm, name, cells;
  std::optional<std::size_t> cell;

  auto* classify_cmd = app.add_subcommand("classify", "Recognize sphere, manifold, surface or disk");
  classify_cmd->add_option("graph", graph_path, "Graph file (.json, .dot or edge list)")->required();
  classify_cmd->add_option("--dim", dim, "Target dimension");
  classify_cmd->add_option("--boundary", boundary, "Comma-separated boundary vertices (disk test)");

  auto* reduce_cmd = app.add_subcommand("reduce", "Greedy simple-point deletion");
  reduce_cmd->add_option("graph", graph_path)->required();

  auto* inv_cmd = app.add_subcommand("invariants", "Euler characteristic and homology");
  inv_cmd->add_option("graph", graph_path)->required();

  auto* dig_cmd = app.add_subcommand("digitize", "Cubical model, intersection graph, reduction, invariants");
  dig_cmd->add_option("shape", shape_path, "Shape JSON")->required();
  dig_cmd->add_option("--pitch", pitch, "Lattice pitch, e.g. 1/2");
  dig_cmd->add_option("--pgm", pgm, "Write a PGM image of a 2-dimensional model");

  auto* cover_cmd = app.add_subcommand("cover", "Box covers: validate | nerve | trace | merge");
  cover_cmd->add_option("action", action)->required();
  cover_cmd->add_option("cover", second_path, "Cover JSON")->required();
  cover_cmd->add_option("--cell", cell, "Cell index for trace");
  cover_cmd->add_option("--cells", cells, "Comma-separated cell indices for merge");

  auto* cat_cmd = app.add_subcommand("catalog", "Catalog: list | show <name>");
  cat_cmd->add_option("action", action)->required();
  cat_cmd->add_option("name", name);

  auto* replay_cmd = app.add_subcommand("replay", "Replay a trace on a graph");
  replay_cmd->add_option("graph", graph_path)->required();
  replay_cmd->add_option("trace", second_path)->required();

  auto* dot_cmd = app.add_subcommand("export-dot", "Write a graph in DOT");
  dot_cmd->add_option("graph", graph_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*classify_cmd) return run_classify(graph_path, dim, boundary);
    if (*reduce_cmd) return run_reduce(graph_path);
    if (*inv_cmd) return run_invariants(graph_path);
    if (*dig_cmd) return run_digitize(shape_path, pitch, pgm);
    if (*cover_cmd) return run_cover(action, second_path, cell, cells);
    if (*cat_cmd) return run_catalog(action, name);
    if (*replay_cmd) return run_replay(graph_path, second_path);
    if (*dot_cmd) {
      std::cout << graph_to_dot(load_graph(graph_path));
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
