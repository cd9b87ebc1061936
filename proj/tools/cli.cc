#include "cli.h"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "pathcode/codec.h"
#include "pathcode/error.h"
#include "pathcode/generators.h"
#include "pathcode/pipeline.h"
#include "pathcode/satgen.h"
#include "pathcode/topology.h"

namespace pathcode {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw InputError("cannot write " + path);
  outf << content;
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Topology file with its paths, or with the shortest path set when it has
// none or `all_pairs` is set.
ProblemInstance load_instance(const std::string& path, bool all_pairs) {
  TopologyFile topo = parse_topology_file(read_file(path));
  std::vector<Path> paths = (all_pairs || topo.paths.empty())
                                ? shortest_path_set(topo.graph)
                                : std::move(topo.paths);
  return ProblemInstance(std::move(topo.graph), std::move(paths));
}

struct OptimizeArgs {
  std::string file;
  PipelineOptions options;
  std::string format = "text";
  std::string labels_out;
  std::string lengths_out;
  std::string trace_out;
  bool all_pairs = false;
  bool timings = false;
  bool no_local_search = false;
};

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  const ProblemInstance inst = load_instance(a.file, a.all_pairs);
  PipelineOptions options = a.options;
  options.local_search = !a.no_local_search;
  const PipelineResult result = run_pipeline(inst, options);
  const nlohmann::json labels = to_json(inst.graph(), result.labels);

  if (!a.labels_out.empty()) write_file(a.labels_out, labels.dump(2) + "\n");
  if (!a.lengths_out.empty()) {
    write_file(a.lengths_out, to_json(inst.graph(), result.lengths).dump(2) + "\n");
  }
  if (!a.trace_out.empty()) write_file(a.trace_out, result.relaxed.trace.to_csv());

  if (a.format == "json") {
    nlohmann::json doc = {{"report", report_json(result.report, a.timings)},
                          {"lengths", to_json(inst.graph(), result.lengths)},
                          {"labels", labels}};
    out << doc.dump(2) << '\n';
  } else if (a.format == "csv") {
    out << report_csv_header(a.timings)
        << report_csv_row(result.report, a.timings);
  } else {
    out << report_text(result.report, a.timings);
    if (a.labels_out.empty()) out << "labels:\n" << labels.dump(2) << '\n';
  }
  return 0;
}

int cmd_encode(const std::string& topo_file, const std::string& labels_file,
               const std::vector<std::string>& vertices, std::ostream& out) {
  const TopologyFile topo = parse_topology_file(read_file(topo_file));
  const LabelTable labels =
      label_table_from_json(topo.graph, read_json(labels_file));
  build_switch_tables(topo.graph, labels);  // rejects non-prefix-free tables
  const Path path = path_from_ids(topo.graph, vertices);
  const EncodedPath packet = encode_path(labels, path);
  out << to_hex(to_wire(packet)) << '\n';
  return 0;
}

int cmd_simulate(const std::string& topo_file, const std::string& labels_file,
                 const std::string& source, const std::string& hex,
                 std::ostream& out) {
  const TopologyFile topo = parse_topology_file(read_file(topo_file));
  const LabelTable labels =
      label_table_from_json(topo.graph, read_json(labels_file));
  const auto tables = build_switch_tables(topo.graph, labels);
  auto s = topo.graph.find_vertex(source);
  if (!s) throw InputError("unknown source vertex " + source);
  const EncodedPath packet = from_wire(from_hex(hex));
  const Path path = simulate(topo.graph, tables, *s, packet);
  out << source;
  for (ArcIndex arc : path.arcs) {
    out << ' ' << topo.graph.vertex_id(topo.graph.arc(arc).head);
  }
  out << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Variable-length prefix-free interface labels for source routing",
               "pathcode"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand(
      "optimize", "Compute label lengths and labels for a topology file");
  optimize->add_option("file", opt.file, "Topology file")->required();
  optimize->add_option("--gamma", opt.options.solver.gamma, "Ascent step size")
      ->capture_default_str();
  optimize->add_option("--max-iters", opt.options.solver.max_iterations,
                       "Iteration limit")
      ->capture_default_str();
  optimize->add_option("--tol", opt.options.solver.tolerance,
                       "Relative dual change for convergence")
      ->capture_default_str();
  optimize->add_option("--snap-eps", opt.options.snap_eps,
                       "Rounding snap tolerance")
      ->capture_default_str();
  optimize->add_flag("--no-local-search", opt.no_local_search,
                     "Skip local-search refinement");
  optimize->add_flag("--oracle", opt.options.oracle,
                     "Also compute the exact optimum when small enough");
  optimize->add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  optimize->add_option("--labels", opt.labels_out, "Write label table JSON");
  optimize->add_option("--lengths", opt.lengths_out, "Write length JSON");
  optimize->add_option("--trace", opt.trace_out, "Write solver trace CSV");
  optimize->add_flag("--all-pairs", opt.all_pairs,
                     "Use all-pairs shortest paths instead of the file's");
  optimize->add_flag("--timings", opt.timings, "Include stage timings");

  std::string enc_topo, enc_labels;
  std::vector<std::string> enc_path;
  auto* encode = app.add_subcommand("encode", "Encode a path as a packet (hex)");
  encode->add_option("topology", enc_topo, "Topology file")->required();
  encode->add_option("labels", enc_labels, "Label table JSON")->required();
  encode->add_option("path", enc_path, "Vertex ids along the path")->required();

  std::string sim_topo, sim_labels, sim_source, sim_hex;
  auto* sim = app.add_subcommand("simulate", "Forward a packet hop by hop");
  sim->add_option("topology", sim_topo, "Topology file")->required();
  sim->add_option("labels", sim_labels, "Label table JSON")->required();
  sim->add_option("source", sim_source, "Source vertex id")->required();
  sim->add_option("packet", sim_hex, "Packet in hex")->required();

  std::string bench_dir, bench_format = "text", bench_csv_out;
  bool bench_all_pairs = false;
  PipelineOptions bench_options;
  auto* bench = app.add_subcommand("bench", "Fixed vs. variable on a directory");
  bench->add_option("directory", bench_dir, "Directory of topology files")
      ->required();
  bench->add_option("--format", bench_format, "Table format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
  bench->add_option("--csv", bench_csv_out, "Also write CSV to this file");
  bench->add_flag("--all-pairs", bench_all_pairs,
                  "Ignore path lines and use all-pairs shortest paths");
  bench->add_option("--gamma", bench_options.solver.gamma, "Ascent step size");
  bench->add_option("--max-iters", bench_options.solver.max_iterations,
                    "Iteration limit");
  bench->add_option("--tol", bench_options.solver.tolerance,
                    "Relative dual change for convergence");
  bench->add_option("--snap-eps", bench_options.snap_eps,
                    "Rounding snap tolerance");

  std::string gen_cnf, gen_out;
  bool gen_random = false;
  std::optional<std::size_t> gen_spine;
  RandomInstanceSpec gen_spec;
  auto* gen = app.add_subcommand("gen", "Generate a topology file");
  auto* gen_cnf_opt = gen->add_option("--cnf", gen_cnf, "DIMACS formula file");
  auto* gen_random_opt =
      gen->add_flag("--random", gen_random, "Random instance");
  auto* gen_spine_opt =
      gen->add_option("--spine", gen_spine, "Spine out-arborescence with K levels");
  gen_cnf_opt->excludes(gen_random_opt)->excludes(gen_spine_opt);
  gen_random_opt->excludes(gen_spine_opt);
  gen->add_option("--vertices", gen_spec.vertices, "Random: vertex count")
      ->capture_default_str();
  gen->add_option("--out-degree", gen_spec.max_out_degree,
                  "Random: max out-degree")
      ->capture_default_str();
  gen->add_option("--paths", gen_spec.paths, "Random: path count")
      ->capture_default_str();
  gen->add_option("--seed", gen_spec.seed, "Random: seed")
      ->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Write to file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*optimize) return cmd_optimize(opt, out);
    if (*encode) return cmd_encode(enc_topo, enc_labels, enc_path, out);
    if (*sim) return cmd_simulate(sim_topo, sim_labels, sim_source, sim_hex, out);
    if (*bench) {
      const auto rows = run_bench(bench_dir, bench_all_pairs, bench_options);
      if (!bench_csv_out.empty()) write_file(bench_csv_out, bench_csv(rows));
      out << (bench_format == "csv" ? bench_csv(rows) : bench_text(rows));
      return 0;
    }
    if (*gen) {
      std::string text;
      if (!gen_cnf.empty()) {
        const Gadget gadget = build_gadget(parse_dimacs(read_file(gen_cnf)));
        for (const auto& w : gadget.warnings) err << "warning: " << w << '\n';
        text = serialize_topology(gadget.instance);
      } else if (gen_random) {
        text = serialize_topology(random_instance(gen_spec));
      } else if (gen_spine) {
        text = serialize_topology(spine_instance(*gen_spine));
      } else {
        throw InputError("gen needs one of --cnf, --random, --spine");
      }
      if (gen_out.empty()) {
        out << text;
      } else {
        write_file(gen_out, text);
      }
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    err << "invariant failure: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace pathcode
