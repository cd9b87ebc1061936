#include "pathcode/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pathcode/codec.h"
#include "pathcode/error.h"

namespace pathcode {
namespace {

constexpr double kBoundSlack = 1e-6;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fixed4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

PipelineResult run_pipeline(const ProblemInstance& instance,
                            const PipelineOptions& options) {
  const Graph& g = instance.graph();
  PipelineResult out{{}, {DualWeights::uniform(instance.num_paths()), {}, {}},
                     {}, {}};
  RunReport& r = out.report;
  r.vertices = g.num_vertices();
  r.arcs = g.num_arcs();
  r.paths = instance.num_paths();

  Stopwatch solve_clock;
  out.relaxed = solve_relaxed(instance, options.solver);
  r.times.solve_ms = solve_clock.ms();
  r.relaxed = dual_objective(instance, out.relaxed.weights.values());
  r.relaxed_primal = out.relaxed.lengths.objective;
  r.termination = out.relaxed.trace.termination;
  r.iterations = out.relaxed.trace.iterations();
  r.refinement_phases = out.relaxed.trace.refinement_phases;

  Stopwatch int_clock;
  const std::vector<int> floors = destination_floors(instance);
  const IntLengths fixed =
      apply_floors(instance, fixed_length_baseline(instance), floors);
  r.fixed = fixed.objective;
  IntLengths rounded = complete_unused_arcs(
      instance, round_lengths(instance, out.relaxed.lengths, options.snap_eps));
  r.rounded = rounded.objective;
  IntLengths variable = apply_floors(instance, rounded, floors);
  IntLengths fallback = fixed;
  if (options.local_search) {
    variable = local_search(instance, variable, floors);
    fallback = local_search(instance, fixed, floors);
  }
  if (fallback.objective < variable.objective) {
    variable = std::move(fallback);
    r.fixed_fallback = true;
  }
  r.variable = variable.objective;
  r.times.integerize_ms = int_clock.ms();

  if (!kraft_feasible(g, variable)) {
    throw InvariantError("final lengths violate Kraft's inequality");
  }
  if (!(r.relaxed <= r.variable + kBoundSlack) || r.variable > r.fixed) {
    throw InvariantError("expected L^C <= variable <= fixed, got " +
                         fixed4(r.relaxed) + ", " + std::to_string(r.variable) +
                         ", " + std::to_string(r.fixed));
  }

  Stopwatch label_clock;
  out.labels = assign_labels(g, variable);
  if (!is_prefix_free(g, out.labels)) {
    throw InvariantError("generated labels are not prefix-free");
  }
  check_destinations(instance, out.labels);
  const auto tables = build_switch_tables(g, out.labels);
  for (const Path& p : instance.paths()) {
    const EncodedPath packet = encode_path(out.labels, p);
    if (static_cast<int>(packet.bits.size()) > r.variable) {
      throw InvariantError("encoded path longer than the objective");
    }
    if (simulate(g, tables, g.arc(p.arcs.front()).tail, packet) != p) {
      throw InvariantError("encoded path does not decode to itself");
    }
  }
  r.times.label_ms = label_clock.ms();
  out.lengths = std::move(variable);

  if (options.oracle) {
    Stopwatch oracle_clock;
    try {
      r.optimum = brute_force_exact(instance).objective;
    } catch (const InputError& e) {
      r.oracle_note = e.what();
    }
    r.times.oracle_ms = oracle_clock.ms();
    if (r.optimum && (r.relaxed > *r.optimum + kBoundSlack ||
                      *r.optimum > r.variable)) {
      throw InvariantError("oracle optimum outside [L^C, variable]");
    }
  }
  return out;
}

std::string report_text(const RunReport& r, bool timings) {
  std::ostringstream s;
  s << "vertices: " << r.vertices << '\n'
    << "arcs: " << r.arcs << '\n'
    << "paths: " << r.paths << '\n'
    << "fixed: " << r.fixed << '\n'
    << "relaxed: " << fixed4(r.relaxed) << '\n'
    << "relaxed_primal: " << fixed4(r.relaxed_primal) << '\n'
    << "rounded: " << r.rounded << '\n'
    << "variable: " << r.variable << '\n'
    << "fixed_fallback: " << (r.fixed_fallback ? "yes" : "no") << '\n'
    << "solver: " << to_string(r.termination) << " after " << r.iterations
    << " iterations";
  if (r.refinement_phases) s << ", " << r.refinement_phases << " refinements";
  s << '\n';
  if (r.optimum) {
    s << "optimum: " << *r.optimum << '\n';
  } else if (!r.oracle_note.empty()) {
    s << "optimum: skipped (" << r.oracle_note << ")\n";
  }
  if (timings) {
    s << "time_solve_ms: " << fixed4(r.times.solve_ms) << '\n'
      << "time_integerize_ms: " << fixed4(r.times.integerize_ms) << '\n'
      << "time_label_ms: " << fixed4(r.times.label_ms) << '\n'
      << "time_oracle_ms: " << fixed4(r.times.oracle_ms) << '\n';
  }
  return s.str();
}

nlohmann::json report_json(const RunReport& r, bool timings) {
  nlohmann::json j = {{"vertices", r.vertices},
                      {"arcs", r.arcs},
                      {"paths", r.paths},
                      {"fixed", r.fixed},
                      {"relaxed", r.relaxed},
                      {"relaxed_primal", r.relaxed_primal},
                      {"rounded", r.rounded},
                      {"variable", r.variable},
                      {"fixed_fallback", r.fixed_fallback},
                      {"termination", to_string(r.termination)},
                      {"iterations", r.iterations},
                      {"refinement_phases", r.refinement_phases}};
  j["optimum"] = r.optimum ? nlohmann::json(*r.optimum) : nlohmann::json();
  if (timings) {
    j["time_ms"] = {{"solve", r.times.solve_ms},
                    {"integerize", r.times.integerize_ms},
                    {"label", r.times.label_ms},
                    {"oracle", r.times.oracle_ms}};
  }
  return j;
}

std::string report_csv_header(bool timings) {
  std::string h =
      "vertices,arcs,paths,fixed,relaxed,relaxed_primal,rounded,variable,"
      "fixed_fallback,"
      "termination,iterations,optimum";
  if (timings) h += ",solve_ms,integerize_ms,label_ms,oracle_ms";
  return h + "\n";
}

std::string report_csv_row(const RunReport& r, bool timings) {
  std::ostringstream s;
  s << r.vertices << ',' << r.arcs << ',' << r.paths << ',' << r.fixed << ','
    << fixed4(r.relaxed) << ',' << fixed4(r.relaxed_primal) << ','
    << r.rounded << ',' << r.variable << ','
    << (r.fixed_fallback ? 1 : 0) << ',' << to_string(r.termination) << ','
    << r.iterations << ',';
  if (r.optimum) s << *r.optimum;
  if (timings) {
    s << ',' << fixed4(r.times.solve_ms) << ','
      << fixed4(r.times.integerize_ms) << ',' << fixed4(r.times.label_ms)
      << ',' << fixed4(r.times.oracle_ms);
  }
  s << '\n';
  return s.str();
}

std::vector<BenchRow> run_bench(const std::string& directory, bool all_pairs,
                                const PipelineOptions& options) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw InputError("not a directory: " + directory);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  std::vector<BenchRow> rows;
  for (const auto& file : files) {
    BenchRow row{file.filename().string(), std::nullopt, {}};
    try {
      TopologyFile topo = parse_topology_file(read_file(file));
      std::vector<Path> paths = (all_pairs || topo.paths.empty())
                                    ? shortest_path_set(topo.graph)
                                    : std::move(topo.paths);
      ProblemInstance inst(std::move(topo.graph), std::move(paths));
      row.report = run_pipeline(inst, options).report;
    } catch (const InputError& e) {
      row.error = e.what();
    } catch (const InvariantError& e) {
      row.error = std::string("invariant: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_text(const std::vector<BenchRow>& rows) {
  std::ostringstream s;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-24s %6s %6s %6s %6s %9s %8s\n", "network",
                "nodes", "edges", "paths", "fixed", "variable", "relaxed");
  s << buf;
  for (const auto& row : rows) {
    if (!row.report) {
      s << row.name << ": error: " << row.error << '\n';
      continue;
    }
    const RunReport& r = *row.report;
    std::snprintf(buf, sizeof buf, "%-24s %6zu %6zu %6zu %6d %9d %8.4f\n",
                  row.name.c_str(), r.vertices, r.arcs, r.paths, r.fixed,
                  r.variable, r.relaxed);
    s << buf;
  }
  return s.str();
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream s;
  s << "network,nodes,edges,paths,fixed,variable,relaxed,error\n";
  for (const auto& row : rows) {
    s << row.name << ',';
    if (row.report) {
      const RunReport& r = *row.report;
      s << r.vertices << ',' << r.arcs << ',' << r.paths << ',' << r.fixed
        << ',' << r.variable << ',' << fixed4(r.relaxed) << ",\n";
    } else {
      std::string err = row.error;
      std::replace(err.begin(), err.end(), ',', ';');
      std::replace(err.begin(), err.end(), '\n', ' ');
      s << ",,,,,," << err << '\n';
    }
  }
  return s.str();
}

}  // namespace pathcode
