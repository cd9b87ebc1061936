#ifndef PATHCODE_PIPELINE_H_
#define PATHCODE_PIPELINE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathcode/integerize.h"
#include "pathcode/labeling.h"
#include "pathcode/solver.h"
#include "pathcode/topology.h"

namespace pathcode {

struct PipelineOptions {
  SolverConfig solver;
  double snap_eps = 1e-6;
  bool local_search = true;
  // Also run brute_force_exact; skipped when the search space is too large.
  bool oracle = false;
};

struct StageTimes {
  double solve_ms = 0;
  double integerize_ms = 0;
  double label_ms = 0;
  double oracle_ms = 0;
};

struct RunReport {
  std::size_t vertices = 0;
  std::size_t arcs = 0;
  std::size_t paths = 0;
  int fixed = 0;
  // Dual value at the returned weights: a lower bound on L^C, equal to it at
  // the optimum.
  double relaxed = 0;
  // Objective of the recovered real lengths: an upper bound on L^C.
  double relaxed_primal = 0;
  int rounded = 0;      // L^I, after completing unused arcs
  int variable = 0;     // final objective
  // The fixed-length assignment (after local search) beat the rounded one.
  bool fixed_fallback = false;
  Termination termination = Termination::kMaxIterations;
  std::size_t iterations = 0;
  std::size_t refinement_phases = 0;
  std::optional<int> optimum;  // L^* when the oracle ran
  std::string oracle_note;     // why the oracle did not run
  StageTimes times;
};

struct PipelineResult {
  RunReport report;
  RelaxedSolution relaxed;
  IntLengths lengths;
  LabelTable labels;
};

// Relax, round, complete unused arcs, refine; keep the better of that and
// the refined fixed-length assignment; label. Both assignments respect
// destination_floors, and `fixed` is reported with them applied. Throws
// InvariantError if relaxed <= final <= fixed fails, labels are not
// prefix-free, or a path does not decode back to itself.
PipelineResult run_pipeline(const ProblemInstance& instance,
                            const PipelineOptions& options = {});

// Plain text, one "key: value" per line. Timings only when requested.
std::string report_text(const RunReport& report, bool timings);
nlohmann::json report_json(const RunReport& report, bool timings);
std::string report_csv_header(bool timings);
std::string report_csv_row(const RunReport& report, bool timings);

struct BenchRow {
  std::string name;
  std::optional<RunReport> report;
  std::string error;
};

// Every regular file in `directory`, sorted by name. Files with path lines
// use them; files without (or all files when `all_pairs`) get the shortest
// path set. Failures are recorded per row.
std::vector<BenchRow> run_bench(const std::string& directory, bool all_pairs,
                                const PipelineOptions& options);

// Nodes | Edges | Paths | Fixed | Variable | L^C table.
std::string bench_text(const std::vector<BenchRow>& rows);
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace pathcode

#endif  // PATHCODE_PIPELINE_H_
