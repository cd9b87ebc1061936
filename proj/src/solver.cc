#include "pathcode/solver.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <utility>

#include "pathcode/error.h"

namespace pathcode {
namespace {

constexpr double kLengthCap = 64.0;
constexpr double kSimplexTolerance = 1e-9;

// Dual of the relaxed problem restricted to a subset of arcs ("free" arcs),
// with every path carrying a constant offset for its fixed arcs. The full
// problem is the case of all arcs free and zero offsets.
class DualModel {
 public:
  DualModel(const Graph& graph, std::vector<std::vector<ArcIndex>> path_arcs,
            std::vector<double> offsets)
      : graph_(graph),
        path_arcs_(std::move(path_arcs)),
        offsets_(std::move(offsets)) {}

  std::size_t num_paths() const { return path_arcs_.size(); }
  std::span<const ArcIndex> path_arcs(std::size_t p) const {
    return path_arcs_[p];
  }
  double offset(std::size_t p) const { return offsets_[p]; }

  void masses(std::span<const double> alpha, std::vector<double>& arc_mass,
              std::vector<double>& vertex_mass) const {
    arc_mass.assign(graph_.num_arcs(), 0.0);
    vertex_mass.assign(graph_.num_vertices(), 0.0);
    for (std::size_t p = 0; p < path_arcs_.size(); ++p) {
      for (ArcIndex a : path_arcs_[p]) {
        arc_mass[a] += alpha[p];
        vertex_mass[graph_.arc(a).tail] += alpha[p];
      }
    }
  }

  double objective(std::span<const double> alpha) const {
    std::vector<double> arc_mass, vertex_mass;
    masses(alpha, arc_mass, vertex_mass);
    double value = 0.0;
    for (std::size_t p = 0; p < path_arcs_.size(); ++p) {
      value += alpha[p] * offsets_[p];
    }
    for (ArcIndex a = 0; a < graph_.num_arcs(); ++a) {
      const double m = arc_mass[a];
      if (m <= 0.0) continue;
      value -= m * std::log2(m / vertex_mass[graph_.arc(a).tail]);
    }
    return value;
  }

  std::vector<double> gradient(std::span<const double> alpha,
                               double floor) const {
    std::vector<double> arc_mass, vertex_mass;
    masses(alpha, arc_mass, vertex_mass);
    // Sum of out-arc ratios per vertex; one in the limit when the vertex has
    // no mass.
    std::vector<double> ratio_sum(graph_.num_vertices(), 1.0);
    for (VertexIndex v = 0; v < graph_.num_vertices(); ++v) {
      if (vertex_mass[v] <= 0.0) continue;
      double s = 0.0;
      for (ArcIndex a : graph_.out_arcs(v)) s += arc_mass[a] / vertex_mass[v];
      ratio_sum[v] = s;
    }
    std::vector<double> grad(path_arcs_.size());
    for (std::size_t p = 0; p < path_arcs_.size(); ++p) {
      double tail_term = 0.0;
      double log_term = 0.0;
      for (ArcIndex a : path_arcs_[p]) {
        const VertexIndex v = graph_.arc(a).tail;
        tail_term += ratio_sum[v];
        log_term += std::log(std::max(arc_mass[a], floor) /
                             std::max(vertex_mass[v], floor));
      }
      grad[p] = tail_term - log_term -
                static_cast<double>(path_arcs_[p].size()) +
                std::log(2.0) * offsets_[p];
    }
    return grad;
  }

  // Fills lengths of model arcs whose tail mass exceeds the floor.
  void recover(std::span<const double> alpha, double floor,
               std::vector<std::optional<double>>& lengths) const {
    std::vector<double> arc_mass, vertex_mass;
    masses(alpha, arc_mass, vertex_mass);
    for (const auto& arcs : path_arcs_) {
      for (ArcIndex a : arcs) {
        const double tail_mass = vertex_mass[graph_.arc(a).tail];
        if (tail_mass <= floor) continue;
        double len = std::log2(tail_mass / std::max(arc_mass[a], floor));
        lengths[a] = std::clamp(len, 0.0, kLengthCap);
      }
    }
  }

 private:
  const Graph& graph_;
  std::vector<std::vector<ArcIndex>> path_arcs_;
  std::vector<double> offsets_;
};

DualModel full_model(const ProblemInstance& instance) {
  std::vector<std::vector<ArcIndex>> arcs;
  for (const Path& p : instance.paths()) arcs.push_back(p.arcs);
  return DualModel(instance.graph(), std::move(arcs),
                   std::vector<double>(instance.num_paths(), 0.0));
}

void check_alpha(const ProblemInstance& instance,
                 std::span<const double> alpha) {
  if (alpha.size() != instance.num_paths()) {
    throw InputError("weight vector has " + std::to_string(alpha.size()) +
                     " entries, instance has " +
                     std::to_string(instance.num_paths()) + " paths");
  }
  for (double x : alpha) {
    if (!(x >= 0.0)) throw InputError("weights must be nonnegative");
  }
}

struct AscentResult {
  std::vector<double> alpha;
  SolverTrace trace;
};

AscentResult ascend(const DualModel& model, const SolverConfig& config) {
  const std::size_t n = model.num_paths();
  AscentResult result;
  result.alpha.assign(n, 1.0 / static_cast<double>(n));
  double value = model.objective(result.alpha);
  std::vector<double> history{value};

  for (std::size_t t = 1; t <= config.max_iterations; ++t) {
    const std::vector<double> grad =
        model.gradient(result.alpha, config.alpha_floor);
    double step = config.gamma;
    std::vector<double> raw(n);
    std::vector<double> candidate;
    double candidate_value = 0.0;
    bool accepted = false;
    while (true) {
      for (std::size_t p = 0; p < n; ++p) {
        raw[p] = result.alpha[p] + step * grad[p];
      }
      DualWeights projected = project_simplex(raw);
      candidate.assign(projected.values().begin(), projected.values().end());
      candidate_value = model.objective(candidate);
      if (!config.backtracking ||
          candidate_value >= value - 1e-12 * std::max(1.0, std::abs(value))) {
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step < config.gamma * 1e-20) break;
    }
    if (!accepted) {
      result.trace.termination = Termination::kStalled;
      return result;
    }
    double moved = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      const double d = candidate[p] - result.alpha[p];
      moved += d * d;
    }
    result.trace.records.push_back(
        {t, candidate_value, std::sqrt(moved) / step, step});
    result.alpha = std::move(candidate);
    value = candidate_value;
    history.push_back(value);
    if (t >= config.window) {
      const double before = history[t - config.window];
      if (std::abs(value - before) <=
          config.tolerance * std::max(1.0, std::abs(value))) {
        result.trace.termination = Termination::kConverged;
        return result;
      }
    }
  }
  result.trace.termination = Termination::kMaxIterations;
  return result;
}

double path_objective(const ProblemInstance& instance,
                      const std::vector<std::optional<double>>& lengths) {
  double best = 0.0;
  for (const Path& p : instance.paths()) {
    double sum = 0.0;
    for (ArcIndex a : p.arcs) sum += lengths[a].value_or(0.0);
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace

DualWeights::DualWeights(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  double sum = 0.0;
  for (double x : alpha_) {
    if (!(x >= 0.0)) throw InputError("dual weights must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw InputError("dual weights must sum to 1");
  }
}

DualWeights DualWeights::uniform(std::size_t paths) {
  if (paths == 0) throw InputError("no paths");
  return DualWeights(
      std::vector<double>(paths, 1.0 / static_cast<double>(paths)));
}

void SolverConfig::validate() const {
  if (!(gamma > 0.0)) throw InputError("gamma must be positive");
  if (max_iterations == 0) throw InputError("max iterations must be positive");
  if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
  if (window == 0) throw InputError("window must be positive");
  if (!(alpha_floor > 0.0 && alpha_floor <= 1e-6)) {
    throw InputError("alpha floor must lie in (0, 1e-6]");
  }
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kMaxIterations:
      return "max-iterations";
    case Termination::kStalled:
      return "stalled";
  }
  return "unknown";
}

std::string SolverTrace::to_csv() const {
  std::ostringstream out;
  out << "iteration,dual_objective,gradient_norm,step\n";
  char buf[128];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", r.iteration,
                  r.dual_objective, r.gradient_norm, r.step);
    out << buf;
  }
  return out.str();
}

double dual_objective(const ProblemInstance& instance,
                      std::span<const double> alpha) {
  check_alpha(instance, alpha);
  return full_model(instance).objective(alpha);
}

std::vector<double> dual_gradient(const ProblemInstance& instance,
                                  std::span<const double> alpha,
                                  double alpha_floor) {
  check_alpha(instance, alpha);
  return full_model(instance).gradient(alpha, alpha_floor);
}

DualWeights project_simplex(std::span<const double> v) {
  if (v.empty()) throw InputError("cannot project an empty vector");
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double eta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    prefix += sorted[j];
    const double candidate = (prefix - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) eta = candidate;
  }
  std::vector<double> out(v.size());
  double sum = 0.0;
  for (std::size_t p = 0; p < v.size(); ++p) {
    out[p] = std::max(v[p] - eta, 0.0);
    sum += out[p];
  }
  // Rounding can leave the sum a few ulps off; rescale so it is exact to
  // working precision.
  for (double& x : out) x /= sum;
  return DualWeights(std::move(out));
}

RealLengths recover_primal(const ProblemInstance& instance,
                           std::span<const double> alpha, double alpha_floor) {
  check_alpha(instance, alpha);
  RealLengths out;
  out.lengths.assign(instance.graph().num_arcs(), std::nullopt);
  full_model(instance).recover(alpha, alpha_floor, out.lengths);
  out.objective = path_objective(instance, out.lengths);
  return out;
}

EntropyDiagnostics entropy_diagnostics(const ProblemInstance& instance,
                                       std::span<const double> alpha) {
  check_alpha(instance, alpha);
  const Graph& g = instance.graph();
  std::vector<double> arc_mass, vertex_mass;
  full_model(instance).masses(alpha, arc_mass, vertex_mass);

  double expected_hops = 0.0;
  for (std::size_t p = 0; p < instance.num_paths(); ++p) {
    expected_hops += static_cast<double>(instance.paths()[p].hops()) * alpha[p];
  }
  double entropy = 0.0;
  if (expected_hops > 0.0) {
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
      if (vertex_mass[v] <= 0.0) continue;
      const double p_vertex = vertex_mass[v] / expected_hops;
      double h = 0.0;
      for (ArcIndex a : g.out_arcs(v)) {
        const double q = arc_mass[a] / vertex_mass[v];
        if (q > 0.0) h -= q * std::log2(q);
      }
      entropy += p_vertex * h;
    }
  }
  return {expected_hops, entropy, expected_hops * entropy};
}

RelaxedSolution solve_relaxed(const ProblemInstance& instance,
                              const SolverConfig& config) {
  config.validate();
  const Graph& g = instance.graph();

  DualModel model = full_model(instance);
  AscentResult main = ascend(model, config);

  std::vector<std::optional<double>> lengths(g.num_arcs());
  model.recover(main.alpha, config.alpha_floor, lengths);

  std::size_t phases = 0;
  while (true) {
    std::vector<std::vector<ArcIndex>> sub_arcs;
    std::vector<double> sub_offsets;
    for (const Path& p : instance.paths()) {
      std::vector<ArcIndex> open;
      double fixed = 0.0;
      for (ArcIndex a : p.arcs) {
        if (lengths[a]) {
          fixed += *lengths[a];
        } else {
          open.push_back(a);
        }
      }
      if (!open.empty()) {
        sub_arcs.push_back(std::move(open));
        sub_offsets.push_back(fixed);
      }
    }
    if (sub_arcs.empty()) break;
    // Each restricted solve gives some open vertex positive mass, so this
    // loop runs at most once per vertex.
    if (phases > g.num_vertices()) {
      throw InvariantError("relaxed refinement did not settle");
    }
    DualModel sub(g, std::move(sub_arcs), std::move(sub_offsets));
    AscentResult sub_result = ascend(sub, config);
    sub.recover(sub_result.alpha, config.alpha_floor, lengths);
    ++phases;
  }

  RelaxedSolution solution{DualWeights(std::move(main.alpha)), RealLengths{},
                           std::move(main.trace)};
  solution.trace.refinement_phases = phases;
  solution.lengths.lengths = std::move(lengths);
  solution.lengths.objective = path_objective(instance,
                                              solution.lengths.lengths);
  return solution;
}

double max_kraft_sum(const Graph& graph, const RealLengths& lengths) {
  double worst = 0.0;
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    double sum = 0.0;
    for (ArcIndex a : graph.out_arcs(v)) {
      if (lengths.lengths[a]) sum += std::exp2(-*lengths.lengths[a]);
    }
    worst = std::max(worst, sum);
  }
  return worst;
}

}  // namespace pathcode
