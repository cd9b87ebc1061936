#ifndef PATHCODE_SOLVER_H_
#define PATHCODE_SOLVER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathcode/topology.h"

namespace pathcode {

// Probability distribution over the instance's paths, in path order.
class DualWeights {
 public:
  // Throws InputError unless every entry is >= 0 and the sum is 1 within
  // 1e-9.
  explicit DualWeights(std::vector<double> alpha);
  static DualWeights uniform(std::size_t paths);

  std::span<const double> values() const { return alpha_; }
  std::size_t size() const { return alpha_.size(); }
  double operator[](std::size_t p) const { return alpha_[p]; }

 private:
  std::vector<double> alpha_;
};

// Real-valued label lengths in bits, indexed by arc. An arc has no length
// when no path crosses it, or (straight out of recover_primal) when its tail
// carries no path mass.
struct RealLengths {
  std::vector<std::optional<double>> lengths;
  // Max over paths of the sum of assigned lengths.
  double objective = 0.0;
};

struct SolverConfig {
  // Ascent step on the natural-log gradient.
  double gamma = 0.1;
  std::size_t max_iterations = 20000;
  // Relative change of the dual objective over `window` iterations.
  double tolerance = 1e-7;
  std::size_t window = 5;
  // Lower bound on masses inside logs and ratios only; stored weights are
  // never floored.
  double alpha_floor = 1e-12;
  // Halve the step until the dual objective does not decrease.
  bool backtracking = true;

  // Throws InputError on out-of-range fields.
  void validate() const;
};

enum class Termination { kConverged, kMaxIterations, kStalled };

std::string to_string(Termination t);

struct IterationRecord {
  std::size_t iteration;
  double dual_objective;
  // Norm of the projected step divided by the step size.
  double gradient_norm;
  double step;
};

struct SolverTrace {
  std::vector<IterationRecord> records;
  Termination termination = Termination::kMaxIterations;
  // Extra solves needed for vertices left without path mass; see
  // solve_relaxed.
  std::size_t refinement_phases = 0;

  std::size_t iterations() const { return records.size(); }
  // "iteration,dual_objective,gradient_norm,step" header plus one row each.
  std::string to_csv() const;
};

struct RelaxedSolution {
  DualWeights weights;
  RealLengths lengths;
  SolverTrace trace;
};

// Dual objective in bits:
//   -sum_a m_a log2(m_a / M_tail(a)),
// where m_a is the weight of the paths through arc a and M_v the summed mass
// of v's out-arcs (the weight of the paths leaving v when each path leaves a
// vertex at most once). Terms with m_a = 0 vanish. `alpha` must have one
// nonnegative entry per path but need not sum to one, so finite differences
// can step off the simplex.
double dual_objective(const ProblemInstance& instance,
                      std::span<const double> alpha);

// Ascent direction per path,
//   sum_{a: tail(a) in p} r_a - sum_{a in p} ln r_a - |p|,
// with r_a = m_a / M_tail(a) and ratios floored before the log. Equals ln 2
// times the partial derivative of dual_objective.
std::vector<double> dual_gradient(const ProblemInstance& instance,
                                  std::span<const double> alpha,
                                  double alpha_floor = 1e-12);

// Euclidean projection onto the probability simplex, (v_p - eta)^+ with eta
// chosen so the result sums to one. Throws InputError on an empty input.
DualWeights project_simplex(std::span<const double> v);

// l_a = log2(M_tail(a) / m_a) for every arc on a path whose tail carries
// mass above the floor; m_a is floored and lengths are capped at 64 bits.
RealLengths recover_primal(const ProblemInstance& instance,
                           std::span<const double> alpha,
                           double alpha_floor = 1e-12);

struct EntropyDiagnostics {
  double expected_hops;        // E|P|
  double conditional_entropy;  // H(A | V) in bits
  double product;              // equals dual_objective
};

EntropyDiagnostics entropy_diagnostics(const ProblemInstance& instance,
                                       std::span<const double> alpha);

// Projected gradient ascent on the dual from the uniform distribution,
// followed by primal recovery. Paths whose every vertex ends without mass
// leave lengths undetermined; those are settled by re-solving the same
// problem restricted to the undetermined arcs, with the already fixed
// lengths entering as per-path constants, until every path arc has a length.
RelaxedSolution solve_relaxed(const ProblemInstance& instance,
                              const SolverConfig& config = {});

// Largest Kraft sum over vertices of the assigned lengths.
double max_kraft_sum(const Graph& graph, const RealLengths& lengths);

}  // namespace pathcode

#endif  // PATHCODE_SOLVER_H_
