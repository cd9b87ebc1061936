#ifndef PATHCODE_INTEGERIZE_H_
#define PATHCODE_INTEGERIZE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "pathcode/dyadic.h"
#include "pathcode/solver.h"
#include "pathcode/topology.h"

namespace pathcode {

// Integer label lengths in bits, indexed by arc. Unassigned arcs are empty.
struct IntLengths {
  std::vector<std::optional<int>> lengths;
  int objective = 0;

  bool operator==(const IntLengths&) const = default;
};

// Max over paths of the summed lengths. Throws InputError if a path arc has
// no length.
int objective_int(const ProblemInstance& instance, const IntLengths& lengths);

// 1 - sum of 2^-l over the assigned out-arcs of v, exactly.
Dyadic vertex_slack(const Graph& graph, const IntLengths& lengths,
                    VertexIndex v);

// Kraft at every vertex over assigned arcs, in exact arithmetic.
bool kraft_feasible(const Graph& graph, const IntLengths& lengths);

// {"lengths": {"<tail>": {"<head>": l}}, "objective": L}.
nlohmann::json to_json(const Graph& graph, const IntLengths& lengths);
// Inverse of to_json; the objective is recomputed. Throws InputError on
// unknown arcs or negative lengths.
IntLengths int_lengths_from_json(const ProblemInstance& instance,
                                 const nlohmann::json& doc);

// ceil(l - snap_eps) on every arc with a real length. A vertex whose snapped
// lengths break Kraft falls back to the plain ceiling; if that breaks too the
// input was not feasible and InvariantError is thrown.
IntLengths round_lengths(const ProblemInstance& instance,
                         const RealLengths& real, double snap_eps = 1e-6);

// Repeatedly shortens by one bit the first arc, scanning longest paths in
// path order and each from its source, whose tail keeps Kraft feasible after
// the change. Stops when no arc on a longest path can be shortened. An arc is
// never shortened below floors[a] when `floors` is nonempty.
IntLengths local_search(const ProblemInstance& instance,
                        const IntLengths& start,
                        std::span<const int> floors = {});

// Per-arc minimum lengths that keep forwarding decodable: 1 on the sole
// out-arc of a vertex where some path ends (an empty label there would make
// the packet move on), 0 elsewhere.
std::vector<int> destination_floors(const ProblemInstance& instance);

// Raises assigned lengths to their floors; the objective is recomputed.
IntLengths apply_floors(const ProblemInstance& instance, IntLengths lengths,
                        std::span<const int> floors);

// ceil(log2 k) bits on every out-arc of a vertex with k out-arcs.
IntLengths fixed_length_baseline(const ProblemInstance& instance);

struct Equalization {
  std::vector<int> lengths;
  int value = 0;
};

// Smallest T with sum_i 2^-(T - d_i) <= 1 and the lengths T - d_i. Throws
// InputError on an empty or negative input.
Equalization equalize(std::span<const int> partials);

// Exact optimum on an out-arborescence whose path set is every root-to-leaf
// path, by equalizing child subtrees bottom-up. Throws InputError otherwise.
IntLengths tree_dp_exact(const ProblemInstance& instance);

// Default per-arc cap for brute_force_exact.
int default_brute_force_cap(const ProblemInstance& instance);

// Global optimum over all arcs with every length <= cap, by branch and bound
// over per-vertex length tuples that cannot be shortened. Throws InputError
// if the candidate space exceeds 1e8.
IntLengths brute_force_exact(const ProblemInstance& instance,
                             std::optional<int> cap = std::nullopt);

}  // namespace pathcode

#endif  // PATHCODE_INTEGERIZE_H_
