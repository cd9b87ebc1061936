#ifndef PATHCODE_GENERATORS_H_
#define PATHCODE_GENERATORS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pathcode/topology.h"

namespace pathcode {

// Spine out-arborescence with 2K+1 vertices. Spine vertices v<K> (root) down
// to v1; v<k> has a spine arc towards v<k-1> (v1's goes to leaf s0) followed
// by an off-spine arc to leaf w<k>. Paths: every root-to-leaf path.
ProblemInstance spine_instance(std::size_t k);

// All root-to-leaf paths of an out-arborescence, in depth-first order
// following arc declaration order. Throws InputError if the graph is not an
// out-arborescence.
std::vector<Path> root_to_leaf_paths(const Graph& graph);

// True iff exactly one vertex has in-degree 0, every other vertex has
// in-degree 1 and every vertex is reachable from the root.
bool is_out_arborescence(const Graph& graph);

struct RandomInstanceSpec {
  std::size_t vertices = 6;
  std::size_t max_out_degree = 3;
  std::size_t paths = 8;
  std::uint64_t seed = 1;
};

// Random graph on vertices v0.. with out-degrees in [1, max_out_degree] and
// up to spec.paths distinct random vertex-simple paths. Deterministic for a
// given spec. May return fewer paths than requested on tiny graphs.
ProblemInstance random_instance(const RandomInstanceSpec& spec);

}  // namespace pathcode

#endif  // PATHCODE_GENERATORS_H_
