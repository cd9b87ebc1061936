#ifndef PATHCODE_TOPOLOGY_H_
#define PATHCODE_TOPOLOGY_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pathcode {

using VertexIndex = std::size_t;
using ArcIndex = std::size_t;

struct Arc {
  VertexIndex tail;
  VertexIndex head;

  bool operator==(const Arc&) const = default;
};

// Directed simple graph. Vertices are opaque string ids kept in declaration
// order; arcs are kept in declaration order and indexed per tail.
class Graph {
 public:
  // Throws InputError on a duplicate id.
  VertexIndex add_vertex(std::string id);
  // Throws InputError on a duplicate arc or an out-of-range endpoint.
  ArcIndex add_arc(VertexIndex tail, VertexIndex head);

  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t num_arcs() const { return arcs_.size(); }

  const std::string& vertex_id(VertexIndex v) const { return ids_.at(v); }
  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  std::optional<ArcIndex> find_arc(VertexIndex tail, VertexIndex head) const;

  const Arc& arc(ArcIndex a) const { return arcs_.at(a); }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const ArcIndex> out_arcs(VertexIndex v) const { return out_.at(v); }
  std::size_t out_degree(VertexIndex v) const { return out_.at(v).size(); }
  std::size_t max_out_degree() const;

  bool operator==(const Graph& other) const {
    return ids_ == other.ids_ && arcs_ == other.arcs_;
  }

 private:
  std::vector<std::string> ids_;
  std::map<std::string, VertexIndex, std::less<>> index_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcIndex>> out_;
};

// A path is a nonempty chain of arcs with no repeated arc.
struct Path {
  std::vector<ArcIndex> arcs;

  std::size_t hops() const { return arcs.size(); }
  bool operator==(const Path&) const = default;
  auto operator<=>(const Path&) const = default;
};

// Vertex sequence of a path (hops() + 1 entries). Assumes a chained path.
std::vector<VertexIndex> path_vertices(const Graph& graph, const Path& path);
std::vector<std::string> path_vertex_ids(const Graph& graph, const Path& path);

// Builds a path from a vertex id sequence. Throws InputError if an id is
// unknown, consecutive vertices are not joined by an arc, or fewer than two
// vertices are given.
Path path_from_ids(const Graph& graph, std::span<const std::string> ids);

enum class DiagnosticKind {
  kEmptyPathSet,
  kEmptyPath,
  kArcOutOfRange,
  kBrokenChain,
  kRepeatedArc,
  kDuplicatePath,
};

struct Diagnostic {
  DiagnosticKind kind;
  std::size_t path_index;  // meaningless for kEmptyPathSet
  std::string message;
};

// One diagnostic per violated invariant; empty iff graph + paths form a valid
// instance.
std::vector<Diagnostic> validate_instance(const Graph& graph,
                                          std::span<const Path> paths);

// Validated graph plus path set. Immutable after construction.
class ProblemInstance {
 public:
  // Throws InputError listing every diagnostic if the pair is invalid.
  ProblemInstance(Graph graph, std::vector<Path> paths);

  const Graph& graph() const { return graph_; }
  std::span<const Path> paths() const { return paths_; }
  std::size_t num_paths() const { return paths_.size(); }

  bool is_used(ArcIndex a) const { return used_.at(a); }
  std::size_t num_used_arcs() const;
  std::size_t longest_hop_count() const;

  bool operator==(const ProblemInstance& other) const {
    return graph_ == other.graph_ && paths_ == other.paths_;
  }

 private:
  Graph graph_;
  std::vector<Path> paths_;
  std::vector<bool> used_;
};

// Graph and (possibly empty) path list as read from a topology file.
struct TopologyFile {
  Graph graph;
  std::vector<Path> paths;
};

// Line-oriented format:
//   node <id>
//   arc <tail> <head>
//   path <v0> <v1> ... <vk>     (k >= 1)
// '#' starts a comment; blank lines are ignored. Throws ParseError.
TopologyFile parse_topology_file(std::string_view text);

// As above, and additionally requires a valid, nonempty path set.
ProblemInstance parse_topology(std::string_view text);

std::string serialize_topology(const Graph& graph, std::span<const Path> paths);
std::string serialize_topology(const ProblemInstance& instance);

// One hop-minimal path per ordered reachable pair (s, t), s != t. Among
// hop-minimal paths the one with the bytewise-lexicographically smallest
// vertex id sequence is chosen. Ordered by source, then target, each in
// vertex declaration order.
std::vector<Path> shortest_path_set(const Graph& graph);

}  // namespace pathcode

#endif  // PATHCODE_TOPOLOGY_H_
