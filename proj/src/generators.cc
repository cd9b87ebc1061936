#include "pathcode/generators.h"

#include <algorithm>
#include <set>
#include <string>

#include "pathcode/error.h"
#include "pathcode/rng.h"

namespace pathcode {

ProblemInstance spine_instance(std::size_t k) {
  if (k < 1) throw InputError("spine needs K >= 1");
  Graph g;
  std::vector<VertexIndex> spine(k + 1);
  for (std::size_t i = k; i >= 1; --i) {
    spine[i] = g.add_vertex("v" + std::to_string(i));
  }
  spine[0] = g.add_vertex("s0");
  std::vector<VertexIndex> leaf(k + 1);
  for (std::size_t i = k; i >= 1; --i) {
    leaf[i] = g.add_vertex("w" + std::to_string(i));
  }
  for (std::size_t i = k; i >= 1; --i) {
    g.add_arc(spine[i], spine[i - 1]);
    g.add_arc(spine[i], leaf[i]);
  }
  std::vector<Path> paths = root_to_leaf_paths(g);
  return ProblemInstance(std::move(g), std::move(paths));
}

bool is_out_arborescence(const Graph& graph) {
  const std::size_t n = graph.num_vertices();
  if (n == 0) return false;
  std::vector<std::size_t> in_degree(n, 0);
  for (const Arc& a : graph.arcs()) ++in_degree[a.head];
  std::size_t roots = 0;
  VertexIndex root = 0;
  for (VertexIndex v = 0; v < n; ++v) {
    if (in_degree[v] == 0) {
      ++roots;
      root = v;
    } else if (in_degree[v] > 1) {
      return false;
    }
  }
  if (roots != 1) return false;
  std::vector<bool> seen(n, false);
  std::vector<VertexIndex> stack{root};
  seen[root] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexIndex v = stack.back();
    stack.pop_back();
    for (ArcIndex a : graph.out_arcs(v)) {
      VertexIndex h = graph.arc(a).head;
      if (!seen[h]) {
        seen[h] = true;
        ++reached;
        stack.push_back(h);
      }
    }
  }
  return reached == n;
}

std::vector<Path> root_to_leaf_paths(const Graph& graph) {
  if (!is_out_arborescence(graph)) {
    throw InputError("graph is not an out-arborescence");
  }
  std::vector<bool> has_parent(graph.num_vertices(), false);
  for (const Arc& a : graph.arcs()) has_parent[a.head] = true;
  VertexIndex root =
      static_cast<VertexIndex>(std::find(has_parent.begin(), has_parent.end(),
                                         false) -
                               has_parent.begin());

  std::vector<Path> paths;
  Path current;
  // Depth-first walk; each stack entry is (vertex, next out-arc position).
  std::vector<std::pair<VertexIndex, std::size_t>> stack{{root, 0}};
  while (!stack.empty()) {
    const VertexIndex v = stack.back().first;
    const std::size_t next = stack.back().second;
    auto out = graph.out_arcs(v);
    if (next == 0 && out.empty() && !current.arcs.empty()) {
      paths.push_back(current);
    }
    if (next < out.size()) {
      ++stack.back().second;
      current.arcs.push_back(out[next]);
      stack.emplace_back(graph.arc(out[next]).head, 0);
      continue;
    }
    stack.pop_back();
    if (!current.arcs.empty()) current.arcs.pop_back();
  }
  return paths;
}

ProblemInstance random_instance(const RandomInstanceSpec& spec) {
  if (spec.vertices < 2) throw InputError("random instance needs >= 2 vertices");
  if (spec.max_out_degree < 1) throw InputError("max out-degree must be >= 1");
  if (spec.paths < 1) throw InputError("random instance needs >= 1 path");

  Rng rng(spec.seed);
  const std::size_t n = spec.vertices;
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (VertexIndex v = 0; v < n; ++v) {
    std::vector<VertexIndex> others;
    for (VertexIndex u = 0; u < n; ++u) {
      if (u != v) others.push_back(u);
    }
    rng.shuffle(others);
    std::size_t degree =
        rng.between(1, std::min(spec.max_out_degree, others.size()));
    for (std::size_t i = 0; i < degree; ++i) g.add_arc(v, others[i]);
  }

  std::vector<Path> paths;
  std::set<std::vector<ArcIndex>> seen;
  const std::size_t attempts = spec.paths * 50;
  for (std::size_t t = 0; t < attempts && paths.size() < spec.paths; ++t) {
    VertexIndex cur = rng.below(n);
    std::size_t target_hops = rng.between(1, n - 1);
    std::vector<bool> visited(n, false);
    visited[cur] = true;
    Path p;
    while (p.hops() < target_hops) {
      std::vector<ArcIndex> options;
      for (ArcIndex a : g.out_arcs(cur)) {
        if (!visited[g.arc(a).head]) options.push_back(a);
      }
      if (options.empty()) break;
      ArcIndex a = options[rng.below(options.size())];
      p.arcs.push_back(a);
      cur = g.arc(a).head;
      visited[cur] = true;
    }
    if (p.arcs.empty() || !seen.insert(p.arcs).second) continue;
    paths.push_back(std::move(p));
  }
  return ProblemInstance(std::move(g), std::move(paths));
}

}  // namespace pathcode
