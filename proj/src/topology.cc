#include "pathcode/topology.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "pathcode/error.h"

namespace pathcode {

VertexIndex Graph::add_vertex(std::string id) {
  if (find_vertex(id)) {
    throw InputError("duplicate vertex '" + id + "'");
  }
  index_.emplace(id, ids_.size());
  ids_.push_back(std::move(id));
  out_.emplace_back();
  return ids_.size() - 1;
}

ArcIndex Graph::add_arc(VertexIndex tail, VertexIndex head) {
  if (tail >= num_vertices() || head >= num_vertices()) {
    throw InputError("arc endpoint out of range");
  }
  if (find_arc(tail, head)) {
    throw InputError("duplicate arc " + ids_[tail] + " -> " + ids_[head]);
  }
  arcs_.push_back({tail, head});
  out_[tail].push_back(arcs_.size() - 1);
  return arcs_.size() - 1;
}

std::optional<VertexIndex> Graph::find_vertex(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArcIndex> Graph::find_arc(VertexIndex tail,
                                        VertexIndex head) const {
  if (tail >= out_.size()) return std::nullopt;
  for (ArcIndex a : out_[tail]) {
    if (arcs_[a].head == head) return a;
  }
  return std::nullopt;
}

std::size_t Graph::max_out_degree() const {
  std::size_t best = 0;
  for (const auto& list : out_) best = std::max(best, list.size());
  return best;
}

std::vector<VertexIndex> path_vertices(const Graph& graph, const Path& path) {
  std::vector<VertexIndex> result;
  if (path.arcs.empty()) return result;
  result.reserve(path.arcs.size() + 1);
  result.push_back(graph.arc(path.arcs.front()).tail);
  for (ArcIndex a : path.arcs) result.push_back(graph.arc(a).head);
  return result;
}

std::vector<std::string> path_vertex_ids(const Graph& graph,
                                         const Path& path) {
  std::vector<std::string> ids;
  for (VertexIndex v : path_vertices(graph, path)) {
    ids.push_back(graph.vertex_id(v));
  }
  return ids;
}

Path path_from_ids(const Graph& graph, std::span<const std::string> ids) {
  if (ids.size() < 2) {
    throw InputError("a path needs at least two vertices");
  }
  Path path;
  std::optional<VertexIndex> prev;
  for (const std::string& id : ids) {
    auto v = graph.find_vertex(id);
    if (!v) throw InputError("unknown vertex '" + id + "'");
    if (prev) {
      auto a = graph.find_arc(*prev, *v);
      if (!a) {
        throw InputError("broken path chain: no arc " +
                         graph.vertex_id(*prev) + " -> " + id);
      }
      path.arcs.push_back(*a);
    }
    prev = v;
  }
  return path;
}

std::vector<Diagnostic> validate_instance(const Graph& graph,
                                          std::span<const Path> paths) {
  std::vector<Diagnostic> out;
  if (paths.empty()) {
    out.push_back({DiagnosticKind::kEmptyPathSet, 0, "path set is empty"});
  }
  std::set<std::vector<ArcIndex>> seen;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Path& p = paths[i];
    const std::string where = "path " + std::to_string(i) + ": ";
    if (p.arcs.empty()) {
      out.push_back({DiagnosticKind::kEmptyPath, i, where + "no arcs"});
      continue;
    }
    bool in_range = true;
    for (ArcIndex a : p.arcs) {
      if (a >= graph.num_arcs()) {
        out.push_back({DiagnosticKind::kArcOutOfRange, i,
                       where + "arc index " + std::to_string(a) +
                           " out of range"});
        in_range = false;
        break;
      }
    }
    if (!in_range) continue;
    for (std::size_t k = 0; k + 1 < p.arcs.size(); ++k) {
      const Arc& cur = graph.arc(p.arcs[k]);
      const Arc& next = graph.arc(p.arcs[k + 1]);
      if (cur.head != next.tail) {
        out.push_back({DiagnosticKind::kBrokenChain, i,
                       where + "arc " + std::to_string(k) + " ends at " +
                           graph.vertex_id(cur.head) + " but arc " +
                           std::to_string(k + 1) + " starts at " +
                           graph.vertex_id(next.tail)});
        break;
      }
    }
    std::vector<ArcIndex> sorted = p.arcs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      out.push_back(
          {DiagnosticKind::kRepeatedArc, i, where + "repeats an arc"});
    }
    if (!seen.insert(p.arcs).second) {
      out.push_back(
          {DiagnosticKind::kDuplicatePath, i, where + "duplicate path"});
    }
  }
  return out;
}

ProblemInstance::ProblemInstance(Graph graph, std::vector<Path> paths)
    : graph_(std::move(graph)), paths_(std::move(paths)) {
  auto diagnostics = validate_instance(graph_, paths_);
  if (!diagnostics.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& d : diagnostics) msg += "\n  " + d.message;
    throw InputError(msg);
  }
  used_.assign(graph_.num_arcs(), false);
  for (const Path& p : paths_) {
    for (ArcIndex a : p.arcs) used_[a] = true;
  }
}

std::size_t ProblemInstance::num_used_arcs() const {
  return static_cast<std::size_t>(std::count(used_.begin(), used_.end(), true));
}

std::size_t ProblemInstance::longest_hop_count() const {
  std::size_t best = 0;
  for (const Path& p : paths_) best = std::max(best, p.hops());
  return best;
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    if (j > i) tokens.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

TopologyFile parse_topology_file(std::string_view text) {
  TopologyFile file;
  std::set<std::vector<ArcIndex>> seen_paths;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0];
    try {
      if (keyword == "node") {
        if (tokens.size() != 2) {
          throw ParseError(line_no, "expected 'node <id>'");
        }
        file.graph.add_vertex(tokens[1]);
      } else if (keyword == "arc") {
        if (tokens.size() != 3) {
          throw ParseError(line_no, "expected 'arc <tail> <head>'");
        }
        auto tail = file.graph.find_vertex(tokens[1]);
        if (!tail) throw ParseError(line_no, "unknown vertex '" + tokens[1] + "'");
        auto head = file.graph.find_vertex(tokens[2]);
        if (!head) throw ParseError(line_no, "unknown vertex '" + tokens[2] + "'");
        file.graph.add_arc(*tail, *head);
      } else if (keyword == "path") {
        if (tokens.size() < 3) {
          throw ParseError(line_no, "expected 'path <v0> <v1> ...' with at "
                                    "least one arc");
        }
        std::vector<std::string> ids(tokens.begin() + 1, tokens.end());
        Path path = path_from_ids(file.graph, ids);
        std::vector<ArcIndex> sorted = path.arcs;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          throw ParseError(line_no, "path repeats an arc");
        }
        if (!seen_paths.insert(path.arcs).second) {
          throw ParseError(line_no, "duplicate path");
        }
        file.paths.push_back(std::move(path));
      } else {
        throw ParseError(line_no, "unknown keyword '" + keyword + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return file;
}

ProblemInstance parse_topology(std::string_view text) {
  TopologyFile file = parse_topology_file(text);
  if (file.paths.empty()) throw InputError("topology declares no paths");
  return ProblemInstance(std::move(file.graph), std::move(file.paths));
}

std::string serialize_topology(const Graph& graph,
                               std::span<const Path> paths) {
  std::ostringstream out;
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    out << "node " << graph.vertex_id(v) << '\n';
  }
  for (const Arc& a : graph.arcs()) {
    out << "arc " << graph.vertex_id(a.tail) << ' ' << graph.vertex_id(a.head)
        << '\n';
  }
  for (const Path& p : paths) {
    out << "path";
    for (const std::string& id : path_vertex_ids(graph, p)) out << ' ' << id;
    out << '\n';
  }
  return out.str();
}

std::string serialize_topology(const ProblemInstance& instance) {
  return serialize_topology(instance.graph(), instance.paths());
}

std::vector<Path> shortest_path_set(const Graph& graph) {
  const std::size_t n = graph.num_vertices();
  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

  // Out-neighbours of each vertex sorted by id, so the greedy walk below
  // picks the lexicographically smallest continuation first.
  std::vector<std::vector<ArcIndex>> sorted_out(n);
  std::vector<std::vector<VertexIndex>> in(n);
  for (VertexIndex v = 0; v < n; ++v) {
    auto arcs = graph.out_arcs(v);
    sorted_out[v].assign(arcs.begin(), arcs.end());
    std::sort(sorted_out[v].begin(), sorted_out[v].end(),
              [&](ArcIndex x, ArcIndex y) {
                return graph.vertex_id(graph.arc(x).head) <
                       graph.vertex_id(graph.arc(y).head);
              });
    for (ArcIndex a : arcs) in[graph.arc(a).head].push_back(v);
  }

  // dist_to[t][v]: hop distance from v to t, by reverse BFS from t.
  std::vector<std::vector<std::size_t>> dist_to(
      n, std::vector<std::size_t>(n, kUnreached));
  for (VertexIndex t = 0; t < n; ++t) {
    auto& dist = dist_to[t];
    std::deque<VertexIndex> queue{t};
    dist[t] = 0;
    while (!queue.empty()) {
      VertexIndex v = queue.front();
      queue.pop_front();
      for (VertexIndex u : in[v]) {
        if (dist[u] == kUnreached) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
      }
    }
  }

  std::vector<Path> paths;
  for (VertexIndex s = 0; s < n; ++s) {
    for (VertexIndex t = 0; t < n; ++t) {
      if (s == t || dist_to[t][s] == kUnreached) continue;
      const auto& dist = dist_to[t];
      Path path;
      VertexIndex cur = s;
      while (cur != t) {
        for (ArcIndex a : sorted_out[cur]) {
          VertexIndex next = graph.arc(a).head;
          if (dist[next] != kUnreached && dist[next] + 1 == dist[cur]) {
            path.arcs.push_back(a);
            cur = next;
            break;
          }
        }
      }
      paths.push_back(std::move(path));
    }
  }
  return paths;
}

}  // namespace pathcode
