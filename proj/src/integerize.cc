#include "pathcode/integerize.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <string>

#include "pathcode/error.h"
#include "pathcode/generators.h"

namespace pathcode {
namespace {

constexpr double kMaxCandidates = 1e8;

int ceil_log2(std::size_t k) {
  int bits = 0;
  while ((std::size_t{1} << bits) < k) ++bits;
  return bits;
}

Dyadic kraft_sum(std::span<const int> lengths) {
  Dyadic sum;
  for (int l : lengths) sum += Dyadic::pow2_neg(static_cast<unsigned>(l));
  return sum;
}

std::vector<int> path_sums(const ProblemInstance& instance,
                           const IntLengths& lengths) {
  std::vector<int> sums;
  sums.reserve(instance.num_paths());
  for (std::size_t p = 0; p < instance.num_paths(); ++p) {
    int sum = 0;
    for (ArcIndex a : instance.paths()[p].arcs) {
      if (!lengths.lengths.at(a)) {
        throw InputError("path " + std::to_string(p) +
                         " crosses an arc without a length");
      }
      sum += *lengths.lengths[a];
    }
    sums.push_back(sum);
  }
  return sums;
}

void require_shape(const ProblemInstance& instance, const IntLengths& lengths) {
  if (lengths.lengths.size() != instance.graph().num_arcs()) {
    throw InputError("length vector does not match the arc count");
  }
}

}  // namespace

int objective_int(const ProblemInstance& instance, const IntLengths& lengths) {
  require_shape(instance, lengths);
  const std::vector<int> sums = path_sums(instance, lengths);
  return sums.empty() ? 0 : *std::max_element(sums.begin(), sums.end());
}

Dyadic vertex_slack(const Graph& graph, const IntLengths& lengths,
                    VertexIndex v) {
  Dyadic slack(1);
  for (ArcIndex a : graph.out_arcs(v)) {
    if (lengths.lengths[a]) {
      slack -= Dyadic::pow2_neg(static_cast<unsigned>(*lengths.lengths[a]));
    }
  }
  return slack;
}

bool kraft_feasible(const Graph& graph, const IntLengths& lengths) {
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    if (vertex_slack(graph, lengths, v).sign() < 0) return false;
  }
  return true;
}

nlohmann::json to_json(const Graph& graph, const IntLengths& lengths) {
  nlohmann::json per_tail = nlohmann::json::object();
  for (ArcIndex a = 0; a < graph.num_arcs(); ++a) {
    if (!lengths.lengths[a]) continue;
    const Arc& arc = graph.arc(a);
    per_tail[graph.vertex_id(arc.tail)][graph.vertex_id(arc.head)] =
        *lengths.lengths[a];
  }
  return {{"lengths", per_tail}, {"objective", lengths.objective}};
}

IntLengths int_lengths_from_json(const ProblemInstance& instance,
                                 const nlohmann::json& doc) {
  const Graph& g = instance.graph();
  if (!doc.is_object() || !doc.contains("lengths") ||
      !doc["lengths"].is_object()) {
    throw InputError("length document needs a \"lengths\" object");
  }
  IntLengths out;
  out.lengths.assign(g.num_arcs(), std::nullopt);
  for (const auto& [tail, heads] : doc["lengths"].items()) {
    auto t = g.find_vertex(tail);
    if (!t) throw InputError("unknown vertex " + tail);
    if (!heads.is_object()) throw InputError("lengths of " + tail + " malformed");
    for (const auto& [head, value] : heads.items()) {
      auto h = g.find_vertex(head);
      auto a = h ? g.find_arc(*t, *h) : std::nullopt;
      if (!a) throw InputError("unknown arc " + tail + " -> " + head);
      if (!value.is_number_integer() || value.get<int>() < 0) {
        throw InputError("length of " + tail + " -> " + head +
                         " must be a nonnegative integer");
      }
      out.lengths[*a] = value.get<int>();
    }
  }
  out.objective = objective_int(instance, out);
  return out;
}

IntLengths round_lengths(const ProblemInstance& instance,
                         const RealLengths& real, double snap_eps) {
  const Graph& g = instance.graph();
  if (real.lengths.size() != g.num_arcs()) {
    throw InputError("length vector does not match the arc count");
  }
  if (!(snap_eps >= 0.0 && snap_eps < 1.0)) {
    throw InputError("snap epsilon must lie in [0, 1)");
  }
  IntLengths out;
  out.lengths.assign(g.num_arcs(), std::nullopt);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    for (ArcIndex a : g.out_arcs(v)) {
      if (real.lengths[a]) {
        out.lengths[a] = std::max(
            0, static_cast<int>(std::ceil(*real.lengths[a] - snap_eps)));
      }
    }
    if (vertex_slack(g, out, v).sign() >= 0) continue;
    for (ArcIndex a : g.out_arcs(v)) {
      if (real.lengths[a]) {
        out.lengths[a] = static_cast<int>(std::ceil(*real.lengths[a]));
      }
    }
    if (vertex_slack(g, out, v).sign() < 0) {
      throw InvariantError("rounded lengths violate Kraft at " +
                           g.vertex_id(v));
    }
  }
  out.objective = objective_int(instance, out);
  return out;
}

IntLengths local_search(const ProblemInstance& instance,
                        const IntLengths& start, std::span<const int> floors) {
  require_shape(instance, start);
  if (!floors.empty() && floors.size() != instance.graph().num_arcs()) {
    throw InputError("floor vector does not match the arc count");
  }
  const Graph& g = instance.graph();
  if (!kraft_feasible(g, start)) {
    throw InputError("local search needs a Kraft-feasible start");
  }
  IntLengths cur = start;
  std::vector<int> sums = path_sums(instance, cur);
  while (true) {
    const int longest = *std::max_element(sums.begin(), sums.end());
    std::optional<ArcIndex> chosen;
    for (std::size_t p = 0; p < sums.size() && !chosen; ++p) {
      if (sums[p] != longest) continue;
      for (ArcIndex a : instance.paths()[p].arcs) {
        const int l = *cur.lengths[a];
        if (l == 0 || (!floors.empty() && l <= floors[a])) continue;
        if (vertex_slack(g, cur, g.arc(a).tail) >=
            Dyadic::pow2_neg(static_cast<unsigned>(l))) {
          chosen = a;
          break;
        }
      }
    }
    if (!chosen) break;
    --*cur.lengths[*chosen];
    for (std::size_t p = 0; p < sums.size(); ++p) {
      const auto& arcs = instance.paths()[p].arcs;
      if (std::find(arcs.begin(), arcs.end(), *chosen) != arcs.end()) --sums[p];
    }
  }
  cur.objective = *std::max_element(sums.begin(), sums.end());
  return cur;
}

std::vector<int> destination_floors(const ProblemInstance& instance) {
  const Graph& g = instance.graph();
  std::vector<int> floors(g.num_arcs(), 0);
  for (const Path& p : instance.paths()) {
    const VertexIndex end = g.arc(p.arcs.back()).head;
    if (g.out_degree(end) == 1) floors[g.out_arcs(end).front()] = 1;
  }
  return floors;
}

IntLengths apply_floors(const ProblemInstance& instance, IntLengths lengths,
                        std::span<const int> floors) {
  require_shape(instance, lengths);
  if (floors.size() != lengths.lengths.size()) {
    throw InputError("floor vector does not match the arc count");
  }
  for (std::size_t a = 0; a < floors.size(); ++a) {
    if (lengths.lengths[a] && *lengths.lengths[a] < floors[a]) {
      lengths.lengths[a] = floors[a];
    }
  }
  if (!kraft_feasible(instance.graph(), lengths)) {
    throw InputError("floors break Kraft's inequality");
  }
  lengths.objective = objective_int(instance, lengths);
  return lengths;
}

IntLengths fixed_length_baseline(const ProblemInstance& instance) {
  const Graph& g = instance.graph();
  IntLengths out;
  out.lengths.assign(g.num_arcs(), std::nullopt);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    const int bits = ceil_log2(g.out_degree(v));
    for (ArcIndex a : g.out_arcs(v)) out.lengths[a] = bits;
  }
  out.objective = objective_int(instance, out);
  return out;
}

Equalization equalize(std::span<const int> partials) {
  if (partials.empty()) throw InputError("nothing to equalize");
  int t = 0;
  for (int d : partials) {
    if (d < 0) throw InputError("partial lengths must be nonnegative");
    t = std::max(t, d);
  }
  while (true) {
    std::vector<int> lengths;
    for (int d : partials) lengths.push_back(t - d);
    if (kraft_sum(lengths) <= Dyadic(1)) return {std::move(lengths), t};
    ++t;
  }
}

IntLengths tree_dp_exact(const ProblemInstance& instance) {
  const Graph& g = instance.graph();
  if (!is_out_arborescence(g)) {
    throw InputError("exact tree solver needs an out-arborescence");
  }
  std::vector<Path> expected = root_to_leaf_paths(g);
  std::vector<Path> given(instance.paths().begin(), instance.paths().end());
  std::sort(expected.begin(), expected.end());
  std::sort(given.begin(), given.end());
  if (expected != given) {
    throw InputError("exact tree solver needs every root-to-leaf path");
  }

  IntLengths out;
  out.lengths.assign(g.num_arcs(), std::nullopt);
  // BFS order puts every tail before its heads; fill depths in reverse.
  std::vector<bool> has_parent(g.num_vertices(), false);
  for (const Arc& a : g.arcs()) has_parent[a.head] = true;
  std::vector<VertexIndex> order;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    if (!has_parent[v]) order.push_back(v);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (ArcIndex a : g.out_arcs(order[i])) order.push_back(g.arc(a).head);
  }
  std::vector<int> depth(g.num_vertices(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto out_arcs = g.out_arcs(*it);
    if (out_arcs.empty()) continue;
    std::vector<int> partials;
    for (ArcIndex a : out_arcs) partials.push_back(depth[g.arc(a).head]);
    Equalization eq = equalize(partials);
    for (std::size_t i = 0; i < out_arcs.size(); ++i) {
      out.lengths[out_arcs[i]] = eq.lengths[i];
    }
    depth[*it] = eq.value;
  }
  out.objective = objective_int(instance, out);
  return out;
}

int default_brute_force_cap(const ProblemInstance& instance) {
  const std::size_t degree = instance.graph().max_out_degree();
  const int formula = ceil_log2(degree) +
                      static_cast<int>(instance.longest_hop_count());
  // A tuple that cannot be shortened never needs more than `degree` bits.
  return std::max(formula, static_cast<int>(degree));
}

IntLengths brute_force_exact(const ProblemInstance& instance,
                             std::optional<int> cap_arg) {
  const Graph& g = instance.graph();
  const int cap = cap_arg.value_or(default_brute_force_cap(instance));
  if (cap < 0) throw InputError("length cap must be nonnegative");

  struct VertexSearch {
    VertexIndex vertex;
    std::vector<ArcIndex> used;
    std::size_t unused = 0;
    std::vector<std::vector<int>> candidates;
  };
  std::vector<VertexSearch> search;
  double space = 1.0;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    VertexSearch vs{v, {}, 0, {}};
    for (ArcIndex a : g.out_arcs(v)) {
      if (instance.is_used(a)) {
        vs.used.push_back(a);
      } else {
        ++vs.unused;
      }
    }
    if (vs.used.empty()) continue;
    const std::size_t k = vs.used.size();
    // Complete codes when every out-arc is used; otherwise tuples whose slack
    // is exactly one unit at the longest length, leaving room for the rest.
    const int bound = std::min<int>(cap, static_cast<int>(vs.unused ? k : k - 1));
    std::vector<int> tuple(k, 0);
    std::function<void(std::size_t, const Dyadic&)> grow =
        [&](std::size_t i, const Dyadic& sum) {
          if (i == k) {
            const Dyadic slack = Dyadic(1) - sum;
            if (vs.unused == 0) {
              if (slack.sign() == 0) vs.candidates.push_back(tuple);
            } else {
              const int longest = *std::max_element(tuple.begin(), tuple.end());
              if (slack == Dyadic::pow2_neg(static_cast<unsigned>(longest))) {
                vs.candidates.push_back(tuple);
              }
            }
            return;
          }
          for (int l = 0; l <= bound; ++l) {
            Dyadic next = sum + Dyadic::pow2_neg(static_cast<unsigned>(l));
            if (next > Dyadic(1)) continue;
            tuple[i] = l;
            grow(i + 1, next);
          }
        };
    grow(0, Dyadic());
    // Flatter tuples first tend to find a good bound early.
    std::stable_sort(vs.candidates.begin(), vs.candidates.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                       return *std::max_element(a.begin(), a.end()) <
                              *std::max_element(b.begin(), b.end());
                     });
    if (vs.candidates.empty()) {
      throw InputError("no feasible lengths within cap " +
                       std::to_string(cap) + " at " + g.vertex_id(v));
    }
    space *= static_cast<double>(vs.candidates.size());
    if (space > kMaxCandidates) {
      throw InputError("brute-force search space exceeds 1e8 candidates");
    }
    search.push_back(std::move(vs));
  }

  // For each searched vertex and each of its used arcs, the paths crossing
  // that arc.
  std::vector<std::vector<std::vector<std::size_t>>> crossing(search.size());
  for (std::size_t s = 0; s < search.size(); ++s) {
    crossing[s].resize(search[s].used.size());
    for (std::size_t i = 0; i < search[s].used.size(); ++i) {
      for (std::size_t p = 0; p < instance.num_paths(); ++p) {
        const auto& arcs = instance.paths()[p].arcs;
        if (std::find(arcs.begin(), arcs.end(), search[s].used[i]) !=
            arcs.end()) {
          crossing[s][i].push_back(p);
        }
      }
    }
  }

  std::vector<int> sums(instance.num_paths(), 0);
  std::vector<std::size_t> choice(search.size(), 0);
  std::vector<std::size_t> best_choice;
  int best = std::numeric_limits<int>::max();

  std::function<void(std::size_t, int)> branch = [&](std::size_t s,
                                                     int current) {
    if (current >= best) return;
    if (s == search.size()) {
      best = current;
      best_choice = choice;
      return;
    }
    for (std::size_t c = 0; c < search[s].candidates.size(); ++c) {
      const auto& tuple = search[s].candidates[c];
      int raised = current;
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        for (std::size_t p : crossing[s][i]) {
          sums[p] += tuple[i];
          raised = std::max(raised, sums[p]);
        }
      }
      choice[s] = c;
      branch(s + 1, raised);
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        for (std::size_t p : crossing[s][i]) sums[p] -= tuple[i];
      }
    }
  };
  branch(0, 0);

  IntLengths out;
  out.lengths.assign(g.num_arcs(), std::nullopt);
  std::vector<bool> searched(g.num_vertices(), false);
  for (std::size_t s = 0; s < search.size(); ++s) {
    const VertexSearch& vs = search[s];
    searched[vs.vertex] = true;
    const auto& tuple = vs.candidates[best_choice[s]];
    int longest = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      out.lengths[vs.used[i]] = tuple[i];
      longest = std::max(longest, tuple[i]);
    }
    // The remaining unit of slack, 2^-longest, split evenly.
    const int fill = longest + ceil_log2(vs.unused);
    for (ArcIndex a : g.out_arcs(vs.vertex)) {
      if (!instance.is_used(a)) out.lengths[a] = fill;
    }
  }
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    if (searched[v]) continue;
    const int bits = ceil_log2(g.out_degree(v));
    for (ArcIndex a : g.out_arcs(v)) out.lengths[a] = bits;
  }
  out.objective = objective_int(instance, out);
  if (out.objective != best || !kraft_feasible(g, out)) {
    throw InvariantError("brute-force reconstruction is inconsistent");
  }
  return out;
}

}  // namespace pathcode
