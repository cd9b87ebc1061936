// Independent reference implementations used only by tests. They favor the
// most literal formulation over speed and share no code with the library
// beyond the graph containers.
#ifndef PATHCODE_TESTS_ORACLES_H_
#define PATHCODE_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pathcode/topology.h"

namespace oracle {

using pathcode::ArcIndex;
using pathcode::Graph;
using pathcode::Path;
using pathcode::ProblemInstance;
using pathcode::VertexIndex;
using Rational = boost::multiprecision::cpp_rational;

inline std::string read_data(const std::string& relative) {
  std::ifstream in(std::string(PATHCODE_DATA_DIR) + "/" + relative);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// dist[s][t] by forward BFS from every s; -1 when unreachable.
inline std::vector<std::vector<int>> hop_distances(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (VertexIndex s = 0; s < n; ++s) {
    std::queue<VertexIndex> q;
    dist[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      VertexIndex v = q.front();
      q.pop();
      for (const auto& a : g.arcs()) {
        if (a.tail == v && dist[s][a.head] < 0) {
          dist[s][a.head] = dist[s][v] + 1;
          q.push(a.head);
        }
      }
    }
  }
  return dist;
}

// Smallest id sequence among all walks of exactly `hops` arcs from s to t.
inline std::vector<std::string> lexmin_shortest(const Graph& g, VertexIndex s,
                                                VertexIndex t, int hops) {
  std::optional<std::vector<std::string>> best;
  std::vector<std::string> cur{g.vertex_id(s)};
  std::function<void(VertexIndex, int)> dfs = [&](VertexIndex v, int left) {
    if (left == 0) {
      if (v == t && (!best || cur < *best)) best = cur;
      return;
    }
    for (const auto& a : g.arcs()) {
      if (a.tail != v) continue;
      cur.push_back(g.vertex_id(a.head));
      dfs(a.head, left - 1);
      cur.pop_back();
    }
  };
  dfs(s, hops);
  return *best;
}

// Dual objective with a vertex's mass taken as the weight of the paths that
// leave it, following the literal membership rule.
inline double direct_dual(const ProblemInstance& inst,
                          const std::vector<double>& alpha) {
  const Graph& g = inst.graph();
  double value = 0;
  for (ArcIndex a = 0; a < g.num_arcs(); ++a) {
    double through_arc = 0;
    double through_tail = 0;
    for (std::size_t p = 0; p < inst.num_paths(); ++p) {
      bool has_arc = false;
      bool has_tail = false;
      for (ArcIndex b : inst.paths()[p].arcs) {
        has_arc |= (b == a);
        has_tail |= (g.arc(b).tail == g.arc(a).tail);
      }
      if (has_arc) through_arc += alpha[p];
      if (has_tail) through_tail += alpha[p];
    }
    if (through_arc > 0) value -= through_arc * std::log2(through_arc / through_tail);
  }
  return value;
}

// Central differences of direct_dual, converted to the natural-log scale.
inline std::vector<double> fd_gradient(const ProblemInstance& inst,
                                       const std::vector<double>& alpha,
                                       double h) {
  std::vector<double> grad(alpha.size());
  for (std::size_t p = 0; p < alpha.size(); ++p) {
    std::vector<double> up = alpha, down = alpha;
    up[p] += h;
    down[p] -= h;
    grad[p] = std::log(2.0) * (direct_dual(inst, up) - direct_dual(inst, down)) /
              (2 * h);
  }
  return grad;
}

// E|P| * H(A|V) from the joint distribution of (vertex, arc) when a path is
// drawn by alpha and then one of its arcs uniformly by position.
inline double direct_entropy_product(const ProblemInstance& inst,
                                     const std::vector<double>& alpha) {
  const Graph& g = inst.graph();
  double expected = 0;
  std::map<ArcIndex, double> arc_w;
  std::map<VertexIndex, double> vertex_w;
  for (std::size_t p = 0; p < inst.num_paths(); ++p) {
    expected += alpha[p] * static_cast<double>(inst.paths()[p].arcs.size());
    for (ArcIndex a : inst.paths()[p].arcs) {
      arc_w[a] += alpha[p];
      vertex_w[g.arc(a).tail] += alpha[p];
    }
  }
  double h = 0;
  for (const auto& [a, w] : arc_w) {
    if (w <= 0) continue;
    const double joint = w / expected;
    const double cond = w / vertex_w[g.arc(a).tail];
    h -= joint * std::log2(cond);
  }
  return expected * h;
}

// Projection onto the simplex by bisection on the shift.
inline std::vector<double> bisect_projection(const std::vector<double>& v) {
  double lo = *std::min_element(v.begin(), v.end()) - 1.0;
  double hi = *std::max_element(v.begin(), v.end());
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double s = 0;
    for (double x : v) s += std::max(x - mid, 0.0);
    (s > 1 ? lo : hi) = mid;
  }
  std::vector<double> out;
  for (double x : v) out.push_back(std::max(x - 0.5 * (lo + hi), 0.0));
  return out;
}

inline Rational kraft_sum(const std::vector<int>& lengths) {
  Rational s = 0;
  for (int l : lengths) {
    boost::multiprecision::cpp_int den = 1;
    den <<= l;
    s += Rational(1, den);
  }
  return s;
}

// The tree procedure, done literally: codewords are nodes of the complete
// binary tree, taken shortest first (ties by arc order), each the
// lexicographically first node of its depth that is neither below nor above
// an earlier pick.
inline std::vector<std::string> tree_labels(const std::vector<int>& lengths) {
  std::vector<std::size_t> order(lengths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lengths[a] < lengths[b];
  });
  std::vector<std::string> labels(lengths.size());
  std::vector<std::string> taken;
  for (std::size_t i : order) {
    const int depth = lengths[i];
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << depth); ++k) {
      std::string node;
      for (int b = depth - 1; b >= 0; --b) node.push_back(((k >> b) & 1) ? '1' : '0');
      bool free = true;
      for (const auto& t : taken) {
        if (node.rfind(t, 0) == 0 || t.rfind(node, 0) == 0) free = false;
      }
      if (free) {
        labels[i] = node;
        taken.push_back(node);
        break;
      }
    }
  }
  return labels;
}

// Exhaustive optimum of the integer problem over every arc with lengths in
// [0, cap]. Only for very small arc counts.
inline int exhaustive_optimum(const ProblemInstance& inst, int cap) {
  const Graph& g = inst.graph();
  const std::size_t m = g.num_arcs();
  std::vector<int> l(m, 0);
  int best = std::numeric_limits<int>::max();
  std::function<void(std::size_t)> rec = [&](std::size_t a) {
    if (a == m) {
      for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
        std::vector<int> out;
        for (ArcIndex b : g.out_arcs(v)) out.push_back(l[b]);
        if (kraft_sum(out) > 1) return;
      }
      int worst = 0;
      for (const Path& p : inst.paths()) {
        int s = 0;
        for (ArcIndex b : p.arcs) s += l[b];
        worst = std::max(worst, s);
      }
      best = std::min(best, worst);
      return;
    }
    for (int x = 0; x <= cap; ++x) {
      l[a] = x;
      rec(a + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace oracle

#endif  // PATHCODE_TESTS_ORACLES_H_
