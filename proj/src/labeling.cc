#include "pathcode/labeling.h"

#include <algorithm>
#include <numeric>

#include "pathcode/error.h"

namespace pathcode {
namespace {

constexpr int kMaxCompletionLength = 64;

int ceil_log2(std::size_t k) {
  int bits = 0;
  while ((std::size_t{1} << bits) < k) ++bits;
  return bits;
}

// Adds one at the last bit position, carrying towards the front.
void increment(BitString& code, std::vector<bool>& scratch) {
  scratch.assign(code.size(), false);
  for (std::size_t i = 0; i < code.size(); ++i) scratch[i] = code[i];
  std::size_t i = scratch.size();
  while (i > 0) {
    --i;
    if (!scratch[i]) {
      scratch[i] = true;
      break;
    }
    scratch[i] = false;
  }
  code = BitString();
  for (bool b : scratch) code.push_back(b);
}

}  // namespace

BitString BitString::from_text(std::string_view text) {
  BitString out;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw InputError("bit string may contain only 0 and 1: \"" +
                       std::string(text) + "\"");
    }
    out.push_back(c == '1');
  }
  return out;
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::string BitString::to_text() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

bool BitString::is_prefix_of(const BitString& other, std::size_t offset) const {
  if (offset > other.size() || other.size() - offset < size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (bits_[i] != other.bits_[offset + i]) return false;
  }
  return true;
}

std::strong_ordering BitString::operator<=>(const BitString& other) const {
  const std::size_t n = std::min(size(), other.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (bits_[i] != other.bits_[i]) {
      return bits_[i] ? std::strong_ordering::greater
                      : std::strong_ordering::less;
    }
  }
  return size() <=> other.size();
}

KraftResult kraft_check(std::span<const int> lengths) {
  Dyadic slack(1);
  for (int l : lengths) {
    if (l < 0) throw InputError("label lengths must be nonnegative");
    slack -= Dyadic::pow2_neg(static_cast<unsigned>(l));
  }
  return {slack.sign() >= 0, slack};
}

LabelTable assign_labels(const Graph& graph, const IntLengths& lengths) {
  if (lengths.lengths.size() != graph.num_arcs()) {
    throw InputError("length vector does not match the arc count");
  }
  LabelTable table;
  table.labels.assign(graph.num_arcs(), std::nullopt);
  std::vector<bool> scratch;
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    std::vector<ArcIndex> arcs;
    std::vector<int> ls;
    for (ArcIndex a : graph.out_arcs(v)) {
      if (lengths.lengths[a]) {
        arcs.push_back(a);
        ls.push_back(*lengths.lengths[a]);
      }
    }
    if (arcs.empty()) continue;
    if (!kraft_check(ls).feasible) {
      throw InputError("lengths at " + graph.vertex_id(v) +
                       " violate Kraft's inequality");
    }
    std::stable_sort(arcs.begin(), arcs.end(), [&](ArcIndex x, ArcIndex y) {
      return *lengths.lengths[x] < *lengths.lengths[y];
    });
    BitString code;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const int len = *lengths.lengths[arcs[i]];
      if (i > 0) increment(code, scratch);
      while (static_cast<int>(code.size()) < len) code.push_back(false);
      table.labels[arcs[i]] = code;
    }
  }
  return table;
}

IntLengths complete_unused_arcs(const ProblemInstance& instance,
                                const IntLengths& lengths) {
  const Graph& g = instance.graph();
  if (lengths.lengths.size() != g.num_arcs()) {
    throw InputError("length vector does not match the arc count");
  }
  IntLengths out = lengths;
  if (!kraft_feasible(g, out)) {
    throw InputError("cannot complete lengths that violate Kraft");
  }

  // Arcs on some longest path; lengthening them would raise the objective.
  std::vector<bool> critical(g.num_arcs(), false);
  {
    std::vector<int> sums;
    int longest = 0;
    for (const Path& p : instance.paths()) {
      int s = 0;
      for (ArcIndex a : p.arcs) s += out.lengths[a].value_or(0);
      sums.push_back(s);
      longest = std::max(longest, s);
    }
    for (std::size_t p = 0; p < sums.size(); ++p) {
      if (sums[p] != longest) continue;
      for (ArcIndex a : instance.paths()[p].arcs) critical[a] = true;
    }
  }

  const Dyadic unit = Dyadic::pow2_neg(kMaxCompletionLength);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    std::vector<ArcIndex> open;
    std::vector<ArcIndex> assigned;
    for (ArcIndex a : g.out_arcs(v)) {
      (out.lengths[a] ? assigned : open).push_back(a);
    }
    if (open.empty()) continue;
    if (assigned.empty()) {
      const int bits = ceil_log2(open.size());
      for (ArcIndex a : open) out.lengths[a] = bits;
      continue;
    }
    for (std::size_t i = 0; i < open.size(); ++i) {
      const std::size_t remaining = open.size() - i - 1;
      Dyadic reserve;
      for (std::size_t r = 0; r < remaining; ++r) reserve += unit;
      while (true) {
        const Dyadic slack = vertex_slack(g, out, v);
        std::optional<int> fit;
        for (int l = 1; l <= kMaxCompletionLength; ++l) {
          if (slack - Dyadic::pow2_neg(static_cast<unsigned>(l)) >= reserve) {
            fit = l;
            break;
          }
        }
        if (fit) {
          out.lengths[open[i]] = *fit;
          break;
        }
        // Lengthen the longest assigned arc, off the critical paths if any.
        std::optional<ArcIndex> victim;
        for (bool allow_critical : {false, true}) {
          for (ArcIndex a : g.out_arcs(v)) {
            if (!out.lengths[a] || (critical[a] && !allow_critical)) continue;
            if (!victim || *out.lengths[a] > *out.lengths[*victim]) victim = a;
          }
          if (victim) break;
        }
        ++*out.lengths[*victim];
      }
    }
  }
  out.objective = objective_int(instance, out);
  return out;
}

nlohmann::json to_json(const Graph& graph, const LabelTable& table) {
  nlohmann::json doc = nlohmann::json::object();
  for (ArcIndex a = 0; a < graph.num_arcs(); ++a) {
    if (!table.labels[a]) continue;
    const Arc& arc = graph.arc(a);
    doc[graph.vertex_id(arc.tail)][graph.vertex_id(arc.head)] =
        table.labels[a]->to_text();
  }
  return doc;
}

LabelTable label_table_from_json(const Graph& graph,
                                 const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("label table must be a JSON object");
  LabelTable table;
  table.labels.assign(graph.num_arcs(), std::nullopt);
  for (const auto& [tail, heads] : doc.items()) {
    auto t = graph.find_vertex(tail);
    if (!t) throw InputError("label table names unknown vertex " + tail);
    if (!heads.is_object()) {
      throw InputError("labels of " + tail + " must be an object");
    }
    for (const auto& [head, bits] : heads.items()) {
      auto h = graph.find_vertex(head);
      auto a = h ? graph.find_arc(*t, *h) : std::nullopt;
      if (!a) throw InputError("label table names unknown arc " + tail +
                               " -> " + head);
      if (!bits.is_string()) {
        throw InputError("label of " + tail + " -> " + head +
                         " must be a string");
      }
      table.labels[*a] = BitString::from_text(bits.get<std::string>());
    }
  }
  return table;
}

bool is_prefix_free(const Graph& graph, const LabelTable& table) {
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    auto out = graph.out_arcs(v);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& x = table.labels[out[i]];
      if (!x) continue;
      for (std::size_t j = 0; j < out.size(); ++j) {
        const auto& y = table.labels[out[j]];
        if (i == j || !y) continue;
        if (x->is_prefix_of(*y)) return false;
      }
    }
  }
  return true;
}

}  // namespace pathcode
