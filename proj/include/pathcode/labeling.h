#ifndef PATHCODE_LABELING_H_
#define PATHCODE_LABELING_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pathcode/dyadic.h"
#include "pathcode/integerize.h"
#include "pathcode/topology.h"

namespace pathcode {

// Finite bit sequence; bit 0 is the first bit on the wire.
class BitString {
 public:
  BitString() = default;
  // Throws InputError on characters other than '0' and '1'.
  static BitString from_text(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void push_back(bool bit) { bits_.push_back(bit); }
  void append(const BitString& other);
  std::string to_text() const;

  // True if this is a prefix of `other` starting at `offset` bits in.
  bool is_prefix_of(const BitString& other, std::size_t offset = 0) const;

  bool operator==(const BitString&) const = default;
  // Lexicographic with 0 < 1; a proper prefix sorts first.
  std::strong_ordering operator<=>(const BitString& other) const;

 private:
  std::vector<bool> bits_;
};

struct KraftResult {
  bool feasible;
  Dyadic slack;  // 1 - sum 2^-l
};

KraftResult kraft_check(std::span<const int> lengths);

// Labels indexed by arc; arcs without a length have no label.
struct LabelTable {
  std::vector<std::optional<BitString>> labels;

  bool operator==(const LabelTable&) const = default;
};

// Canonical prefix-free labels: at each vertex, arcs sorted by (length, arc
// order) take consecutive codewords, each the smallest node of its depth not
// below an earlier one. Throws InputError where Kraft fails.
LabelTable assign_labels(const Graph& graph, const IntLengths& lengths);

// Gives every arc without a length one, keeping Kraft. A vertex with nothing
// assigned gets ceil(log2 k) everywhere. Otherwise each open arc takes the
// shortest length that still leaves room for the others at 64 bits; when the
// slack is exhausted the longest assigned arc at the vertex is lengthened by
// one, preferring arcs off every longest path. The objective is recomputed.
IntLengths complete_unused_arcs(const ProblemInstance& instance,
                                const IntLengths& lengths);

// {"<vertex>": {"<head>": "0101"}}; vertices without labeled arcs are
// omitted.
nlohmann::json to_json(const Graph& graph, const LabelTable& table);
// Throws InputError on unknown vertices or arcs or bad bit text.
LabelTable label_table_from_json(const Graph& graph, const nlohmann::json& doc);

// Exhaustive pairwise check at every vertex.
bool is_prefix_free(const Graph& graph, const LabelTable& table);

}  // namespace pathcode

#endif  // PATHCODE_LABELING_H_
