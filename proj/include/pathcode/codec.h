#ifndef PATHCODE_CODEC_H_
#define PATHCODE_CODEC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathcode/error.h"
#include "pathcode/labeling.h"
#include "pathcode/topology.h"

namespace pathcode {

struct EncodedPath {
  BitString bits;
  std::size_t pointer = 0;

  bool operator==(const EncodedPath&) const = default;
};

// Forwarding table of one switch.
class SwitchTable {
 public:
  struct Entry {
    BitString label;
    ArcIndex arc;
  };

  // Throws InputError naming the offending pair if one label is a prefix of
  // another.
  SwitchTable(std::string vertex, std::vector<Entry> entries);

  const std::string& vertex() const { return vertex_; }
  std::span<const Entry> entries() const { return entries_; }
  bool has_empty_label() const;

 private:
  std::string vertex_;
  std::vector<Entry> entries_;
};

// One table per vertex, in vertex order.
std::vector<SwitchTable> build_switch_tables(const Graph& graph,
                                             const LabelTable& labels);

class ForwardError : public InputError {
 public:
  enum class Kind {
    kNoMatch,    // no label is a prefix of the remaining bits
    kOverrun,    // the remaining bits are a proper prefix of some label
    kAmbiguous,  // more than one label matched
    kLoop,       // the same vertex was reached twice at the same pointer
  };
  ForwardError(Kind kind, std::string vertex, std::size_t pointer);
  Kind kind() const { return kind_; }
  const std::string& vertex() const { return vertex_; }
  std::size_t pointer() const { return pointer_; }

 private:
  Kind kind_;
  std::string vertex_;
  std::size_t pointer_;
};

// Concatenated labels of the path, pointer 0. Throws InputError if an arc
// has no label.
EncodedPath encode_path(const LabelTable& labels, const Path& path);

// Consults only `table` and the packet. An empty label matches without
// consuming bits.
std::pair<ArcIndex, EncodedPath> forward_step(const SwitchTable& table,
                                              const EncodedPath& packet);

// Forwards hop by hop from `source`. Stops once the pointer reaches the end
// at a vertex without an empty label.
Path simulate(const Graph& graph, std::span<const SwitchTable> tables,
              VertexIndex source, const EncodedPath& packet);

// Throws InputError if some path ends at a vertex that owns an empty label,
// since forwarding could not tell that the packet has arrived.
void check_destinations(const ProblemInstance& instance,
                        const LabelTable& labels);

// 16-bit big-endian pointer, 16-bit big-endian bit length, then the bits
// MSB-first, zero-padded to whole bytes.
std::vector<std::uint8_t> to_wire(const EncodedPath& packet);
// Throws InputError on a short or oversized buffer, pointer beyond the
// length, or nonzero padding.
EncodedPath from_wire(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
// Accepts upper or lower case; whitespace is ignored.
std::vector<std::uint8_t> from_hex(std::string_view text);

}  // namespace pathcode

#endif  // PATHCODE_CODEC_H_
