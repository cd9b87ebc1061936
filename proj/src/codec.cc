#include "pathcode/codec.h"

#include <cctype>
#include <set>

namespace pathcode {
namespace {

constexpr std::size_t kMaxWireBits = 0xFFFF;

std::string describe(ForwardError::Kind kind) {
  switch (kind) {
    case ForwardError::Kind::kNoMatch:
      return "no label matches";
    case ForwardError::Kind::kOverrun:
      return "header ends inside a label";
    case ForwardError::Kind::kAmbiguous:
      return "several labels match";
    case ForwardError::Kind::kLoop:
      return "forwarding loop";
  }
  return "forwarding error";
}

}  // namespace

SwitchTable::SwitchTable(std::string vertex, std::vector<Entry> entries)
    : vertex_(std::move(vertex)), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      if (i == j) continue;
      if (entries_[i].label.is_prefix_of(entries_[j].label)) {
        throw InputError("table at " + vertex_ + " is not prefix-free: \"" +
                         entries_[i].label.to_text() + "\" is a prefix of \"" +
                         entries_[j].label.to_text() + "\"");
      }
    }
  }
}

bool SwitchTable::has_empty_label() const {
  for (const Entry& e : entries_) {
    if (e.label.empty()) return true;
  }
  return false;
}

std::vector<SwitchTable> build_switch_tables(const Graph& graph,
                                             const LabelTable& labels) {
  if (labels.labels.size() != graph.num_arcs()) {
    throw InputError("label table does not match the arc count");
  }
  std::vector<SwitchTable> tables;
  tables.reserve(graph.num_vertices());
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    std::vector<SwitchTable::Entry> entries;
    for (ArcIndex a : graph.out_arcs(v)) {
      if (labels.labels[a]) entries.push_back({*labels.labels[a], a});
    }
    tables.emplace_back(graph.vertex_id(v), std::move(entries));
  }
  return tables;
}

ForwardError::ForwardError(Kind kind, std::string vertex, std::size_t pointer)
    : InputError(describe(kind) + " at " + vertex + " (bit " +
                 std::to_string(pointer) + ")"),
      kind_(kind),
      vertex_(std::move(vertex)),
      pointer_(pointer) {}

EncodedPath encode_path(const LabelTable& labels, const Path& path) {
  EncodedPath out;
  for (ArcIndex a : path.arcs) {
    if (a >= labels.labels.size() || !labels.labels[a]) {
      throw InputError("arc " + std::to_string(a) + " has no label");
    }
    out.bits.append(*labels.labels[a]);
  }
  return out;
}

std::pair<ArcIndex, EncodedPath> forward_step(const SwitchTable& table,
                                              const EncodedPath& packet) {
  if (packet.pointer > packet.bits.size()) {
    throw ForwardError(ForwardError::Kind::kOverrun, table.vertex(),
                       packet.pointer);
  }
  const SwitchTable::Entry* match = nullptr;
  std::size_t matches = 0;
  bool partial = false;
  const std::size_t remaining = packet.bits.size() - packet.pointer;
  for (const auto& e : table.entries()) {
    if (e.label.is_prefix_of(packet.bits, packet.pointer)) {
      match = &e;
      ++matches;
    } else if (remaining < e.label.size()) {
      BitString rest;
      for (std::size_t i = packet.pointer; i < packet.bits.size(); ++i) {
        rest.push_back(packet.bits[i]);
      }
      if (rest.is_prefix_of(e.label)) partial = true;
    }
  }
  if (matches > 1) {
    throw ForwardError(ForwardError::Kind::kAmbiguous, table.vertex(),
                       packet.pointer);
  }
  if (matches == 0) {
    throw ForwardError(partial ? ForwardError::Kind::kOverrun
                               : ForwardError::Kind::kNoMatch,
                       table.vertex(), packet.pointer);
  }
  EncodedPath next = packet;
  next.pointer += match->label.size();
  return {match->arc, std::move(next)};
}

Path simulate(const Graph& graph, std::span<const SwitchTable> tables,
              VertexIndex source, const EncodedPath& packet) {
  if (tables.size() != graph.num_vertices()) {
    throw InputError("need one switch table per vertex");
  }
  if (source >= graph.num_vertices()) throw InputError("unknown source vertex");
  Path path;
  VertexIndex v = source;
  EncodedPath cur = packet;
  std::set<std::pair<VertexIndex, std::size_t>> visited;
  while (!(cur.pointer == cur.bits.size() && !tables[v].has_empty_label())) {
    if (!visited.insert({v, cur.pointer}).second) {
      throw ForwardError(ForwardError::Kind::kLoop, graph.vertex_id(v),
                         cur.pointer);
    }
    auto [arc, next] = forward_step(tables[v], cur);
    path.arcs.push_back(arc);
    v = graph.arc(arc).head;
    cur = std::move(next);
  }
  return path;
}

void check_destinations(const ProblemInstance& instance,
                        const LabelTable& labels) {
  const Graph& g = instance.graph();
  for (const Path& p : instance.paths()) {
    const VertexIndex end = g.arc(p.arcs.back()).head;
    for (ArcIndex a : g.out_arcs(end)) {
      if (labels.labels[a] && labels.labels[a]->empty()) {
        throw InputError("path ends at " + g.vertex_id(end) +
                         ", which forwards on an empty label");
      }
    }
  }
}

std::vector<std::uint8_t> to_wire(const EncodedPath& packet) {
  const std::size_t n = packet.bits.size();
  if (n > kMaxWireBits) throw InputError("encoded path exceeds 65535 bits");
  if (packet.pointer > n) throw InputError("pointer beyond the encoded path");
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(packet.pointer >> 8));
  out.push_back(static_cast<std::uint8_t>(packet.pointer & 0xFF));
  out.push_back(static_cast<std::uint8_t>(n >> 8));
  out.push_back(static_cast<std::uint8_t>(n & 0xFF));
  out.resize(4 + (n + 7) / 8, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (packet.bits[i]) out[4 + i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
  }
  return out;
}

EncodedPath from_wire(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw InputError("packet shorter than its header");
  const std::size_t pointer = (std::size_t{bytes[0]} << 8) | bytes[1];
  const std::size_t n = (std::size_t{bytes[2]} << 8) | bytes[3];
  if (bytes.size() != 4 + (n + 7) / 8) {
    throw InputError("packet size does not match its bit length");
  }
  if (pointer > n) throw InputError("pointer beyond the encoded path");
  EncodedPath out;
  out.pointer = pointer;
  for (std::size_t i = 0; i < n; ++i) {
    out.bits.push_back((bytes[4 + i / 8] & (0x80 >> (i % 8))) != 0);
  }
  if (n % 8 != 0) {
    const std::uint8_t pad_mask = static_cast<std::uint8_t>(0xFF >> (n % 8));
    if (bytes.back() & pad_mask) throw InputError("nonzero padding bits");
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  for (std::uint8_t b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

std::vector<std::uint8_t> from_hex(std::string_view text) {
  std::string digits;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw InputError(std::string("invalid hex digit '") + c + "'");
    }
    digits.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (digits.size() % 2 != 0) throw InputError("odd number of hex digits");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < digits.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(
        std::stoi(digits.substr(i, 2), nullptr, 16)));
  }
  return out;
}

}  // namespace pathcode
