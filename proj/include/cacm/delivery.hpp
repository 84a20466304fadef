// Codeword assembly, decoding, and rate accounting.
//
// A codeword has two parts.  The coded segment carries one XOR per color
// class: the packets of that class, minus those already cached at their own
// group's receiver, each transmission costing one packet entropy h.  The
// refinement segment then closes the remaining gap per (receiver, target):
// if the target itself was not obtained, a short message conditioned on a
// correlated packet the receiver knows delivers it at cost H(target | ref).
// Refinements with identical (target, reference) are broadcast once and
// shared by all receivers needing them.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cacm/graph.hpp"

namespace cacm {

// One XOR of distinct packets, sorted by packet key.  Costs h.
struct Transmission {
  std::vector<PacketRef> xored;
};

// One conditional refinement: enough bits to reconstruct `target` given
// `reference` (or from scratch when reference is absent).  Broadcast once for
// all listed receivers.
struct Refinement {
  std::vector<int> receivers;
  PacketRef target;
  std::optional<PacketRef> reference;
  double length = 0.0;
};

struct Codeword {
  std::vector<Transmission> coded_segment;
  std::vector<Refinement> refinements;
  double total_length = 0.0;
};

// Builds the codeword for a valid group coloring.  apply_exclusion toggles
// the own-receiver-cache drop rule in the coded segment (kept switchable so
// tests can confirm the rule never hurts the rate).
Codeword assemble_codeword(const ConflictGraph& graph, const GroupColoring& coloring,
                           const CacheConfig& cache, const LibraryModel& model,
                           bool apply_exclusion = true);

// Symbolic decoder: per receiver, closes its cache under (a) peeling XOR
// transmissions with exactly one unknown constituent, (b) applying broadcast
// refinements whose reference it knows (or that carry the full packet), and
// (c) zero-entropy equivalences (a known packet with H(target|known) == 0
// reveals the target).  True iff every receiver recovers all its targets.
bool decode_verify(const Codeword& codeword, const CacheConfig& cache,
                   const DemandConfig& demand, const LibraryModel& model);

// Delivery rate in file units: total_length / H(W).
double rate(const Codeword& codeword, const LibraryModel& model);

// Plain-text dump, one line per element:
//   "XOR <packet> <packet> ..." / "REF <rcvs> <target><-<ref> <length>".
std::string describe(const Codeword& codeword);

}  // namespace cacm
