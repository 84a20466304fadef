// Demand realization and the augmented conflict graph.
//
// After placement, each receiver requests one file; the packets of that file
// it has not cached (all packets, for an updated file) form its target set.
// Each target becomes a root vertex, grouped with one virtual vertex per
// correlated packet available in the system (cached anywhere or requested by
// anyone).  Delivering any one vertex of a group lets its receiver
// reconstruct the root target, at a refinement cost given by the conditional
// entropy.  Vertices conflict unless they carry the same packet or each
// packet is cached at the other vertex's receiver; a group is always a
// clique.

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cacm/corrlib.hpp"
#include "cacm/placement.hpp"

namespace cacm {

// One receiver's requested file and target packets.
struct DemandConfig {
  std::vector<int> files;                        // size K, 1-based file per receiver
  std::vector<std::vector<PacketRef>> targets;   // size K, sorted by packet index
};

// Resolves a demand vector into per-receiver target packets.  update_flags
// selects the delivered version per file (empty for static libraries): an
// updated file is requested in its Updated version and none of its Updated
// packets are cached, so all B of them are targets.  Throws if a demand index
// is out of range or update_flags has the wrong size.
DemandConfig build_demand(const LibraryModel& model, const CacheConfig& cache,
                          const std::vector<int>& demand_files,
                          const std::vector<bool>& update_flags = {});

enum class VertexKind : std::uint8_t { Root = 0, Virtual = 1 };

struct Vertex {
  PacketRef packet;          // rho(v)
  PacketKey key = 0;
  int receiver = 0;          // mu(v), 1-based
  int group = -1;            // index into ConflictGraph::groups
  VertexKind kind = VertexKind::Root;
  std::uint32_t cached_mask = 0;  // receivers caching rho(v) (bit k-1)
  std::uint32_t label_mask = 0;   // cached_mask | own receiver bit
};

class ConflictGraph {
 public:
  std::vector<Vertex> vertices;            // roots first (receiver-major,
                                           // packet-minor), then virtuals
                                           // (group-major, key-minor)
  std::vector<std::vector<int>> groups;    // group -> vertex ids, root first
  int n_roots = 0;
  int n_receivers = 0;

  int root_of_group(int group) const { return groups[static_cast<std::size_t>(group)][0]; }
  bool empty() const { return vertices.empty(); }
  int label_size(int v) const;

  // Conflict rule: same-group vertices always conflict; distinct-group
  // vertices conflict iff their packets differ and at least one packet is
  // not cached at the other vertex's receiver.
  bool adjacent(int a, int b) const;

  // All vertices carrying the given packet, ascending vertex id.
  const std::vector<int>& vertices_with_packet(PacketKey key) const;

  // Vertices sharing a label mask, ascending vertex id.
  const std::vector<int>& vertices_with_label(std::uint32_t label) const;

  void finalize();  // builds the lookup indexes above

 private:
  std::unordered_map<PacketKey, std::vector<int>> by_packet_;
  std::unordered_map<std::uint32_t, std::vector<int>> by_label_;
  static const std::vector<int> empty_;
};

// Builds the augmented conflict graph for a demand.  With aware == false the
// correlation ensembles are suppressed (every group is just its root), which
// yields the conventional correlation-ignorant conflict graph.
ConflictGraph build_augmented_graph(const LibraryModel& model, const CacheConfig& cache,
                                    const DemandConfig& demand, bool aware = true);

// A valid group coloring selects exactly one vertex per group and partitions
// the selected vertices into independent sets (color classes).
struct GroupColoring {
  std::vector<int> color_of;     // vertex id -> color, -1 if uncolored
  std::vector<int> group_color;  // group -> color of its selected vertex
  int n_colors = 0;
};

// Checks the validity conditions above; returns an empty string when valid,
// otherwise a description of the first violation.
std::string check_coloring(const ConflictGraph& graph, const GroupColoring& coloring);

// Graphviz rendering (one node per vertex, grouped clusters, conflict edges).
std::string to_dot(const ConflictGraph& graph);

}  // namespace cacm
