// Demand resolution and augmented conflict graph construction.

#include "cacm/graph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace cacm {

const std::vector<int> ConflictGraph::empty_{};

DemandConfig build_demand(const LibraryModel& model, const CacheConfig& cache,
                          const std::vector<int>& demand_files,
                          const std::vector<bool>& update_flags) {
  const int K = cache.n_receivers();
  if (demand_files.size() != static_cast<std::size_t>(K))
    throw std::invalid_argument("demand: need one requested file per receiver");
  if (!update_flags.empty() && update_flags.size() != static_cast<std::size_t>(model.n_files()))
    throw std::invalid_argument("demand: update_flags must have one entry per file");
  if (!update_flags.empty() && !model.is_dynamic())
    throw std::invalid_argument("demand: update flags supplied for a static library");

  DemandConfig q;
  q.files = demand_files;
  q.targets.resize(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) {
    const int file = demand_files[static_cast<std::size_t>(k - 1)];
    if (file < 1 || file > model.n_files())
      throw std::invalid_argument("demand: requested file out of range");
    const bool updated =
        !update_flags.empty() && update_flags[static_cast<std::size_t>(file - 1)];
    const Version version = updated ? Version::Updated : Version::Original;
    auto& targets = q.targets[static_cast<std::size_t>(k - 1)];
    for (int b = 1; b <= model.n_packets(); ++b) {
      const PacketRef p{file, version, b};
      // Updated packets are never cached (placement precedes the update), so
      // an updated file is requested in full.
      if (!updated && cache.contains(k, p)) continue;
      targets.push_back(p);
    }
  }
  return q;
}

int ConflictGraph::label_size(int v) const {
  return std::popcount(vertices[static_cast<std::size_t>(v)].label_mask);
}

bool ConflictGraph::adjacent(int a, int b) const {
  if (a == b) return false;
  const Vertex& va = vertices[static_cast<std::size_t>(a)];
  const Vertex& vb = vertices[static_cast<std::size_t>(b)];
  if (va.group == vb.group) return true;
  if (va.key == vb.key) return false;
  const bool a_cached_at_b = (va.cached_mask >> (vb.receiver - 1)) & 1u;
  const bool b_cached_at_a = (vb.cached_mask >> (va.receiver - 1)) & 1u;
  return !(a_cached_at_b && b_cached_at_a);
}

const std::vector<int>& ConflictGraph::vertices_with_packet(PacketKey key) const {
  const auto it = by_packet_.find(key);
  return it == by_packet_.end() ? empty_ : it->second;
}

const std::vector<int>& ConflictGraph::vertices_with_label(std::uint32_t label) const {
  const auto it = by_label_.find(label);
  return it == by_label_.end() ? empty_ : it->second;
}

void ConflictGraph::finalize() {
  by_packet_.clear();
  by_label_.clear();
  for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
    by_packet_[vertices[static_cast<std::size_t>(v)].key].push_back(v);
    by_label_[vertices[static_cast<std::size_t>(v)].label_mask].push_back(v);
  }
}

ConflictGraph build_augmented_graph(const LibraryModel& model, const CacheConfig& cache,
                                    const DemandConfig& demand, bool aware) {
  const int K = cache.n_receivers();
  if (K > 32) throw std::invalid_argument("graph: at most 32 receivers supported");

  ConflictGraph graph;
  graph.n_receivers = K;

  // Universe of packets present in the system (cached anywhere or requested),
  // and the caching mask of every packet.
  std::unordered_map<PacketKey, std::uint32_t> cached_mask;
  std::vector<PacketKey> universe;
  for (int k = 1; k <= K; ++k) {
    for (PacketKey key : cache.packets(k)) {
      auto [it, fresh] = cached_mask.try_emplace(key, 0u);
      it->second |= 1u << (k - 1);
      if (fresh) universe.push_back(key);
    }
  }
  for (const auto& targets : demand.targets) {
    for (const PacketRef& p : targets) {
      const PacketKey key = packet_key(p);
      if (cached_mask.try_emplace(key, 0u).second) universe.push_back(key);
    }
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  const auto mask_of = [&](PacketKey key) {
    const auto it = cached_mask.find(key);
    return it == cached_mask.end() ? 0u : it->second;
  };

  // Root vertices: receiver-major, packet-index order within a receiver.
  for (int k = 1; k <= K; ++k) {
    for (const PacketRef& p : demand.targets[static_cast<std::size_t>(k - 1)]) {
      Vertex v;
      v.packet = p;
      v.key = packet_key(p);
      v.receiver = k;
      v.kind = VertexKind::Root;
      v.cached_mask = mask_of(v.key);
      v.label_mask = v.cached_mask | (1u << (k - 1));
      v.group = static_cast<int>(graph.groups.size());
      graph.groups.push_back({static_cast<int>(graph.vertices.size())});
      graph.vertices.push_back(v);
    }
  }
  graph.n_roots = static_cast<int>(graph.vertices.size());

  // Virtual vertices: for each root in id order, one vertex per correlated
  // packet available in the system, ascending packet key.
  if (aware) {
    for (int r = 0; r < graph.n_roots; ++r) {
      const Vertex root = graph.vertices[static_cast<std::size_t>(r)];
      for (const PacketRef& p : ensemble(root.packet, universe, model)) {
        if (p == root.packet) continue;
        Vertex v;
        v.packet = p;
        v.key = packet_key(p);
        v.receiver = root.receiver;
        v.kind = VertexKind::Virtual;
        v.cached_mask = mask_of(v.key);
        v.label_mask = v.cached_mask | (1u << (root.receiver - 1));
        v.group = root.group;
        graph.groups[static_cast<std::size_t>(root.group)].push_back(
            static_cast<int>(graph.vertices.size()));
        graph.vertices.push_back(v);
      }
    }
  }

  graph.finalize();
  return graph;
}

std::string to_dot(const ConflictGraph& graph) {
  std::ostringstream out;
  out << "graph conflicts {\n  node [shape=box fontsize=10];\n";
  for (std::size_t g = 0; g < graph.groups.size(); ++g) {
    out << "  subgraph cluster_g" << g << " {\n    label=\"group " << g << "\";\n";
    for (int v : graph.groups[g]) {
      const Vertex& vert = graph.vertices[static_cast<std::size_t>(v)];
      out << "    v" << v << " [label=\"" << packet_name(vert.packet) << "@"
          << vert.receiver << (vert.kind == VertexKind::Root ? " (root)" : "") << "\"];\n";
    }
    out << "  }\n";
  }
  const int n = static_cast<int>(graph.vertices.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (graph.adjacent(a, b)) out << "  v" << a << " -- v" << b << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace cacm
