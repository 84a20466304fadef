// Greedy group colorings.

#include "cacm/coloring.hpp"

#include <algorithm>
#include <stdexcept>

namespace cacm {

std::string check_coloring(const ConflictGraph& graph, const GroupColoring& coloring) {
  if (coloring.color_of.size() != graph.vertices.size()) return "color_of has wrong size";
  if (coloring.group_color.size() != graph.groups.size()) return "group_color has wrong size";
  for (std::size_t g = 0; g < graph.groups.size(); ++g) {
    int colored = -1;
    for (int v : graph.groups[g]) {
      if (coloring.color_of[static_cast<std::size_t>(v)] >= 0) {
        if (colored >= 0) return "group " + std::to_string(g) + " has two colored vertices";
        colored = v;
      }
    }
    if (colored < 0) return "group " + std::to_string(g) + " has no colored vertex";
    if (coloring.group_color[g] != coloring.color_of[static_cast<std::size_t>(colored)])
      return "group " + std::to_string(g) + " color mismatch";
  }
  std::vector<int> colored;
  for (int v = 0; v < static_cast<int>(graph.vertices.size()); ++v) {
    if (coloring.color_of[static_cast<std::size_t>(v)] >= 0) colored.push_back(v);
  }
  for (std::size_t i = 0; i < colored.size(); ++i) {
    for (std::size_t j = i + 1; j < colored.size(); ++j) {
      if (coloring.color_of[static_cast<std::size_t>(colored[i])] ==
              coloring.color_of[static_cast<std::size_t>(colored[j])] &&
          graph.adjacent(colored[i], colored[j])) {
        return "adjacent vertices " + std::to_string(colored[i]) + "," +
               std::to_string(colored[j]) + " share a color";
      }
    }
  }
  return {};
}

GroupColoring ggc_coded(const ConflictGraph& graph, const LibraryModel& model,
                        const CacheConfig& cache) {
  (void)cache;
  const int n = static_cast<int>(graph.vertices.size());
  GroupColoring coloring;
  coloring.color_of.assign(static_cast<std::size_t>(n), -1);
  coloring.group_color.assign(graph.groups.size(), -1);

  std::vector<char> group_alive(graph.groups.size(), 1);
  const auto vertex_alive = [&](int v) {
    return group_alive[static_cast<std::size_t>(graph.vertices[static_cast<std::size_t>(v)].group)] != 0;
  };

  // Roots occupy ids [0, n_roots); scanning ascending finds the lowest-id
  // live root.
  int root_scan = 0;
  std::vector<int> members;
  std::vector<int> best_set;
  std::vector<int> grown;

  while (true) {
    while (root_scan < graph.n_roots && !vertex_alive(root_scan)) ++root_scan;
    if (root_scan >= graph.n_roots) break;
    const int root = root_scan;
    const Vertex& root_vertex = graph.vertices[static_cast<std::size_t>(root)];
    const int group = root_vertex.group;

    // Candidate order within the group: larger labels first (a transmission
    // built around the vertex can serve more receivers), then lower
    // conditional entropy toward the root (cheaper refinement; the root
    // itself costs nothing), then vertex id.
    members = graph.groups[static_cast<std::size_t>(group)];
    std::vector<double> cond(members.size(), 0.0);
    for (std::size_t i = 0; i < members.size(); ++i) {
      cond[i] = cond_entropy(root_vertex.packet,
                             graph.vertices[static_cast<std::size_t>(members[i])].packet, model);
    }
    std::vector<std::size_t> order(members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const int la = graph.label_size(members[a]);
      const int lb = graph.label_size(members[b]);
      if (la != lb) return la > lb;
      if (cond[a] != cond[b]) return cond[a] < cond[b];
      return members[a] < members[b];
    });

    // Grow one identical-label independent set per candidate, keeping the
    // first set of maximal size; stop as soon as the current best covers at
    // least as many receivers as the current candidate's label names.
    best_set.clear();
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
      const int cand = members[order[oi]];
      const Vertex& cv = graph.vertices[static_cast<std::size_t>(cand)];
      grown.clear();
      grown.push_back(cand);
      for (int v : graph.vertices_with_label(cv.label_mask)) {
        if (v == cand || !vertex_alive(v)) continue;
        if (graph.vertices[static_cast<std::size_t>(v)].group == group) continue;
        bool ok = true;
        for (int u : grown) {
          if (graph.adjacent(v, u)) {
            ok = false;
            break;
          }
        }
        if (ok) grown.push_back(v);
      }
      if (grown.size() > best_set.size()) best_set = grown;
      if (static_cast<int>(best_set.size()) >= graph.label_size(cand)) break;
    }

    const int color = coloring.n_colors++;
    for (int v : best_set) {
      coloring.color_of[static_cast<std::size_t>(v)] = color;
      const int g = graph.vertices[static_cast<std::size_t>(v)].group;
      coloring.group_color[static_cast<std::size_t>(g)] = color;
      group_alive[static_cast<std::size_t>(g)] = 0;
    }

    // Retire live groups whose root is reconstructable from a just-colored
    // correlated packet at the same receiver; the group's own copy of that
    // packet inherits the color so the group stays represented.
    std::vector<int> sorted_set = best_set;
    std::sort(sorted_set.begin(), sorted_set.end());
    for (int v : sorted_set) {
      const Vertex& cv = graph.vertices[static_cast<std::size_t>(v)];
      for (int w : graph.vertices_with_packet(cv.key)) {
        const Vertex& wv = graph.vertices[static_cast<std::size_t>(w)];
        if (wv.receiver != cv.receiver) continue;
        if (!group_alive[static_cast<std::size_t>(wv.group)]) continue;
        coloring.color_of[static_cast<std::size_t>(w)] = color;
        coloring.group_color[static_cast<std::size_t>(wv.group)] = color;
        group_alive[static_cast<std::size_t>(wv.group)] = 0;
      }
    }
  }
  return coloring;
}

GroupColoring ggc_naive(const ConflictGraph& graph) {
  const int n = static_cast<int>(graph.vertices.size());
  GroupColoring coloring;
  coloring.color_of.assign(static_cast<std::size_t>(n), -1);
  coloring.group_color.assign(graph.groups.size(), -1);

  std::vector<char> group_alive(graph.groups.size(), 1);
  int root_scan = 0;
  while (true) {
    while (root_scan < graph.n_roots &&
           !group_alive[static_cast<std::size_t>(
               graph.vertices[static_cast<std::size_t>(root_scan)].group)]) {
      ++root_scan;
    }
    if (root_scan >= graph.n_roots) break;
    const int group = graph.vertices[static_cast<std::size_t>(root_scan)].group;

    // Representative carried by the most live groups (its own included);
    // group order puts the root first, so ties favor the root.
    int best_vertex = -1;
    std::size_t best_count = 0;
    for (int v : graph.groups[static_cast<std::size_t>(group)]) {
      const Vertex& vert = graph.vertices[static_cast<std::size_t>(v)];
      std::size_t count = 0;
      for (int w : graph.vertices_with_packet(vert.key)) {
        if (group_alive[static_cast<std::size_t>(
                graph.vertices[static_cast<std::size_t>(w)].group)]) {
          ++count;
        }
      }
      if (count > best_count) {
        best_count = count;
        best_vertex = v;
      }
    }

    const int color = coloring.n_colors++;
    const PacketKey key = graph.vertices[static_cast<std::size_t>(best_vertex)].key;
    for (int w : graph.vertices_with_packet(key)) {
      const int g = graph.vertices[static_cast<std::size_t>(w)].group;
      if (!group_alive[static_cast<std::size_t>(g)]) continue;
      coloring.color_of[static_cast<std::size_t>(w)] = color;
      coloring.group_color[static_cast<std::size_t>(g)] = color;
      group_alive[static_cast<std::size_t>(g)] = 0;
    }
  }
  return coloring;
}

SchemeResult ggc_best(const ConflictGraph& graph, const LibraryModel& model,
                      const CacheConfig& cache) {
  SchemeResult coded;
  coded.coloring = ggc_coded(graph, model, cache);
  coded.codeword = assemble_codeword(graph, coded.coloring, cache, model);
  coded.rate = rate(coded.codeword, model);

  SchemeResult naive;
  naive.coloring = ggc_naive(graph);
  naive.codeword = assemble_codeword(graph, naive.coloring, cache, model);
  naive.rate = rate(naive.codeword, model);

  return (coded.rate <= naive.rate) ? std::move(coded) : std::move(naive);
}

}  // namespace cacm
