// Exhaustive minimum-rate group coloring.
//
// Enumerates every selection of one representative vertex per group
// (cartesian product in group order) and, for each selection, every
// partition of the representatives into independent sets (depth-first in
// restricted-growth order, pruning blocks that would contain a conflict).
// Each complete candidate is assembled into a codeword and the first
// minimum-rate candidate in enumeration order wins.

#include <stdexcept>
#include <utility>
#include <vector>

#include "cacm/coloring.hpp"

namespace cacm {

namespace {

struct Search {
  const ConflictGraph& graph;
  const LibraryModel& model;
  const CacheConfig& cache;
  const std::vector<int>& selected;          // one vertex per group
  std::vector<std::vector<int>> blocks;      // current partial partition
  SchemeResult best;
  bool found = false;

  void finish() {
    GroupColoring coloring;
    coloring.color_of.assign(graph.vertices.size(), -1);
    coloring.group_color.assign(graph.groups.size(), -1);
    coloring.n_colors = static_cast<int>(blocks.size());
    for (int c = 0; c < static_cast<int>(blocks.size()); ++c) {
      for (int v : blocks[static_cast<std::size_t>(c)]) {
        coloring.color_of[static_cast<std::size_t>(v)] = c;
        coloring.group_color[static_cast<std::size_t>(
            graph.vertices[static_cast<std::size_t>(v)].group)] = c;
      }
    }
    Codeword codeword = assemble_codeword(graph, coloring, cache, model);
    const double r = rate(codeword, model);
    if (!found || r < best.rate) {
      best.coloring = std::move(coloring);
      best.codeword = std::move(codeword);
      best.rate = r;
      found = true;
    }
  }

  void place(std::size_t index) {
    if (index == selected.size()) {
      finish();
      return;
    }
    const int v = selected[index];
    // Index (not iterate) over the current blocks: deeper recursion appends
    // and removes trailing blocks, which may reallocate the outer vector.
    const std::size_t n_blocks = blocks.size();
    for (std::size_t b = 0; b < n_blocks; ++b) {
      bool ok = true;
      for (int u : blocks[b]) {
        if (graph.adjacent(v, u)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        blocks[b].push_back(v);
        place(index + 1);
        blocks[b].pop_back();
      }
    }
    blocks.push_back({v});
    place(index + 1);
    blocks.pop_back();
  }
};

}  // namespace

SchemeResult exhaustive_min_rate(const ConflictGraph& graph, const LibraryModel& model,
                                 const CacheConfig& cache, int max_vertices) {
  if (static_cast<int>(graph.vertices.size()) > max_vertices)
    throw std::invalid_argument("exhaustive coloring: graph exceeds vertex limit");

  if (graph.groups.empty()) {
    SchemeResult empty;
    empty.coloring.n_colors = 0;
    empty.codeword.total_length = 0.0;
    empty.rate = 0.0;
    return empty;
  }

  std::vector<int> selected(graph.groups.size(), -1);
  SchemeResult best;
  bool found = false;

  // Odometer over group members.
  std::vector<std::size_t> choice(graph.groups.size(), 0);
  for (;;) {
    for (std::size_t g = 0; g < graph.groups.size(); ++g) {
      selected[g] = graph.groups[g][choice[g]];
    }
    Search search{graph, model, cache, selected, {}, {}, false};
    search.place(0);
    if (search.found && (!found || search.best.rate < best.rate)) {
      best = std::move(search.best);
      found = true;
    }
    // Advance the odometer (last group fastest).
    std::size_t g = graph.groups.size();
    while (g > 0) {
      --g;
      if (++choice[g] < graph.groups[g].size()) break;
      choice[g] = 0;
      if (g == 0) {
        if (!found) throw std::logic_error("exhaustive coloring: no valid candidate");
        return best;
      }
    }
  }
}

}  // namespace cacm
