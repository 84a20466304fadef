// Group colorings of the conflict graph.
//
// Two greedy variants and an exhaustive reference:
//  - ggc_coded: grows, per group, an independent set of identical-label
//    vertices across groups, preferring large labels (more side information
//    per transmission) and low conditional entropy toward the root; groups
//    whose root becomes reconstructable from an already-colored correlated
//    packet are retired alongside.
//  - ggc_naive: picks the group member carried by the most groups and colors
//    all its occurrences together (uncoded multicast of a representative).
//  - ggc_best: assembles both codewords and keeps the shorter.
//  - exhaustive_min_rate: enumerates every selection of one vertex per group
//    and every partition of the selected vertices into independent sets,
//    assembling each candidate; returns the minimum-rate codeword.

#pragma once

#include "cacm/delivery.hpp"
#include "cacm/graph.hpp"

namespace cacm {

GroupColoring ggc_coded(const ConflictGraph& graph, const LibraryModel& model,
                        const CacheConfig& cache);

GroupColoring ggc_naive(const ConflictGraph& graph);

struct SchemeResult {
  GroupColoring coloring;
  Codeword codeword;
  double rate = 0.0;
};

// Runs both greedy variants, assembles both codewords, returns the one with
// the smaller rate (the coded variant on ties).
SchemeResult ggc_best(const ConflictGraph& graph, const LibraryModel& model,
                      const CacheConfig& cache);

// Exhaustive minimum over all valid group colorings.  Refuses graphs with
// more than max_vertices vertices (cost grows exponentially).  The minimum
// is unique up to the deterministic enumeration order: the first minimizer
// encountered is returned.
SchemeResult exhaustive_min_rate(const ConflictGraph& graph, const LibraryModel& model,
                                 const CacheConfig& cache, int max_vertices = 10);

}  // namespace cacm
