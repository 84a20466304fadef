// Hand-constructed worked examples with externally known optimal codewords.
// Used by unit tests, the acceptance suite, and the CLI selftest.

#pragma once

#include <vector>

#include "cacm/corrlib.hpp"
#include "cacm/graph.hpp"
#include "cacm/placement.hpp"

namespace cacm {

struct ExampleInstance {
  LibraryModel model;
  CacheConfig cache;
  std::vector<int> demand_files;
  std::vector<bool> update_flags;  // empty for static instances

  DemandConfig demand() const { return build_demand(model, cache, demand_files, update_flags); }
};

// Two receivers, two independent single-cluster files of two packets each,
// both files updated, memory one file, cross-version conditional entropy
// fraction `update_delta`.  Receiver 1 requests file 1, receiver 2 file 2.
// The optimal correlation-aware codeword XORs the two cached-at-the-other-
// side original packets and refreshes all four updated packets by short
// refinements: rate 1 + 2 * update_delta (1.5 at update_delta = 1/2); any
// correlation-ignorant scheme must ship both updated files whole: rate 2.
ExampleInstance two_receiver_update_example(double update_delta);

// Three receivers, six files of four packets (h = 1/4), clusters {1,2} and
// {5,6} plus singletons, intra-cluster fraction delta, file 1 updated with
// cross-version fraction delta.  Demands (1, 3, 5) with the hand-picked
// caches below exercise every vertex flavour: updated roots with original
// virtuals, plain roots with cached cluster virtuals, and groups whose
// transmissions vanish entirely under the own-cache exclusion rule.  The
// greedy coded coloring emits exactly {W[1,3] xor W[3,1], W[1,4] xor W[3,2]}
// and totals 1/2 + (3/2) delta; the correlation-ignorant optimum is 7 colors
// (7/4 at B = 4).
ExampleInstance three_receiver_mixed_example(double delta);

// Two receivers, one cluster of two files with two packets each,
// intra-cluster fraction delta, no updates.  Placement is one of the named
// two-file placements at the given memory corner; receiver k requests
// demand_files[k-1].
ExampleInstance two_file_example(double delta, NamedPlacement placement, double memory,
                                 std::vector<int> demand_files);

}  // namespace cacm
