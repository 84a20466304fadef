// Cache placement: what each receiver stores before demands are revealed.
//
// Caches hold Original-version packets only (updates happen after placement).
// Random placement draws, independently per receiver and file, a uniformly
// random subset of the file's packets whose size follows a caching
// distribution; deterministic placements reproduce the hand-constructed cache
// contents used by the small worked examples.

#pragma once

#include <cstdint>
#include <vector>

#include "cacm/corrlib.hpp"

namespace cacm {

// Fraction of its memory a receiver devotes to each file.  Weights are
// nonnegative, sum to 1, and each must satisfy weight <= 1/M so that no file
// receives more than its own size.
struct CachingDistribution {
  std::vector<double> weights;

  static CachingDistribution uniform(int n_files);
  void validate(int n_files, double memory, double file_entropy) const;
};

// Per-receiver cache contents, stored as sorted unique packet keys.
class CacheConfig {
 public:
  explicit CacheConfig(int n_receivers)
      : packets_(static_cast<std::size_t>(n_receivers)) {}

  int n_receivers() const { return static_cast<int>(packets_.size()); }
  bool contains(int receiver, PacketKey key) const;
  bool contains(int receiver, const PacketRef& p) const { return contains(receiver, packet_key(p)); }
  const std::vector<PacketKey>& packets(int receiver) const;
  std::size_t count(int receiver) const { return packets(receiver).size(); }

  // Takes ownership of one receiver's keys, normalizing to sorted unique
  // order (the invariant `packets` exposes and `contains` relies on).
  void assign(int receiver, std::vector<PacketKey> keys);

 private:
  std::vector<std::vector<PacketKey>> packets_;
};

// Independent random placement: receiver k caches, for each file n, a
// uniformly random subset of round(weights[n] * M * B / H(W)) of that file's
// B Original packets.  memory is in entropy units, 0 <= memory <= N * H(W).
// Deterministic for a fixed seed.  Throws std::invalid_argument on parameter
// violations (including aggregate size exceeding the memory budget by more
// than the rounding slack of half a packet per file).
CacheConfig random_fractional_place(const LibraryModel& model, const CachingDistribution& dist,
                                    double memory, int n_receivers, std::uint64_t seed);

// Hand-constructed placements for the worked examples.
enum class NamedPlacement {
  // Two receivers, two one-cluster files, B = 2.  Memory h: receiver 1 caches
  // {W[1,1], W[2,2]}, receiver 2 caches {W[1,2], W[2,1]} (complementary
  // cross placement).  Memory 0: empty; memory 2h: everything.
  TwoFileCross,
  // Same library; memory h stores same-index packets of both files:
  // receiver 1 caches {W[1,1], W[2,1]}, receiver 2 caches {W[1,2], W[2,2]}.
  TwoFileStraight,
  // Two receivers, two independent files, B = 2, memory h: receiver 1 caches
  // {W[1,1], W[2,1]}, receiver 2 caches {W[1,2], W[2,2]}.
  MotivatingExample,
};

// Builds the requested named placement for the given memory corner
// (0, H(W), or 2*H(W); anything else is rejected).
CacheConfig deterministic_place(NamedPlacement placement, double memory,
                                const LibraryModel& model);

}  // namespace cacm
