#include <doctest.h>

#include <map>

#include "cacm/placement.hpp"
#include "cacm/rng.hpp"

using namespace cacm;

namespace {

LibraryModel flat_model(int n_files, int n_packets) {
  return LibraryModel::symmetric(n_files, n_packets, 1.0, 0.0, 1);
}

int per_file_count(const CacheConfig& cache, int receiver, int file) {
  int count = 0;
  for (PacketKey key : cache.packets(receiver)) {
    if (packet_from_key(key).file == file) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("caching distribution validates weights against the per-file cap") {
  const CachingDistribution uniform = CachingDistribution::uniform(4);
  REQUIRE(uniform.weights.size() == 4);
  for (double w : uniform.weights) CHECK(w == 0.25);
  CHECK_NOTHROW(uniform.validate(4, 2.0, 1.0));

  CachingDistribution lopsided;
  lopsided.weights = {0.9, 0.1};
  // 0.9 of a 2-file budget would exceed one file's size.
  CHECK_THROWS(lopsided.validate(2, 2.0, 1.0));
  CHECK_NOTHROW(lopsided.validate(2, 1.0, 1.0));

  CachingDistribution negative;
  negative.weights = {1.2, -0.2};
  CHECK_THROWS(negative.validate(2, 1.0, 1.0));

  CachingDistribution short_sum;
  short_sum.weights = {0.5, 0.4};
  CHECK_THROWS(short_sum.validate(2, 1.0, 1.0));
}

TEST_CASE("cache configuration stores sorted unique packet sets") {
  CacheConfig cache(2);
  CHECK(cache.n_receivers() == 2);
  cache.assign(1, {packet_key(2, Version::Original, 1), packet_key(1, Version::Original, 1),
                   packet_key(2, Version::Original, 1)});
  CHECK(cache.count(1) == 2);
  CHECK(cache.contains(1, packet_key(1, Version::Original, 1)));
  CHECK(cache.contains(1, PacketRef{2, Version::Original, 1}));
  CHECK_FALSE(cache.contains(1, packet_key(1, Version::Original, 2)));
  CHECK(cache.count(2) == 0);
  CHECK_THROWS(cache.packets(3));
  CHECK_THROWS(cache.packets(0));
}

TEST_CASE("random placement fills the exact per-file quota of original packets") {
  const LibraryModel m = flat_model(5, 10);
  const CachingDistribution dist = CachingDistribution::uniform(5);

  const CacheConfig empty = random_fractional_place(m, dist, 0.0, 3, 1);
  for (int k = 1; k <= 3; ++k) CHECK(empty.count(k) == 0);

  const CacheConfig full = random_fractional_place(m, dist, 5.0, 3, 1);
  for (int k = 1; k <= 3; ++k) CHECK(full.count(k) == 50);

  const CacheConfig half = random_fractional_place(m, dist, 2.0, 3, 1);
  for (int k = 1; k <= 3; ++k) {
    CHECK(half.count(k) == 20);
    for (int f = 1; f <= 5; ++f) CHECK(per_file_count(half, k, f) == 4);
    for (PacketKey key : half.packets(k)) {
      CHECK(packet_from_key(key).version == Version::Original);
    }
  }
}

TEST_CASE("random placement caches each packet at the configured frequency") {
  const LibraryModel m = flat_model(5, 1000);
  const CachingDistribution dist = CachingDistribution::uniform(5);
  const PacketKey probe = packet_key(3, Version::Original, 17);
  int hits = 0;
  const int seeds = 2000;
  for (int s = 0; s < seeds; ++s) {
    const CacheConfig cache =
        random_fractional_place(m, dist, 2.0, 1, static_cast<std::uint64_t>(s));
    hits += cache.contains(1, probe) ? 1 : 0;
  }
  const double freq = static_cast<double>(hits) / seeds;
  // p = M/N = 0.4; three standard deviations are ~0.033.
  CHECK(freq > 0.4 - 0.033);
  CHECK(freq < 0.4 + 0.033);
}

TEST_CASE("random placement stays within the memory budget under rounding") {
  const LibraryModel m = flat_model(50, 128);
  const CachingDistribution dist = CachingDistribution::uniform(50);
  const CacheConfig cache = random_fractional_place(m, dist, 5.0, 2, 9);
  // 5*128/50 = 12.8 rounds to 13 per file; the half-packet-per-file slack
  // admits the overshoot.
  for (int k = 1; k <= 2; ++k) {
    CHECK(cache.count(k) == 50 * 13);
    for (int f = 1; f <= 50; ++f) CHECK(per_file_count(cache, k, f) == 13);
  }
}

TEST_CASE("random placement is seed-deterministic and receiver-independent") {
  const LibraryModel m = flat_model(4, 16);
  const CachingDistribution dist = CachingDistribution::uniform(4);
  const CacheConfig a = random_fractional_place(m, dist, 2.0, 2, 77);
  const CacheConfig b = random_fractional_place(m, dist, 2.0, 2, 77);
  const CacheConfig c = random_fractional_place(m, dist, 2.0, 2, 78);
  CHECK(a.packets(1) == b.packets(1));
  CHECK(a.packets(2) == b.packets(2));
  CHECK(a.packets(1) != c.packets(1));
  // Receivers draw from independent streams: same seed, different contents.
  CHECK(a.packets(1) != a.packets(2));
}

TEST_CASE("named placements produce the fixed cache patterns") {
  const LibraryModel m = LibraryModel(2, 2, 1.0, 0.25, {{1, 2}});

  const CacheConfig cross = deterministic_place(NamedPlacement::TwoFileCross, 1.0, m);
  CHECK(cross.packets(1) == std::vector<PacketKey>{packet_key(1, Version::Original, 1),
                                                   packet_key(2, Version::Original, 2)});
  CHECK(cross.packets(2) == std::vector<PacketKey>{packet_key(1, Version::Original, 2),
                                                   packet_key(2, Version::Original, 1)});

  const CacheConfig straight = deterministic_place(NamedPlacement::TwoFileStraight, 1.0, m);
  CHECK(straight.packets(1) == std::vector<PacketKey>{packet_key(1, Version::Original, 1),
                                                      packet_key(2, Version::Original, 1)});
  CHECK(straight.packets(2) == std::vector<PacketKey>{packet_key(1, Version::Original, 2),
                                                      packet_key(2, Version::Original, 2)});

  const CacheConfig none = deterministic_place(NamedPlacement::TwoFileCross, 0.0, m);
  CHECK(none.count(1) == 0);
  CHECK(none.count(2) == 0);

  const CacheConfig all = deterministic_place(NamedPlacement::TwoFileCross, 2.0, m);
  CHECK(all.count(1) == 4);
  CHECK(all.count(2) == 4);

  CHECK_THROWS(deterministic_place(NamedPlacement::TwoFileCross, 0.5, m));
  const LibraryModel wrong_shape = flat_model(3, 2);
  CHECK_THROWS(deterministic_place(NamedPlacement::TwoFileCross, 1.0, wrong_shape));
}
