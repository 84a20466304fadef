// Cache placement implementations.

#include "cacm/placement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cacm/rng.hpp"

namespace cacm {

CachingDistribution CachingDistribution::uniform(int n_files) {
  CachingDistribution d;
  d.weights.assign(static_cast<std::size_t>(n_files), 1.0 / n_files);
  return d;
}

void CachingDistribution::validate(int n_files, double memory, double file_entropy) const {
  if (weights.size() != static_cast<std::size_t>(n_files))
    throw std::invalid_argument("placement: caching distribution needs one weight per file");
  double sum = 0.0;
  const double memory_files = memory / file_entropy;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("placement: negative caching weight");
    if (memory_files > 0.0 && w > 1.0 / memory_files + 1e-12)
      throw std::invalid_argument("placement: caching weight exceeds 1/M (file would overflow)");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("placement: caching weights must sum to 1");
}

bool CacheConfig::contains(int receiver, PacketKey key) const {
  const auto& v = packets(receiver);
  return std::binary_search(v.begin(), v.end(), key);
}

const std::vector<PacketKey>& CacheConfig::packets(int receiver) const {
  if (receiver < 1 || receiver > n_receivers())
    throw std::out_of_range("cache: receiver index out of range");
  return packets_[static_cast<std::size_t>(receiver - 1)];
}

void CacheConfig::assign(int receiver, std::vector<PacketKey> keys) {
  if (receiver < 1 || receiver > n_receivers())
    throw std::out_of_range("cache: receiver index out of range");
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  packets_[static_cast<std::size_t>(receiver - 1)] = std::move(keys);
}

CacheConfig random_fractional_place(const LibraryModel& model, const CachingDistribution& dist,
                                    double memory, int n_receivers, std::uint64_t seed) {
  if (n_receivers < 1) throw std::invalid_argument("placement: need at least one receiver");
  const double H = model.file_entropy();
  const int N = model.n_files();
  const int B = model.n_packets();
  if (!(memory >= 0.0 && memory <= N * H + 1e-12))
    throw std::invalid_argument("placement: memory must lie in [0, N*H(W)]");
  dist.validate(N, memory, H);

  // Packet counts per file, identical across receivers.
  std::vector<int> per_file(static_cast<std::size_t>(N));
  long long total = 0;
  for (int n = 0; n < N; ++n) {
    const double slots = dist.weights[static_cast<std::size_t>(n)] * memory * B / H;
    const long long c = std::llround(slots);
    if (c < 0 || c > B)
      throw std::invalid_argument("placement: per-file cache size out of range");
    per_file[static_cast<std::size_t>(n)] = static_cast<int>(c);
    total += c;
  }
  // Rounding each file to the nearest packet can overshoot the budget by at
  // most half a packet per file.
  const double budget_slots = memory * B / H;
  if (static_cast<double>(total) > budget_slots + 0.5 * N + 1e-9)
    throw std::invalid_argument("placement: aggregate cache size exceeds memory budget");

  CacheConfig cache(n_receivers);
  for (int k = 1; k <= n_receivers; ++k) {
    Rng rng(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(k)), 0x706c6163u));  // "plac"
    std::vector<PacketKey> keys;
    keys.reserve(static_cast<std::size_t>(total));
    for (int n = 1; n <= N; ++n) {
      const int c = per_file[static_cast<std::size_t>(n - 1)];
      const std::vector<int> subset = rng.sample_subset(B, c);
      for (int b : subset) keys.push_back(packet_key(n, Version::Original, b + 1));
    }
    std::sort(keys.begin(), keys.end());
    cache.assign(k, std::move(keys));
  }
  return cache;
}

namespace {

std::vector<PacketKey> sorted_keys(std::vector<PacketRef> refs) {
  std::vector<PacketKey> keys;
  keys.reserve(refs.size());
  for (const PacketRef& p : refs) keys.push_back(packet_key(p));
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<PacketKey> full_library_keys(const LibraryModel& model) {
  std::vector<PacketKey> keys;
  keys.reserve(static_cast<std::size_t>(model.n_files()) *
               static_cast<std::size_t>(model.n_packets()));
  for (int n = 1; n <= model.n_files(); ++n) {
    for (int b = 1; b <= model.n_packets(); ++b) {
      keys.push_back(packet_key(n, Version::Original, b));
    }
  }
  return keys;
}

}  // namespace

CacheConfig deterministic_place(NamedPlacement placement, double memory,
                                const LibraryModel& model) {
  if (model.n_files() != 2 || model.n_packets() != 2)
    throw std::invalid_argument("placement: named placements need 2 files of 2 packets");
  const double H = model.file_entropy();
  const auto near = [&](double target) { return std::abs(memory - target) <= 1e-9 * std::max(1.0, H); };

  CacheConfig cache(2);
  if (near(0.0)) return cache;
  if (near(2.0 * H)) {
    cache.assign(1, full_library_keys(model));
    cache.assign(2, full_library_keys(model));
    return cache;
  }
  if (!near(H))
    throw std::invalid_argument("placement: named placements support memory 0, H(W), or 2*H(W)");

  switch (placement) {
    case NamedPlacement::TwoFileCross:
      cache.assign(1, sorted_keys({{1, Version::Original, 1}, {2, Version::Original, 2}}));
      cache.assign(2, sorted_keys({{1, Version::Original, 2}, {2, Version::Original, 1}}));
      break;
    case NamedPlacement::TwoFileStraight:
      cache.assign(1, sorted_keys({{1, Version::Original, 1}, {2, Version::Original, 1}}));
      cache.assign(2, sorted_keys({{1, Version::Original, 2}, {2, Version::Original, 2}}));
      break;
    case NamedPlacement::MotivatingExample:
      cache.assign(1, sorted_keys({{1, Version::Original, 1}, {2, Version::Original, 1}}));
      cache.assign(2, sorted_keys({{1, Version::Original, 2}, {2, Version::Original, 2}}));
      break;
  }
  return cache;
}

}  // namespace cacm
