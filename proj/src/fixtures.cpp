// Worked-example construction.

#include "cacm/fixtures.hpp"

#include <algorithm>

namespace cacm {

namespace {

std::vector<PacketKey> keys_of(std::initializer_list<std::pair<int, int>> file_packet_pairs) {
  std::vector<PacketKey> keys;
  keys.reserve(file_packet_pairs.size());
  for (const auto& [file, packet] : file_packet_pairs) {
    keys.push_back(packet_key(file, Version::Original, packet));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

ExampleInstance two_receiver_update_example(double update_delta) {
  DynamicParams dyn;
  dyn.update_prob = {1.0, 1.0};
  dyn.update_delta = update_delta;
  LibraryModel model(2, 2, 1.0, 0.0, {{1}, {2}}, dyn);
  CacheConfig cache = deterministic_place(NamedPlacement::MotivatingExample, 1.0, model);
  return ExampleInstance{std::move(model), std::move(cache), {1, 2}, {true, true}};
}

ExampleInstance three_receiver_mixed_example(double delta) {
  DynamicParams dyn;
  dyn.update_prob = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  dyn.update_delta = delta;
  LibraryModel model(6, 4, 1.0, delta, {{1, 2}, {3}, {4}, {5, 6}}, dyn);

  CacheConfig cache(3);
  cache.assign(1, keys_of({{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}, {3, 2},
                           {4, 1}, {4, 2}, {5, 1}, {5, 3}, {6, 1}, {6, 3}}));
  cache.assign(2, keys_of({{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 3}, {3, 4},
                           {4, 3}, {4, 4}, {5, 3}, {5, 4}, {6, 2}, {6, 4}}));
  cache.assign(3, keys_of({{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 1}, {3, 1},
                           {3, 2}, {4, 1}, {5, 1}, {5, 3}, {6, 2}, {6, 4}}));

  return ExampleInstance{std::move(model), std::move(cache), {1, 3, 5},
                         {true, false, false, false, false, false}};
}

ExampleInstance two_file_example(double delta, NamedPlacement placement, double memory,
                                 std::vector<int> demand_files) {
  LibraryModel model(2, 2, 1.0, delta, {{1, 2}});
  CacheConfig cache = deterministic_place(placement, memory, model);
  return ExampleInstance{std::move(model), std::move(cache), std::move(demand_files), {}};
}

}  // namespace cacm
