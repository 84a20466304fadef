#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "cacm/coloring.hpp"
#include "cacm/delivery.hpp"
#include "cacm/fixtures.hpp"
#include "cacm/rng.hpp"

using namespace cacm;

TEST_CASE("codeword assembly on the worked instance yields the two known XORs") {
  const double delta = 0.25;
  const ExampleInstance ex = three_receiver_mixed_example(delta);
  const DemandConfig demand = ex.demand();
  const ConflictGraph g = build_augmented_graph(ex.model, ex.cache, demand, true);
  const GroupColoring coloring = ggc_coded(g, ex.model, ex.cache);
  const Codeword codeword = assemble_codeword(g, coloring, ex.cache, ex.model);

  // Two of the four color classes survive own-cache exclusion.
  REQUIRE(codeword.coded_segment.size() == 2);
  std::set<std::set<std::string>> xors;
  for (const Transmission& t : codeword.coded_segment) {
    std::set<std::string> names;
    for (const PacketRef& p : t.xored) names.insert(packet_name(p));
    xors.insert(names);
  }
  const std::set<std::set<std::string>> expected = {
      {"W[1,3]", "W[3,1]"},
      {"W[1,4]", "W[3,2]"},
  };
  CHECK(xors == expected);

  // Six refinements: four version upgrades at receiver 1, two cluster-partner
  // refinements at receiver 3; receiver 2 decodes purely from the XORs.
  REQUIRE(codeword.refinements.size() == 6);
  const double h = ex.model.packet_entropy();
  int at_receiver_1 = 0, at_receiver_3 = 0;
  for (const Refinement& r : codeword.refinements) {
    REQUIRE(r.receivers.size() == 1);
    REQUIRE(r.reference.has_value());
    CHECK(r.length == delta * h);
    if (r.receivers[0] == 1) {
      ++at_receiver_1;
      CHECK(r.target.version == Version::Updated);
      CHECK(r.reference->file == r.target.file);
      CHECK(r.reference->packet == r.target.packet);
    } else {
      REQUIRE(r.receivers[0] == 3);
      ++at_receiver_3;
      CHECK(r.target.file == 5);
      CHECK(r.reference->file == 6);
      CHECK(r.reference->packet == r.target.packet);
    }
  }
  CHECK(at_receiver_1 == 4);
  CHECK(at_receiver_3 == 2);

  // Total length: two packet slots plus six quarter-entropy refinements.
  CHECK(codeword.total_length == 2 * h + 6 * delta * h);
  CHECK(rate(codeword, ex.model) == 0.5 + 1.5 * delta);
  CHECK(decode_verify(codeword, ex.cache, demand, ex.model));
}

TEST_CASE("decode verification rejects truncated codewords") {
  const ExampleInstance ex = three_receiver_mixed_example(0.25);
  const DemandConfig demand = ex.demand();
  const ConflictGraph g = build_augmented_graph(ex.model, ex.cache, demand, true);
  const GroupColoring coloring = ggc_coded(g, ex.model, ex.cache);
  const Codeword codeword = assemble_codeword(g, coloring, ex.cache, ex.model);

  Codeword no_xor = codeword;
  no_xor.coded_segment.pop_back();
  CHECK_FALSE(decode_verify(no_xor, ex.cache, demand, ex.model));

  Codeword no_refinement = codeword;
  no_refinement.refinements.pop_back();
  CHECK_FALSE(decode_verify(no_refinement, ex.cache, demand, ex.model));
}

TEST_CASE("the motivating two-receiver instance decodes at its optimum") {
  const ExampleInstance ex = two_receiver_update_example(0.5);
  const DemandConfig demand = ex.demand();
  const ConflictGraph g = build_augmented_graph(ex.model, ex.cache, demand, true);
  const SchemeResult best = exhaustive_min_rate(g, ex.model, ex.cache, 10);

  CHECK(best.rate == 1.5);
  // The optimum is tied between codeword shapes (e.g. one cross-coded
  // transmission plus four half-length upgrades, or two transmissions plus
  // two), so pin the invariants every optimal codeword shares: full-length
  // coded parts, half-length cross-version upgrades, totalling 1.5 files.
  const double h = ex.model.packet_entropy();
  for (const Transmission& t : best.codeword.coded_segment) CHECK(!t.xored.empty());
  const double coded_total = h * static_cast<double>(best.codeword.coded_segment.size());
  double refine_total = 0.0;
  for (const Refinement& r : best.codeword.refinements) {
    CHECK(r.length == 0.5 * h);
    REQUIRE(r.reference.has_value());
    CHECK(r.reference->file == r.target.file);
    CHECK(r.reference->packet == r.target.packet);
    CHECK(r.reference->version == Version::Original);
    CHECK(r.target.version == Version::Updated);
    refine_total += r.length;
  }
  CHECK(coded_total + refine_total == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(decode_verify(best.codeword, ex.cache, demand, ex.model));
}

TEST_CASE("shared refinements broadcast once to every receiver that needs them") {
  // Two receivers, both caching the stale file and requesting its refresh.
  DynamicParams dyn;
  dyn.update_prob = {1.0, 1.0};
  dyn.update_delta = 0.5;
  const LibraryModel m = LibraryModel(2, 2, 1.0, 0.0, {{1}, {2}}, dyn);
  CacheConfig cache(2);
  cache.assign(1, {packet_key(1, Version::Original, 1), packet_key(1, Version::Original, 2)});
  cache.assign(2, {packet_key(1, Version::Original, 1), packet_key(1, Version::Original, 2)});
  const DemandConfig demand = build_demand(m, cache, {1, 1}, {true, true});
  const ConflictGraph g = build_augmented_graph(m, cache, demand, true);

  const SchemeResult best = ggc_best(g, m, cache);
  CHECK(best.codeword.coded_segment.empty());
  REQUIRE(best.codeword.refinements.size() == 2);  // one per packet, deduplicated
  for (const Refinement& r : best.codeword.refinements) {
    CHECK(r.receivers == std::vector<int>{1, 2});
    CHECK(r.length == 0.5 * m.packet_entropy());
  }
  CHECK(best.rate == 0.5);
  CHECK(decode_verify(best.codeword, cache, demand, m));
}

TEST_CASE("dropping the own-cache exclusion never improves the rate") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const int K = 2 + static_cast<int>(rng.bounded(2));
    const int cluster = 1 + static_cast<int>(rng.bounded(2));
    const int N = cluster * 2;
    const int B = 1 + static_cast<int>(rng.bounded(2));
    const LibraryModel m = LibraryModel::symmetric(N, B, 1.0, 0.4 * rng.next_unit(), cluster);
    const CacheConfig cache = random_fractional_place(
        m, CachingDistribution::uniform(N), rng.next_unit() * N, K, rng.next_u64());
    std::vector<int> files(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
      files[static_cast<std::size_t>(k)] = 1 + static_cast<int>(rng.bounded(N));
    const DemandConfig demand = build_demand(m, cache, files);
    const ConflictGraph g = build_augmented_graph(m, cache, demand, true);
    if (g.empty()) continue;

    const GroupColoring coloring = ggc_coded(g, m, cache);
    const Codeword with = assemble_codeword(g, coloring, cache, m, true);
    const Codeword without = assemble_codeword(g, coloring, cache, m, false);
    CHECK(with.total_length <= without.total_length + 1e-12);
    CHECK(decode_verify(with, cache, demand, m));
    CHECK(decode_verify(without, cache, demand, m));
  }
}

TEST_CASE("codeword length always totals its parts") {
  const ExampleInstance ex = three_receiver_mixed_example(0.3);
  const ConflictGraph g = build_augmented_graph(ex.model, ex.cache, ex.demand(), true);
  const SchemeResult best = ggc_best(g, ex.model, ex.cache);
  double total = 0.0;
  for (const Transmission& t : best.codeword.coded_segment) {
    CHECK_FALSE(t.xored.empty());
    total += ex.model.packet_entropy();
  }
  for (const Refinement& r : best.codeword.refinements) total += r.length;
  CHECK(best.codeword.total_length == doctest::Approx(total).epsilon(1e-12));
  CHECK(rate(best.codeword, ex.model) ==
        doctest::Approx(total / ex.model.file_entropy()).epsilon(1e-12));
}

TEST_CASE("codeword descriptions list transmissions and refinements") {
  const ExampleInstance ex = two_receiver_update_example(0.5);
  const DemandConfig demand = ex.demand();
  const ConflictGraph g = build_augmented_graph(ex.model, ex.cache, demand, true);
  const SchemeResult best = exhaustive_min_rate(g, ex.model, ex.cache, 10);
  const std::string text = describe(best.codeword);
  CHECK(text.find("XOR ") != std::string::npos);
  CHECK(text.find("REF ") != std::string::npos);
  CHECK(text.find("U[1,1]") != std::string::npos);
  CHECK(text.find("<-") != std::string::npos);
  CHECK(text.back() == '\n');
}
