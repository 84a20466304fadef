#include <doctest.h>

#include <algorithm>
#include <set>

#include "cacm/corrlib.hpp"
#include "cacm/rng.hpp"

using namespace cacm;

namespace {

LibraryModel clustered_pairs_model() {
  // 4 files in clusters {1,2} and {3,4}, 3 packets each.
  return LibraryModel::symmetric(4, 3, 1.0, 0.2, 2);
}

LibraryModel dynamic_singleton_model(double pi, double update_delta) {
  DynamicParams dyn;
  dyn.update_prob = {pi};
  dyn.update_delta = update_delta;
  return LibraryModel::symmetric(3, 2, 1.0, 0.0, 1, dyn);
}

}  // namespace

TEST_CASE("packet keys round-trip and name packets readably") {
  const PacketRef p{3, Version::Original, 2};
  const PacketRef u{3, Version::Updated, 2};
  CHECK(packet_from_key(packet_key(p)) == p);
  CHECK(packet_from_key(packet_key(u)) == u);
  CHECK(packet_key(p) != packet_key(u));
  CHECK(packet_name(p) == "W[3,2]");
  CHECK(packet_name(u) == "U[3,2]");
  // Keys order by (file, version, packet).
  CHECK(packet_key(PacketRef{1, Version::Original, 5}) <
        packet_key(PacketRef{1, Version::Updated, 1}));
  CHECK(packet_key(PacketRef{1, Version::Updated, 5}) <
        packet_key(PacketRef{2, Version::Original, 1}));
}

TEST_CASE("model construction validates its inputs") {
  CHECK_THROWS(LibraryModel(2, 2, 1.0, 1.0, {{1, 2}}));   // delta must be < 1
  CHECK_THROWS(LibraryModel(2, 2, 1.0, -0.1, {{1, 2}}));  // delta must be >= 0
  CHECK_THROWS(LibraryModel(2, 2, 0.0, 0.1, {{1, 2}}));   // entropy must be positive
  CHECK_THROWS(LibraryModel(2, 2, 1.0, 0.1, {{1}}));      // clusters must cover every file
  CHECK_THROWS(LibraryModel(2, 2, 1.0, 0.1, {{1, 1, 2}}));  // no duplicate members
  CHECK_THROWS(LibraryModel(2, 2, 1.0, 0.1, {{1, 2, 3}}));  // no unknown files
  CHECK_THROWS(LibraryModel::symmetric(4, 2, 1.0, 0.1, 3));  // cluster size must divide N

  DynamicParams bad;
  bad.update_prob = {1.5};
  bad.update_delta = 0.2;
  CHECK_THROWS(LibraryModel::symmetric(2, 2, 1.0, 0.0, 1, bad));
  bad.update_prob = {0.5};
  bad.update_delta = 1.0;
  CHECK_THROWS(LibraryModel::symmetric(2, 2, 1.0, 0.0, 1, bad));

  const LibraryModel m = clustered_pairs_model();
  CHECK(m.n_files() == 4);
  CHECK(m.n_packets() == 3);
  CHECK(m.packet_entropy() == doctest::Approx(1.0 / 3.0));
  CHECK(m.cluster_of(1) == m.cluster_of(2));
  CHECK(m.cluster_of(3) == m.cluster_of(4));
  CHECK(m.cluster_of(1) != m.cluster_of(3));
  CHECK(m.same_cluster(1, 2));
  CHECK_FALSE(m.same_cluster(2, 3));
  CHECK_FALSE(m.is_dynamic());
  CHECK_THROWS(m.dynamic());
}

TEST_CASE("scalar update probability expands to every file") {
  const LibraryModel m = dynamic_singleton_model(0.4, 0.3);
  REQUIRE(m.is_dynamic());
  CHECK(m.dynamic().update_prob.size() == 3);
  for (double p : m.dynamic().update_prob) CHECK(p == 0.4);
  CHECK(m.dynamic().update_delta == 0.3);
}

TEST_CASE("correlation predicate requires matching packet index") {
  const LibraryModel m = clustered_pairs_model();
  const PacketRef w11{1, Version::Original, 1};
  const PacketRef w21{2, Version::Original, 1};
  const PacketRef w22{2, Version::Original, 2};
  const PacketRef w31{3, Version::Original, 1};

  CHECK(delta_correlated(w11, w21, m));   // same cluster, same packet index
  CHECK(delta_correlated(w21, w11, m));   // symmetric
  CHECK_FALSE(delta_correlated(w11, w22, m));  // packet index differs
  CHECK_FALSE(delta_correlated(w11, w31, m));  // different cluster
  CHECK_FALSE(delta_correlated(w11, w11, m));  // a packet is not its own partner
}

TEST_CASE("correlation predicate pairs versions of the same file") {
  const LibraryModel m = dynamic_singleton_model(1.0, 0.5);
  const PacketRef w{1, Version::Original, 2};
  const PacketRef u{1, Version::Updated, 2};
  const PacketRef u_other{2, Version::Updated, 2};
  CHECK(delta_correlated(w, u, m));
  CHECK(delta_correlated(u, w, m));
  CHECK_FALSE(delta_correlated(u, u_other, m));  // different files stay independent
  CHECK_FALSE(delta_correlated(w, PacketRef{1, Version::Updated, 1}, m));
}

TEST_CASE("conditional entropy tracks the correlation structure") {
  const LibraryModel m = clustered_pairs_model();
  const double h = m.packet_entropy();
  const PacketRef w11{1, Version::Original, 1};
  const PacketRef w21{2, Version::Original, 1};
  const PacketRef w31{3, Version::Original, 1};

  CHECK(cond_entropy(w11, std::nullopt, m) == h);
  CHECK(cond_entropy(w11, w11, m) == 0.0);
  CHECK(cond_entropy(w11, w21, m) == 0.2 * h);   // cluster partner
  CHECK(cond_entropy(w11, w31, m) == h);          // unrelated reference is useless

  const LibraryModel d = dynamic_singleton_model(1.0, 0.5);
  const double hd = d.packet_entropy();
  const PacketRef w{1, Version::Original, 1};
  const PacketRef u{1, Version::Updated, 1};
  CHECK(cond_entropy(u, w, d) == 0.5 * hd);
  CHECK(cond_entropy(w, u, d) == 0.5 * hd);
  CHECK(cond_entropy(u, std::nullopt, d) == hd);
}

TEST_CASE("entropy ledger mirrors the model constants") {
  const LibraryModel d = dynamic_singleton_model(0.7, 0.25);
  const EntropyLedger ledger = EntropyLedger::from_model(d);
  CHECK(ledger.per_packet_entropy == d.packet_entropy());
  CHECK(ledger.delta == d.delta());
  CHECK(ledger.update_delta == 0.25);
}

TEST_CASE("ensembles collect the correlated packets present in the universe") {
  const LibraryModel m = clustered_pairs_model();
  std::vector<PacketKey> universe;
  for (int f = 1; f <= 4; ++f) {
    for (int b = 1; b <= 3; ++b) universe.push_back(packet_key(f, Version::Original, b));
  }
  std::sort(universe.begin(), universe.end());

  const PacketRef w12{1, Version::Original, 2};
  const auto full = ensemble(w12, universe, m);
  REQUIRE(full.size() == 2);
  CHECK(full[0] == w12);
  CHECK(full[1] == PacketRef{2, Version::Original, 2});

  // Restricting the universe drops the partner.
  std::vector<PacketKey> only_first;
  for (int b = 1; b <= 3; ++b) only_first.push_back(packet_key(1, Version::Original, b));
  const auto alone = ensemble(w12, only_first, m);
  REQUIRE(alone.size() == 1);
  CHECK(alone[0] == w12);
}

TEST_CASE("ensembles pair versions in a refreshed library") {
  const LibraryModel d = dynamic_singleton_model(1.0, 0.5);
  std::vector<PacketKey> universe = {
      packet_key(1, Version::Original, 1), packet_key(1, Version::Updated, 1),
      packet_key(2, Version::Original, 1)};
  std::sort(universe.begin(), universe.end());
  const PacketRef u{1, Version::Updated, 1};
  const auto omega = ensemble(u, universe, d);
  REQUIRE(omega.size() == 2);
  CHECK(omega[0] == PacketRef{1, Version::Original, 1});
  CHECK(omega[1] == u);

  // Ensembles are sorted by key and always contain the seed packet.
  const PacketRef w{2, Version::Original, 1};
  const auto solo = ensemble(w, universe, d);
  REQUIRE(solo.size() == 1);
  CHECK(solo[0] == w);
}

TEST_CASE("update sampling respects degenerate probabilities and the seed") {
  const LibraryModel never = dynamic_singleton_model(0.0, 0.5);
  const LibraryModel always = dynamic_singleton_model(1.0, 0.5);
  const auto none = sample_updates(never, 42);
  const auto all = sample_updates(always, 42);
  REQUIRE(none.size() == 3);
  REQUIRE(all.size() == 3);
  for (bool f : none) CHECK_FALSE(f);
  for (bool f : all) CHECK(f);

  const LibraryModel d = dynamic_singleton_model(0.4, 0.5);
  CHECK(sample_updates(d, 7) == sample_updates(d, 7));
  // A static model has no update process to sample.
  CHECK_THROWS(sample_updates(clustered_pairs_model(), 1));
}

TEST_CASE("update sampling matches its probability in aggregate") {
  DynamicParams dyn;
  dyn.update_prob = {0.4};
  dyn.update_delta = 0.5;
  const LibraryModel d = LibraryModel::symmetric(1000, 1, 1.0, 0.0, 1, dyn);
  long long hits = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    for (bool f : sample_updates(d, static_cast<std::uint64_t>(s))) hits += f ? 1 : 0;
  }
  const double fraction = static_cast<double>(hits) / (1000.0 * seeds);
  // 200k draws at p=0.4: nine standard deviations are ~0.01.
  CHECK(fraction > 0.39);
  CHECK(fraction < 0.41);
}

TEST_CASE("deterministic generator produces stable streams") {
  Rng a(123), b(123), c(124);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() != c.next_u64());

  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
  CHECK(mix_seed(1, 2) != mix_seed(2, 2));
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));

  Rng r(99);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.bounded(7) < 7);
  }

  Rng s(5);
  const auto subset = s.sample_subset(10, 4);
  REQUIRE(subset.size() == 4);
  CHECK(std::is_sorted(subset.begin(), subset.end()));
  CHECK(std::set<int>(subset.begin(), subset.end()).size() == 4);
  for (int x : subset) {
    CHECK(x >= 0);
    CHECK(x < 10);
  }
  CHECK(Rng(5).sample_subset(10, 4) == subset);
}
