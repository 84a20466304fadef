// Correlated content library model: construction, correlation predicate,
// conditional entropy, update sampling, ensembles.

#include "cacm/corrlib.hpp"

#include <algorithm>
#include <stdexcept>

#include "cacm/rng.hpp"

namespace cacm {

PacketRef packet_from_key(PacketKey key) {
  PacketRef p;
  p.packet = static_cast<int>(key % kMaxPacketsPerFile);
  const PacketKey fv = key / kMaxPacketsPerFile;
  p.version = (fv & 1u) ? Version::Updated : Version::Original;
  p.file = static_cast<int>(fv / 2u);
  return p;
}

std::string packet_name(const PacketRef& p) {
  const char* kind = (p.version == Version::Original) ? "W" : "U";
  return std::string(kind) + "[" + std::to_string(p.file) + "," + std::to_string(p.packet) + "]";
}

LibraryModel::LibraryModel(int n_files, int n_packets, double file_entropy, double delta,
                           std::vector<std::vector<int>> clusters,
                           std::optional<DynamicParams> dynamic)
    : n_files_(n_files),
      n_packets_(n_packets),
      file_entropy_(file_entropy),
      delta_(delta),
      clusters_(std::move(clusters)),
      dynamic_(std::move(dynamic)) {
  if (n_files_ < 1) throw std::invalid_argument("library: n_files must be >= 1");
  if (n_packets_ < 1 || n_packets_ >= kMaxPacketsPerFile)
    throw std::invalid_argument("library: n_packets out of range");
  if (!(file_entropy_ > 0.0)) throw std::invalid_argument("library: file_entropy must be > 0");
  if (!(delta_ >= 0.0 && delta_ < 1.0))
    throw std::invalid_argument("library: delta must lie in [0, 1)");

  cluster_index_.assign(static_cast<std::size_t>(n_files_) + 1, -1);
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    if (clusters_[c].empty()) throw std::invalid_argument("library: empty cluster");
    for (int f : clusters_[c]) {
      if (f < 1 || f > n_files_) throw std::invalid_argument("library: cluster file out of range");
      if (cluster_index_[static_cast<std::size_t>(f)] != -1)
        throw std::invalid_argument("library: file appears in two clusters");
      cluster_index_[static_cast<std::size_t>(f)] = static_cast<int>(c);
    }
  }
  for (int f = 1; f <= n_files_; ++f) {
    if (cluster_index_[static_cast<std::size_t>(f)] == -1)
      throw std::invalid_argument("library: file missing from cluster partition");
  }

  if (dynamic_) {
    DynamicParams& d = *dynamic_;
    if (d.update_prob.size() == 1) {
      d.update_prob.assign(static_cast<std::size_t>(n_files_), d.update_prob[0]);
    }
    if (d.update_prob.size() != static_cast<std::size_t>(n_files_))
      throw std::invalid_argument("library: update_prob must have one entry per file");
    for (double p : d.update_prob) {
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("library: update probability outside [0, 1]");
    }
    if (!(d.update_delta >= 0.0 && d.update_delta < 1.0))
      throw std::invalid_argument("library: update_delta must lie in [0, 1)");
  }
}

LibraryModel LibraryModel::symmetric(int n_files, int n_packets, double file_entropy,
                                     double delta, int cluster_size,
                                     std::optional<DynamicParams> dynamic) {
  if (cluster_size < 1 || n_files % cluster_size != 0)
    throw std::invalid_argument("library: cluster_size must divide n_files");
  std::vector<std::vector<int>> clusters;
  clusters.reserve(static_cast<std::size_t>(n_files / cluster_size));
  for (int start = 1; start <= n_files; start += cluster_size) {
    std::vector<int> c;
    c.reserve(static_cast<std::size_t>(cluster_size));
    for (int f = start; f < start + cluster_size; ++f) c.push_back(f);
    clusters.push_back(std::move(c));
  }
  return LibraryModel(n_files, n_packets, file_entropy, delta, std::move(clusters),
                      std::move(dynamic));
}

const DynamicParams& LibraryModel::dynamic() const {
  if (!dynamic_) throw std::logic_error("library: not a dynamic model");
  return *dynamic_;
}

int LibraryModel::cluster_of(int file) const {
  if (file < 1 || file > n_files_) throw std::out_of_range("library: file index out of range");
  return cluster_index_[static_cast<std::size_t>(file)];
}

bool LibraryModel::same_cluster(int file_a, int file_b) const {
  return cluster_of(file_a) == cluster_of(file_b);
}

EntropyLedger EntropyLedger::from_model(const LibraryModel& model) {
  EntropyLedger ledger;
  ledger.per_packet_entropy = model.packet_entropy();
  ledger.delta = model.delta();
  ledger.update_delta = model.is_dynamic() ? model.dynamic().update_delta : 0.0;
  return ledger;
}

bool delta_correlated(const PacketRef& p, const PacketRef& q, const LibraryModel& model) {
  if (p == q) return false;
  if (p.packet != q.packet) return false;
  if (p.file == q.file) return p.version != q.version;
  return p.version == Version::Original && q.version == Version::Original &&
         model.same_cluster(p.file, q.file);
}

double cond_entropy(const PacketRef& target, const std::optional<PacketRef>& reference,
                    const LibraryModel& model) {
  const double h = model.packet_entropy();
  if (!reference) return h;
  if (*reference == target) return 0.0;
  if (!delta_correlated(target, *reference, model)) return h;
  if (target.file == reference->file) return model.dynamic().update_delta * h;
  return model.delta() * h;
}

std::vector<bool> sample_updates(const LibraryModel& model, std::uint64_t seed) {
  const DynamicParams& dyn = model.dynamic();
  Rng rng(mix_seed(seed, 0x75706474u));  // "updt"
  std::vector<bool> updated(static_cast<std::size_t>(model.n_files()));
  for (int f = 0; f < model.n_files(); ++f) {
    updated[static_cast<std::size_t>(f)] = rng.bernoulli(dyn.update_prob[static_cast<std::size_t>(f)]);
  }
  return updated;
}

std::vector<PacketRef> ensemble(const PacketRef& p, const std::vector<PacketKey>& universe,
                                const LibraryModel& model) {
  std::vector<PacketRef> result;
  result.push_back(p);
  // Candidate correlated packets share p's packet index: the other version of
  // the same file, and the Original packet of every cluster mate.
  std::vector<PacketKey> candidates;
  if (model.is_dynamic()) {
    const Version other = (p.version == Version::Original) ? Version::Updated : Version::Original;
    candidates.push_back(packet_key(p.file, other, p.packet));
  }
  if (p.version == Version::Original) {
    const auto& cluster = model.clusters()[static_cast<std::size_t>(model.cluster_of(p.file))];
    for (int mate : cluster) {
      if (mate != p.file) candidates.push_back(packet_key(mate, Version::Original, p.packet));
    }
  }
  for (PacketKey key : candidates) {
    if (std::binary_search(universe.begin(), universe.end(), key)) {
      result.push_back(packet_from_key(key));
    }
  }
  std::sort(result.begin(), result.end(),
            [](const PacketRef& a, const PacketRef& b) { return packet_key(a) < packet_key(b); });
  return result;
}

}  // namespace cacm
