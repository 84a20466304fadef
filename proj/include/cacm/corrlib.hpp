// Correlated content library model.
//
// A library holds n_files files, each split into n_packets equal packets.
// Files are partitioned into clusters; packets of distinct files in the same
// cluster are pairwise correlated *at equal packet index*, with conditional
// entropy delta * h where h is the per-packet entropy.  A library may also be
// dynamic: each file independently receives an update (probability per file),
// and an updated packet is correlated with the original packet of the same
// file and index with conditional entropy update_delta * h.  Correlation
// never crosses packet indexes.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cacm {

enum class Version : std::uint8_t { Original = 0, Updated = 1 };

// Identifies one packet: file index (1-based), version, packet index
// (1-based).
struct PacketRef {
  int file = 0;
  Version version = Version::Original;
  int packet = 0;

  friend bool operator==(const PacketRef& a, const PacketRef& b) {
    return a.file == b.file && a.version == b.version && a.packet == b.packet;
  }
  friend bool operator!=(const PacketRef& a, const PacketRef& b) { return !(a == b); }
};

// Dense packed key, usable in hash maps and for canonical ordering
// (file-major, version, packet).  Supports file <= 131071, packet <= 16383.
using PacketKey = std::uint32_t;

constexpr int kMaxPacketsPerFile = 16384;

constexpr PacketKey packet_key(int file, Version version, int packet) {
  return (static_cast<PacketKey>(file) * 2u + static_cast<PacketKey>(version)) *
             static_cast<PacketKey>(kMaxPacketsPerFile) +
         static_cast<PacketKey>(packet);
}

constexpr PacketKey packet_key(const PacketRef& p) {
  return packet_key(p.file, p.version, p.packet);
}

PacketRef packet_from_key(PacketKey key);

// Human-readable form, e.g. "W[3,1]" (original) or "U[3,1]" (updated).
std::string packet_name(const PacketRef& p);

// Update process parameters for a dynamic library.
struct DynamicParams {
  // Per-file update probability.  Size n_files; a uniform scalar is expanded.
  std::vector<double> update_prob;
  // Conditional entropy fraction between the two versions of one packet.
  double update_delta = 0.0;
};

class LibraryModel {
 public:
  // clusters must partition {1, .., n_files}.  Throws std::invalid_argument
  // on malformed input (empty cluster, duplicate or missing file, delta or
  // update_delta outside [0, 1), probabilities outside [0, 1]).
  LibraryModel(int n_files, int n_packets, double file_entropy, double delta,
               std::vector<std::vector<int>> clusters,
               std::optional<DynamicParams> dynamic = std::nullopt);

  // Convenience factory: clusters are consecutive blocks of cluster_size
  // files (cluster_size must divide n_files).
  static LibraryModel symmetric(int n_files, int n_packets, double file_entropy,
                                double delta, int cluster_size,
                                std::optional<DynamicParams> dynamic = std::nullopt);

  int n_files() const { return n_files_; }
  int n_packets() const { return n_packets_; }
  double file_entropy() const { return file_entropy_; }
  double delta() const { return delta_; }
  double packet_entropy() const { return file_entropy_ / n_packets_; }
  const std::vector<std::vector<int>>& clusters() const { return clusters_; }
  bool is_dynamic() const { return dynamic_.has_value(); }
  const DynamicParams& dynamic() const;

  int cluster_of(int file) const;
  bool same_cluster(int file_a, int file_b) const;

 private:
  int n_files_;
  int n_packets_;
  double file_entropy_;
  double delta_;
  std::vector<std::vector<int>> clusters_;
  std::vector<int> cluster_index_;  // file (1-based) -> cluster position
  std::optional<DynamicParams> dynamic_;
};

// Per-packet entropy bookkeeping.  Conditional entropies in this model only
// take values {0, delta*h, update_delta*h, h}; the ledger centralizes that
// arithmetic so delivery-length accounting has a single source of truth.
struct EntropyLedger {
  double per_packet_entropy = 0.0;
  double delta = 0.0;
  double update_delta = 0.0;

  static EntropyLedger from_model(const LibraryModel& model);
};

// True iff p and q are distinct, share a packet index, and are correlated:
// either (a) both Original with files in the same cluster, or (b) the two
// versions of the same file's packet.  Symmetric and irreflexive.
bool delta_correlated(const PacketRef& p, const PacketRef& q, const LibraryModel& model);

// H(target | reference) in absolute entropy units.  A missing reference
// yields the full packet entropy h; reference == target yields 0;
// a correlated reference yields delta*h or update_delta*h as appropriate;
// an uncorrelated reference yields h.
double cond_entropy(const PacketRef& target, const std::optional<PacketRef>& reference,
                    const LibraryModel& model);

// Draw the per-file update indicators for one realization of a dynamic
// library.  Result[i] is true iff file i+1 was updated.  Throws if the model
// is not dynamic.
std::vector<bool> sample_updates(const LibraryModel& model, std::uint64_t seed);

// The correlation ensemble of p restricted to a packet universe: p itself
// plus every universe packet correlated with p.  The universe is given as a
// sorted, unique vector of keys; the result is sorted by key.
std::vector<PacketRef> ensemble(const PacketRef& p, const std::vector<PacketKey>& universe,
                                const LibraryModel& model);

}  // namespace cacm
