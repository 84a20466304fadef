// Codeword assembly and symbolic decoding.

#include "cacm/delivery.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace cacm {

namespace {

// Candidate reference packets for a target: every packet that could be
// correlated with it (same index, cluster mates and/or the other version).
std::vector<PacketRef> reference_candidates(const PacketRef& target, const LibraryModel& model) {
  std::vector<PacketRef> out;
  if (model.is_dynamic()) {
    const Version other =
        (target.version == Version::Original) ? Version::Updated : Version::Original;
    out.push_back({target.file, other, target.packet});
  }
  if (target.version == Version::Original) {
    const auto& cluster = model.clusters()[static_cast<std::size_t>(model.cluster_of(target.file))];
    for (int mate : cluster) {
      if (mate != target.file) out.push_back({mate, Version::Original, target.packet});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PacketRef& a, const PacketRef& b) { return packet_key(a) < packet_key(b); });
  return out;
}

// Per-receiver known-packet closure under XOR peeling.  Returns the set of
// packet keys the receiver can reproduce from its cache plus the coded
// segment.
std::unordered_set<PacketKey> peel_closure(const std::vector<Transmission>& transmissions,
                                           const std::vector<PacketKey>& cached) {
  std::unordered_set<PacketKey> known(cached.begin(), cached.end());
  // unknown_count[t] tracks how many constituents of transmission t are still
  // unknown; when it reaches one, the remaining constituent is revealed.
  std::vector<int> unknown_count(transmissions.size(), 0);
  std::unordered_map<PacketKey, std::vector<int>> occurs;
  std::vector<PacketKey> queue;

  for (std::size_t t = 0; t < transmissions.size(); ++t) {
    for (const PacketRef& p : transmissions[t].xored) {
      const PacketKey key = packet_key(p);
      if (known.count(key)) continue;
      ++unknown_count[t];
      occurs[key].push_back(static_cast<int>(t));
    }
  }
  for (std::size_t t = 0; t < transmissions.size(); ++t) {
    if (unknown_count[t] == 1) {
      for (const PacketRef& p : transmissions[t].xored) {
        const PacketKey key = packet_key(p);
        if (!known.count(key)) {
          known.insert(key);
          queue.push_back(key);
          break;
        }
      }
    }
  }
  while (!queue.empty()) {
    const PacketKey key = queue.back();
    queue.pop_back();
    const auto it = occurs.find(key);
    if (it == occurs.end()) continue;
    for (int t : it->second) {
      if (--unknown_count[static_cast<std::size_t>(t)] != 1) continue;
      for (const PacketRef& p : transmissions[static_cast<std::size_t>(t)].xored) {
        const PacketKey pk = packet_key(p);
        if (!known.count(pk)) {
          known.insert(pk);
          queue.push_back(pk);
          break;
        }
      }
    }
  }
  return known;
}

}  // namespace

Codeword assemble_codeword(const ConflictGraph& graph, const GroupColoring& coloring,
                           const CacheConfig& cache, const LibraryModel& model,
                           bool apply_exclusion) {
  const double h = model.packet_entropy();
  Codeword codeword;

  // Coded segment: one XOR per color over the distinct packets of that color
  // class, dropping packets already cached at their own group's receiver.
  std::vector<std::vector<PacketKey>> per_color(static_cast<std::size_t>(coloring.n_colors));
  for (int v = 0; v < static_cast<int>(graph.vertices.size()); ++v) {
    const int c = coloring.color_of[static_cast<std::size_t>(v)];
    if (c < 0) continue;
    const Vertex& vert = graph.vertices[static_cast<std::size_t>(v)];
    if (apply_exclusion && cache.contains(vert.receiver, vert.key)) continue;
    per_color[static_cast<std::size_t>(c)].push_back(vert.key);
  }
  for (auto& keys : per_color) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    if (keys.empty()) continue;
    Transmission t;
    t.xored.reserve(keys.size());
    for (PacketKey key : keys) t.xored.push_back(packet_from_key(key));
    codeword.coded_segment.push_back(std::move(t));
  }

  // Refinement segment.  Deduplicated by (target, reference): a refinement is
  // broadcast, so receivers missing the same target with the same reference
  // share one message.
  std::map<std::pair<PacketKey, PacketKey>, std::size_t> dedup;
  for (int k = 1; k <= graph.n_receivers; ++k) {
    const std::unordered_set<PacketKey> known =
        peel_closure(codeword.coded_segment, cache.packets(k));
    for (int g = 0; g < static_cast<int>(graph.groups.size()); ++g) {
      const Vertex& root = graph.vertices[static_cast<std::size_t>(graph.root_of_group(g))];
      if (root.receiver != k) continue;
      if (known.count(root.key)) continue;  // target obtained directly
      // Best reference the receiver knows: minimal conditional entropy,
      // smallest packet key on ties.
      std::optional<PacketRef> best;
      double best_len = model.packet_entropy();
      for (const PacketRef& cand : reference_candidates(root.packet, model)) {
        if (!known.count(packet_key(cand))) continue;
        const double len = cond_entropy(root.packet, cand, model);
        if (len < best_len - 1e-15) {
          best = cand;
          best_len = len;
        }
      }
      if (best && best_len <= 1e-15) continue;  // zero-entropy: nothing to send
      const PacketKey ref_key = best ? packet_key(*best) : 0u;
      const double length = best ? best_len : h;
      const auto [it, fresh] =
          dedup.try_emplace({root.key, ref_key}, codeword.refinements.size());
      if (fresh) {
        Refinement r;
        r.target = root.packet;
        r.reference = best;
        r.length = length;
        codeword.refinements.push_back(std::move(r));
      }
      auto& receivers = codeword.refinements[it->second].receivers;
      if (receivers.empty() || receivers.back() != k) receivers.push_back(k);
    }
  }

  codeword.total_length = h * static_cast<double>(codeword.coded_segment.size());
  for (const Refinement& r : codeword.refinements) codeword.total_length += r.length;
  return codeword;
}

bool decode_verify(const Codeword& codeword, const CacheConfig& cache,
                   const DemandConfig& demand, const LibraryModel& model) {
  const int K = cache.n_receivers();
  if (demand.targets.size() != static_cast<std::size_t>(K)) return false;
  for (int k = 1; k <= K; ++k) {
    std::unordered_set<PacketKey> known = peel_closure(codeword.coded_segment, cache.packets(k));
    // Refinements and zero-entropy equivalences may unlock further peeling;
    // with refinements applied after the coded closure this single extra pass
    // reaches the fixpoint for the codewords assembled here (references are
    // never XOR constituents of later transmissions).  Iterate to be safe.
    bool progress = true;
    while (progress) {
      progress = false;
      for (const Refinement& r : codeword.refinements) {
        const PacketKey target_key = packet_key(r.target);
        if (known.count(target_key)) continue;
        const bool usable = !r.reference || known.count(packet_key(*r.reference));
        if (usable) {
          known.insert(target_key);
          progress = true;
        }
      }
      for (const PacketRef& target : demand.targets[static_cast<std::size_t>(k - 1)]) {
        const PacketKey target_key = packet_key(target);
        if (known.count(target_key)) continue;
        for (const PacketRef& cand : reference_candidates(target, model)) {
          if (known.count(packet_key(cand)) && cond_entropy(target, cand, model) <= 1e-15) {
            known.insert(target_key);
            progress = true;
            break;
          }
        }
      }
      if (progress) {
        std::vector<PacketKey> snapshot(known.begin(), known.end());
        known = peel_closure(codeword.coded_segment, snapshot);
      }
    }
    for (const PacketRef& target : demand.targets[static_cast<std::size_t>(k - 1)]) {
      if (!known.count(packet_key(target))) return false;
    }
  }
  return true;
}

double rate(const Codeword& codeword, const LibraryModel& model) {
  return codeword.total_length / model.file_entropy();
}

std::string describe(const Codeword& codeword) {
  std::ostringstream out;
  for (const Transmission& t : codeword.coded_segment) {
    out << "XOR";
    for (const PacketRef& p : t.xored) out << ' ' << packet_name(p);
    out << '\n';
  }
  for (const Refinement& r : codeword.refinements) {
    out << "REF";
    for (int k : r.receivers) out << ' ' << k;
    out << ' ' << packet_name(r.target) << "<-"
        << (r.reference ? packet_name(*r.reference) : std::string("none")) << ' ' << r.length
        << '\n';
  }
  return out.str();
}

}  // namespace cacm
