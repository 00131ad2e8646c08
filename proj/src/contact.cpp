#include "tracenet/contact.hpp"

#include <algorithm>
#include <stdexcept>

#include "tracenet/util.hpp"

namespace tracenet {

void ContactConfig::validate() const {
  if (d_sym <= 0 || d_env <= 0 || d_asym <= 0)
    throw std::invalid_argument("contact durations must be positive");
  if (d_asym > d_sym)
    throw std::invalid_argument("d_asym must not exceed d_sym");
}

int64_t overlap_duration(int64_t t_q, int64_t st_q, int64_t t_p, int64_t st_p) {
  return st_q + st_p - std::max(t_q + st_q, t_p + st_p) + std::min(t_q, t_p);
}

int64_t env_overlap_duration(int64_t t_q, int64_t st_q, int64_t t_p, int64_t st_p,
                             int64_t d_env) {
  return (st_q - d_env) + st_p - std::max(t_q + st_q, t_p + st_p) + std::min(t_q + d_env, t_p);
}

ContactGraph::ContactGraph(std::vector<std::string> persons_sorted, std::vector<Arc> arcs,
                           GraphMode mode)
    : persons_(std::move(persons_sorted)), arcs_(std::move(arcs)), mode_(mode) {
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  const uint32_t n = static_cast<uint32_t>(persons_.size());
  offsets_.assign(n + 1, 0);
  targets_.resize(arcs_.size());
  for (const Arc& a : arcs_) {
    if (a.src >= n || a.dst >= n) throw std::invalid_argument("arc endpoint out of range");
    if (a.src == a.dst) throw std::invalid_argument("self-arcs are not allowed");
    ++offsets_[a.src + 1];
  }
  for (uint32_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  for (size_t k = 0; k < arcs_.size(); ++k) targets_[k] = arcs_[k].dst;
}

std::optional<uint32_t> ContactGraph::index_of(std::string_view person_id) const {
  auto it = std::lower_bound(persons_.begin(), persons_.end(), person_id);
  if (it == persons_.end() || *it != person_id) return std::nullopt;
  return static_cast<uint32_t>(it - persons_.begin());
}

std::span<const uint32_t> ContactGraph::out_neighbors(uint32_t v) const {
  return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
}

size_t ContactGraph::count_kind(uint8_t kind_bit) const {
  size_t c = 0;
  for (const Arc& a : arcs_)
    if (a.kinds & kind_bit) ++c;
  return c;
}

namespace {

struct IndexedTracklet {
  int64_t arrival;
  int64_t stay;
  uint32_t person;
};

// Tracklets grouped per AP and sorted by arrival; buckets are processed
// independently and results merged afterwards, so the arc set is the same at
// any thread count.
struct ApIndex {
  std::vector<std::string> persons;                    // sorted person ids
  std::vector<std::vector<IndexedTracklet>> buckets;   // indexed by ap bucket
};

ApIndex build_index(std::span<const Trajectory> trajectories) {
  ApIndex idx;
  idx.persons.reserve(trajectories.size());
  for (const auto& t : trajectories) idx.persons.push_back(t.person_id);
  std::sort(idx.persons.begin(), idx.persons.end());
  idx.persons.erase(std::unique(idx.persons.begin(), idx.persons.end()), idx.persons.end());

  uint32_t max_ap = 0;
  for (const auto& t : trajectories)
    for (const auto& tk : t.tracklets) max_ap = std::max(max_ap, tk.ap_id);
  idx.buckets.resize(trajectories.empty() ? 0 : max_ap + 1);

  for (const auto& t : trajectories) {
    auto it = std::lower_bound(idx.persons.begin(), idx.persons.end(), t.person_id);
    uint32_t pid = static_cast<uint32_t>(it - idx.persons.begin());
    for (const auto& tk : t.tracklets)
      idx.buckets[tk.ap_id].push_back({tk.arrival, tk.stay, pid});
  }
  for (auto& b : idx.buckets)
    std::sort(b.begin(), b.end(), [](const IndexedTracklet& a, const IndexedTracklet& b2) {
      return a.arrival != b2.arrival ? a.arrival < b2.arrival
             : a.person != b2.person ? a.person < b2.person
                                     : a.stay < b2.stay;
    });
  return idx;
}

using Pair = std::pair<uint32_t, uint32_t>;

// Enumerates each co-located tracklet pair with touching-or-overlapping
// intervals exactly once per bucket sweep and lets `emit` decide arcs.
template <typename Emit>
void sweep_bucket(const std::vector<IndexedTracklet>& bucket, Emit&& emit) {
  for (size_t i = 0; i < bucket.size(); ++i) {
    const auto& a = bucket[i];
    const int64_t a_end = a.arrival + a.stay;
    for (size_t j = i + 1; j < bucket.size(); ++j) {
      const auto& b = bucket[j];
      if (b.arrival > a_end) break;  // later starts cannot overlap a
      if (a.person == b.person) continue;
      emit(a, b);
    }
  }
}

std::vector<Pair> dedup(std::vector<Pair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::vector<Pair> collect_pairs(const ApIndex& idx,
                                const std::function<void(const std::vector<IndexedTracklet>&,
                                                         std::vector<Pair>&)>& per_bucket) {
  std::vector<std::vector<Pair>> partial(idx.buckets.size());
  parallel_blocks(idx.buckets.size(), 8, [&](size_t, size_t lo, size_t hi) {
    for (size_t b = lo; b < hi; ++b) per_bucket(idx.buckets[b], partial[b]);
  });
  std::vector<Pair> all;
  size_t total = 0;
  for (const auto& p : partial) total += p.size();
  all.reserve(total);
  for (const auto& p : partial) all.insert(all.end(), p.begin(), p.end());
  return dedup(std::move(all));
}

}  // namespace

ContactGraph symmetric_graph(std::span<const Trajectory> trajectories, const ContactConfig& cfg) {
  ApIndex idx = build_index(trajectories);
  auto pairs = collect_pairs(idx, [&](const std::vector<IndexedTracklet>& bucket,
                                      std::vector<Pair>& out) {
    sweep_bucket(bucket, [&](const IndexedTracklet& a, const IndexedTracklet& b) {
      if (overlap_duration(a.arrival, a.stay, b.arrival, b.stay) >= cfg.d_sym) {
        out.emplace_back(a.person, b.person);
        out.emplace_back(b.person, a.person);
      }
    });
  });
  std::vector<Arc> arcs;
  arcs.reserve(pairs.size());
  for (const auto& [s, d] : pairs) arcs.push_back({s, d, kArcSymmetric});
  return ContactGraph(std::move(idx.persons), std::move(arcs), GraphMode::Symmetric);
}

ContactGraph asymmetric_graph(std::span<const Trajectory> trajectories, const ContactConfig& cfg) {
  ApIndex idx = build_index(trajectories);
  auto pairs = collect_pairs(idx, [&](const std::vector<IndexedTracklet>& bucket,
                                      std::vector<Pair>& out) {
    sweep_bucket(bucket, [&](const IndexedTracklet& a, const IndexedTracklet& b) {
      // Either side can be the environmental source.
      if (a.stay >= cfg.d_env &&
          env_overlap_duration(a.arrival, a.stay, b.arrival, b.stay, cfg.d_env) >= cfg.d_asym)
        out.emplace_back(a.person, b.person);
      if (b.stay >= cfg.d_env &&
          env_overlap_duration(b.arrival, b.stay, a.arrival, a.stay, cfg.d_env) >= cfg.d_asym)
        out.emplace_back(b.person, a.person);
    });
  });
  std::vector<Arc> arcs;
  arcs.reserve(pairs.size());
  for (const auto& [s, d] : pairs) arcs.push_back({s, d, kArcAsymmetric});
  return ContactGraph(std::move(idx.persons), std::move(arcs), GraphMode::Asymmetric);
}

ContactGraph merge_graphs(const ContactGraph& sym, const ContactGraph& asym) {
  // Vertex set: union of person ids; arc kind tags are OR-ed per (src, dst).
  std::vector<std::string> persons;
  persons.reserve(sym.num_vertices() + asym.num_vertices());
  persons.insert(persons.end(), sym.persons().begin(), sym.persons().end());
  persons.insert(persons.end(), asym.persons().begin(), asym.persons().end());
  std::sort(persons.begin(), persons.end());
  persons.erase(std::unique(persons.begin(), persons.end()), persons.end());

  auto remap = [&](const ContactGraph& g) {
    std::vector<uint32_t> map(g.num_vertices());
    for (uint32_t v = 0; v < g.num_vertices(); ++v) {
      auto it = std::lower_bound(persons.begin(), persons.end(), g.person(v));
      map[v] = static_cast<uint32_t>(it - persons.begin());
    }
    return map;
  };
  auto sym_map = remap(sym);
  auto asym_map = remap(asym);

  std::vector<Arc> arcs;
  arcs.reserve(sym.num_arcs() + asym.num_arcs());
  for (const Arc& a : sym.arcs()) arcs.push_back({sym_map[a.src], sym_map[a.dst], a.kinds});
  for (const Arc& a : asym.arcs()) arcs.push_back({asym_map[a.src], asym_map[a.dst], a.kinds});
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  std::vector<Arc> merged;
  merged.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (!merged.empty() && merged.back().src == a.src && merged.back().dst == a.dst)
      merged.back().kinds |= a.kinds;
    else
      merged.push_back(a);
  }
  return ContactGraph(std::move(persons), std::move(merged), GraphMode::Hybrid);
}

ContactGraph build_graph(std::span<const Trajectory> trajectories, const ContactConfig& cfg,
                         GraphMode mode) {
  switch (mode) {
    case GraphMode::Symmetric:
      return symmetric_graph(trajectories, cfg);
    case GraphMode::Asymmetric:
      return asymmetric_graph(trajectories, cfg);
    case GraphMode::Hybrid:
      return merge_graphs(symmetric_graph(trajectories, cfg), asymmetric_graph(trajectories, cfg));
  }
  throw std::logic_error("unreachable");
}

}  // namespace tracenet
