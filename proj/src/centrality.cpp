#include "tracenet/centrality.hpp"

#include <algorithm>
#include <stdexcept>

#include "tracenet/util.hpp"

namespace tracenet {

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::Degree: return "degree";
    case Measure::Closeness: return "closeness";
    case Measure::Betweenness: return "betweenness";
  }
  return "?";
}

Measure measure_from_name(std::string_view name) {
  if (name == "degree") return Measure::Degree;
  if (name == "closeness") return Measure::Closeness;
  if (name == "betweenness") return Measure::Betweenness;
  throw std::invalid_argument("unknown centrality measure: " + std::string(name));
}

namespace {

void require_population(const ContactGraph& g) {
  if (g.num_vertices() < 2)
    throw std::invalid_argument("centrality requires at least 2 vertices");
}

// Vertex indices already follow ascending person_id, so the index itself is
// the documented tie-break.
std::vector<uint32_t> rank_by_score(const std::vector<double>& scores) {
  std::vector<uint32_t> order(scores.size());
  for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return order;
}

}  // namespace

CentralityScores degree_centrality(const ContactGraph& g) {
  require_population(g);
  const auto n = static_cast<uint32_t>(g.num_vertices());
  CentralityScores out{Measure::Degree, std::vector<double>(n, 0.0), {}};
  const double denom = static_cast<double>(n - 1);
  for (uint32_t v = 0; v < n; ++v)
    out.scores[v] = static_cast<double>(g.out_neighbors(v).size()) / denom;
  out.ranking = rank_by_score(out.scores);
  return out;
}

CentralityScores closeness_centrality(const ContactGraph& g) {
  require_population(g);
  const auto n = static_cast<uint32_t>(g.num_vertices());
  CentralityScores out{Measure::Closeness, std::vector<double>(n, 0.0), {}};
  const double denom = static_cast<double>(n - 1);

  parallel_blocks(n, 64, [&](size_t, size_t lo, size_t hi) {
    std::vector<int64_t> dist(n);
    std::vector<uint32_t> queue(n);
    for (size_t s = lo; s < hi; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      size_t head = 0, tail = 0;
      dist[s] = 0;
      queue[tail++] = static_cast<uint32_t>(s);
      int64_t dist_sum = 0;
      uint32_t reached = 0;
      while (head < tail) {
        uint32_t u = queue[head++];
        for (uint32_t w : g.out_neighbors(u)) {
          if (dist[w] >= 0) continue;
          dist[w] = dist[u] + 1;
          dist_sum += dist[w];
          ++reached;
          queue[tail++] = w;
        }
      }
      if (reached > 0)
        out.scores[s] = (reached / denom) * (static_cast<double>(reached) / dist_sum);
    }
  });
  out.ranking = rank_by_score(out.scores);
  return out;
}

CentralityScores betweenness_centrality(const ContactGraph& g) {
  require_population(g);
  const auto n = static_cast<uint32_t>(g.num_vertices());
  constexpr size_t kBlock = 64;
  const size_t nblocks = (n + kBlock - 1) / kBlock;
  // Per-block partial sums, accumulated in source order within each block and
  // combined in block order: the floating-point result is independent of the
  // thread count.
  std::vector<std::vector<double>> partial(nblocks);

  parallel_blocks(n, kBlock, [&](size_t block, size_t lo, size_t hi) {
    std::vector<double>& acc = partial[block];
    acc.assign(n, 0.0);
    std::vector<uint32_t> order(n);       // BFS visit order
    std::vector<int32_t> dist(n);
    std::vector<double> sigma(n);         // shortest-path counts
    std::vector<double> delta(n);         // dependency accumulation
    std::vector<std::vector<uint32_t>> preds(n);

    for (size_t s = lo; s < hi; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      std::fill(sigma.begin(), sigma.end(), 0.0);
      std::fill(delta.begin(), delta.end(), 0.0);
      for (auto& p : preds) p.clear();

      size_t head = 0, tail = 0;
      dist[s] = 0;
      sigma[s] = 1.0;
      order[tail++] = static_cast<uint32_t>(s);
      while (head < tail) {
        uint32_t u = order[head++];
        for (uint32_t w : g.out_neighbors(u)) {
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            order[tail++] = w;
          }
          if (dist[w] == dist[u] + 1) {
            sigma[w] += sigma[u];
            preds[w].push_back(u);
          }
        }
      }
      // Reverse BFS order: delta[v] = sum over successors w of
      // sigma[v]/sigma[w] * (1 + delta[w]).
      for (size_t k = tail; k-- > 1;) {
        uint32_t w = order[k];
        for (uint32_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        if (w != s) acc[w] += delta[w];
      }
    }
  });

  CentralityScores out{Measure::Betweenness, std::vector<double>(n, 0.0), {}};
  for (size_t b = 0; b < nblocks; ++b)
    if (!partial[b].empty())
      for (uint32_t v = 0; v < n; ++v) out.scores[v] += partial[b][v];
  out.ranking = rank_by_score(out.scores);
  return out;
}

CentralityScores compute_centrality(const ContactGraph& g, Measure m) {
  switch (m) {
    case Measure::Degree: return degree_centrality(g);
    case Measure::Closeness: return closeness_centrality(g);
    case Measure::Betweenness: return betweenness_centrality(g);
  }
  throw std::logic_error("unreachable");
}

std::vector<std::string> top_k(const ContactGraph& g, const CentralityScores& s, size_t k) {
  if (k > g.num_vertices()) throw std::invalid_argument("top_k: k exceeds vertex count");
  std::vector<std::string> out;
  out.reserve(k);
  for (size_t i = 0; i < k; ++i) out.push_back(g.person(s.ranking[i]));
  return out;
}

}  // namespace tracenet
