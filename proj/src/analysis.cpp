#include "tracenet/analysis.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "tracenet/util.hpp"

namespace tracenet {

double rbo(std::span<const std::string> list_a, std::span<const std::string> list_b, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("rbo: p must be in (0,1)");
  if (list_a.empty() || list_b.empty()) throw std::invalid_argument("rbo: empty ranked list");

  auto check_unique = [](std::span<const std::string> l) {
    std::unordered_set<std::string_view> seen;
    for (const auto& s : l)
      if (!seen.insert(s).second)
        throw std::invalid_argument("rbo: duplicate id in ranked list: " + s);
  };
  check_unique(list_a);
  check_unique(list_b);

  const size_t depth = std::min(list_a.size(), list_b.size());

  // Incremental prefix intersection: overlap grows by whether each side's
  // next element was already seen on the other side (or they match).
  std::unordered_set<std::string_view> pending;  // elements seen on one side only
  size_t overlap = 0;
  double weight = 1.0;       // p^(i-1)
  double disagreement = 0.0; // sum of p^(i-1) * (1 - A_i)
  double a_last = 1.0;
  for (size_t i = 1; i <= depth; ++i) {
    const std::string& x = list_a[i - 1];
    const std::string& y = list_b[i - 1];
    if (x == y) {
      ++overlap;
    } else {
      if (pending.erase(x) == 1)
        ++overlap;
      else
        pending.insert(x);
      if (pending.erase(y) == 1)
        ++overlap;
      else
        pending.insert(y);
    }
    a_last = static_cast<double>(overlap) / static_cast<double>(i);
    disagreement += weight * (1.0 - a_last);
    weight *= p;
  }
  // (1-p) * sum p^(i-1) A_i + p^d A_d  ==  1 - [(1-p) * sum p^(i-1)(1-A_i) + p^d (1-A_d)]
  double score = 1.0 - ((1.0 - p) * disagreement + weight * (1.0 - a_last));
  return std::clamp(score, 0.0, 1.0);
}

std::vector<Trajectory> clip_window(std::span<const Trajectory> store, int64_t start,
                                    int64_t end) {
  std::vector<Trajectory> out;
  out.reserve(store.size());
  for (const auto& t : store) {
    Trajectory clipped;
    clipped.person_id = t.person_id;
    for (const auto& tk : t.tracklets) {
      if (tk.arrival < start || tk.arrival >= end) continue;
      Tracklet c = tk;
      c.stay = std::min(c.stay, end - c.arrival);
      clipped.tracklets.push_back(c);
    }
    if (!clipped.tracklets.empty()) out.push_back(std::move(clipped));
  }
  return out;
}

SimilarityMatrix accumulated_week_matrix(std::span<const Trajectory> store, uint32_t weeks,
                                         Measure measure, uint32_t k, const ContactConfig& cfg,
                                         double p) {
  if (weeks < 1) throw std::invalid_argument("accumulated_week_matrix: weeks must be >= 1");
  if (store.empty()) throw std::invalid_argument("accumulated_week_matrix: empty store");

  int64_t first = INT64_MAX, last = INT64_MIN;
  for (const auto& t : store) {
    for (const auto& tk : t.tracklets) {
      first = std::min(first, tk.arrival);
      last = std::max(last, tk.arrival);
    }
  }
  const int64_t origin = floor_day(first);
  const auto available =
      static_cast<uint32_t>((last - origin) / kSecondsPerWeek + 1);
  if (available < weeks)
    throw std::runtime_error("trajectory store spans " + std::to_string(available) +
                             " week(s), need " + std::to_string(weeks));

  // Top-k list per accumulated window 1..weeks; windows are independent.
  std::vector<std::vector<std::string>> lists(weeks);
  parallel_blocks(weeks, 1, [&](size_t, size_t lo, size_t hi) {
    for (size_t w = lo; w < hi; ++w) {
      auto clipped = clip_window(store, origin, origin + static_cast<int64_t>(w + 1) * kSecondsPerWeek);
      ContactGraph hybrid = build_graph(clipped, cfg, GraphMode::Hybrid);
      auto scores = compute_centrality(hybrid, measure);
      lists[w] = top_k(hybrid, scores, std::min<size_t>(k, hybrid.num_vertices()));
    }
  });

  SimilarityMatrix m;
  m.labels.reserve(weeks);
  for (uint32_t w = 1; w <= weeks; ++w) m.labels.push_back("weeks_1_to_" + std::to_string(w));
  m.values.assign(weeks, std::vector<double>(weeks, 0.0));
  for (uint32_t a = 0; a < weeks; ++a) {
    m.values[a][a] = rbo(lists[a], lists[a], p);  // exactly 1 by construction
    for (uint32_t b = a + 1; b < weeks; ++b) {
      double v = rbo(lists[a], lists[b], p);
      m.values[a][b] = v;
      m.values[b][a] = v;  // computed once, mirrored: symmetry is exact
    }
  }
  return m;
}

}  // namespace tracenet
