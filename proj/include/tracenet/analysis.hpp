// Ranked-list similarity and superspreader stability across accumulated
// weekly windows.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tracenet/centrality.hpp"
#include "tracenet/contact.hpp"
#include "tracenet/trajectory.hpp"

namespace tracenet {

// Extrapolated rank-biased overlap at evaluation depth d = min(|a|, |b|):
//   RBO = (1-p) * sum_{i=1..d} p^(i-1) * A_i  +  p^d * A_d
// with A_i the fraction of agreement between the two top-i prefixes. The
// accumulation tracks disagreement (1 - A_i), so identical lists score
// exactly 1. Throws if either list is empty, contains duplicates, or p is
// outside (0, 1). Result is clamped to [0, 1].
double rbo(std::span<const std::string> list_a, std::span<const std::string> list_b, double p);

struct SimilarityMatrix {
  std::vector<std::string> labels;            // one per accumulated window
  std::vector<std::vector<double>> values;    // symmetric, unit diagonal
};

// For each N in 1..weeks, builds the hybrid contact graph over the first N
// calendar weeks of the trajectory store (7-day windows aligned to the first
// midnight), ranks vertices by `measure`, keeps the top k, and fills the
// matrix with pairwise RBO scores. Throws when the store spans fewer than
// `weeks` weeks.
SimilarityMatrix accumulated_week_matrix(std::span<const Trajectory> store, uint32_t weeks,
                                         Measure measure, uint32_t k,
                                         const ContactConfig& cfg, double p);

// Tracklets from `store` whose arrival lies in [start, end), with stays
// clipped at the window end. Persons left with no tracklets are dropped.
std::vector<Trajectory> clip_window(std::span<const Trajectory> store, int64_t start,
                                    int64_t end);

}  // namespace tracenet
