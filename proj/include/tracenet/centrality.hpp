// Vertex centrality scoring over contact graphs, plus ranked candidate
// selection. All measures treat the graph as directed with unit arc lengths
// and ignore arc kind tags.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tracenet/contact.hpp"

namespace tracenet {

enum class Measure : uint8_t { Degree, Closeness, Betweenness };

const char* measure_name(Measure m);
Measure measure_from_name(std::string_view name);  // throws on unknown

struct CentralityScores {
  Measure measure;
  std::vector<double> scores;      // indexed by vertex
  std::vector<uint32_t> ranking;   // vertices by score desc, person_id asc on ties
};

// deg(u) = |out-arcs of u| / (N - 1).
CentralityScores degree_centrality(const ContactGraph& g);

// Reachable-set rescaled closeness for possibly disconnected digraphs:
//   cl(u) = (r / (N-1)) * (r / sum of distances to the r reachable vertices)
// and 0 when nothing is reachable. On a strongly connected graph this is a
// positive multiple of 1 / sum(dist), so it preserves the classic ranking.
CentralityScores closeness_centrality(const ContactGraph& g);

// Unnormalized betweenness over ordered pairs (s, t), endpoints excluded:
//   bw(u) = sum over s != t != u of sigma(s,t|u) / sigma(s,t)
// computed by Brandes' dependency accumulation over single-source BFS trees.
CentralityScores betweenness_centrality(const ContactGraph& g);

CentralityScores compute_centrality(const ContactGraph& g, Measure m);

// First k ranked person ids.
std::vector<std::string> top_k(const ContactGraph& g, const CentralityScores& s, size_t k);

}  // namespace tracenet
