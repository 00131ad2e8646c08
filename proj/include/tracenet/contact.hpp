// Contact graph construction from trajectories.
//
// Two people are in symmetric contact when their tracklets at the same AP
// overlap for at least d_sym seconds; the edge is bidirectional. A person
// whose stay at an AP reaches d_env seconds becomes an environmental source:
// anyone whose tracklet at that AP intersects the source's post-d_env window
// for at least d_asym seconds receives a directed (asymmetric) arc from the
// source. The hybrid graph is the union of both arc sets over one vertex set.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tracenet/trajectory.hpp"

namespace tracenet {

struct ContactConfig {
  int64_t d_sym = 900;    // symmetric contact duration, seconds
  int64_t d_env = 3000;   // environmental infection time, seconds
  int64_t d_asym = 300;   // asymmetric contact duration, seconds

  // Enforced on user-supplied configs; algorithm entry points accept any
  // values so degenerate settings remain property-testable.
  void validate() const;
};

enum class GraphMode : uint8_t { Symmetric, Asymmetric, Hybrid };

// Arc kind tags; an arc record may carry both.
inline constexpr uint8_t kArcSymmetric = 1;
inline constexpr uint8_t kArcAsymmetric = 2;

struct Arc {
  uint32_t src = 0;
  uint32_t dst = 0;
  uint8_t kinds = 0;
  bool operator==(const Arc&) const = default;
};

// Immutable directed graph over person ids. Vertex indices follow the
// lexicographic order of person ids, arcs are sorted by (src, dst); equal
// inputs therefore serialize identically.
class ContactGraph {
 public:
  ContactGraph(std::vector<std::string> persons_sorted, std::vector<Arc> arcs, GraphMode mode);

  size_t num_vertices() const { return persons_.size(); }
  size_t num_arcs() const { return arcs_.size(); }
  GraphMode mode() const { return mode_; }
  const std::vector<std::string>& persons() const { return persons_; }
  const std::string& person(uint32_t v) const { return persons_[v]; }
  std::span<const Arc> arcs() const { return arcs_; }
  std::optional<uint32_t> index_of(std::string_view person_id) const;

  // CSR over arc targets, kind tags ignored (multiplicity counts once).
  std::span<const uint32_t> out_neighbors(uint32_t v) const;
  const std::vector<uint32_t>& out_offsets() const { return offsets_; }
  const std::vector<uint32_t>& out_targets() const { return targets_; }

  size_t count_kind(uint8_t kind_bit) const;

 private:
  std::vector<std::string> persons_;
  std::vector<Arc> arcs_;
  GraphMode mode_;
  std::vector<uint32_t> offsets_;
  std::vector<uint32_t> targets_;
};

// Left-hand side of the symmetric contact criterion:
//   ST_q + ST_p - max{t_q+ST_q, t_p+ST_p} + min{t_q, t_p}
// Equals the (possibly negative) length of the intersection of the two
// closed stay intervals.
int64_t overlap_duration(int64_t t_q, int64_t st_q, int64_t t_p, int64_t st_p);

// Left-hand side of the asymmetric criterion:
//   (ST_q - d_env) + ST_p - max{t_q+ST_q, t_p+ST_p} + min{t_q + d_env, t_p}
// Equals the length of [t_q+d_env, t_q+ST_q] ∩ [t_p, t_p+ST_p].
int64_t env_overlap_duration(int64_t t_q, int64_t st_q, int64_t t_p, int64_t st_p,
                             int64_t d_env);

ContactGraph symmetric_graph(std::span<const Trajectory> trajectories, const ContactConfig& cfg);
ContactGraph asymmetric_graph(std::span<const Trajectory> trajectories, const ContactConfig& cfg);
ContactGraph merge_graphs(const ContactGraph& sym, const ContactGraph& asym);
ContactGraph build_graph(std::span<const Trajectory> trajectories, const ContactConfig& cfg,
                         GraphMode mode);

}  // namespace tracenet
