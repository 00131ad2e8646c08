// Trajectory construction: per-person time-sorted association events become
// sequences of (AP, arrival, stay) tracklets. Stay time of a tracklet is the
// gap to the next arrival, minus inter-building walking time when buildings
// differ, clamped at zero. The final tracklet of a window is capped.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tracenet/wlan_log.hpp"

namespace tracenet {

struct Tracklet {
  uint32_t ap_id = 0;
  int64_t arrival = 0;
  int64_t stay = 0;  // >= 0
  int64_t departure() const { return arrival + stay; }
};

struct Trajectory {
  std::string person_id;
  std::vector<Tracklet> tracklets;  // strictly increasing arrivals
};

// Symmetric walking-time lookup between buildings, with a fallback for pairs
// missing from the matrix file. Same-building moves cost nothing.
class WalkTimeMatrix {
 public:
  // CSV with header "building_a,building_b,seconds".
  static WalkTimeMatrix load(const std::string& path, int64_t default_walk);

  explicit WalkTimeMatrix(int64_t default_walk = 300) : default_walk_(default_walk) {}

  void set(const std::string& a, const std::string& b, int64_t seconds);
  int64_t walk(const std::string& a, const std::string& b) const;
  int64_t default_walk() const { return default_walk_; }
  size_t size() const { return entries_.size(); }
  void save(const std::string& path) const;

 private:
  // key: pair ordered lexicographically
  std::vector<std::pair<std::pair<std::string, std::string>, int64_t>> entries_;
  int64_t default_walk_;
};

struct TrajectoryParams {
  int64_t session_timeout = 3600;     // same-AP re-associations within this merge
  int64_t max_terminal_stay = 7200;   // cap on the last open-ended tracklet
  int64_t window_start = 0;           // events outside [start, end) are ignored
  int64_t window_end = INT64_MAX;
};

// Stay assigned to the last event of a window: min(cutoff - t_last, cap).
int64_t terminal_stay(int64_t t_last, int64_t cutoff, int64_t max_terminal_stay);

// One trajectory per person_id, sorted by person_id. Entries must already be
// validated (every ap_name resolvable). Order of the input is irrelevant.
std::vector<Trajectory> build_trajectories(std::span<const LogEntry> entries,
                                           const ApDirectory& dir,
                                           const WalkTimeMatrix& walk,
                                           const TrajectoryParams& params);

}  // namespace tracenet
