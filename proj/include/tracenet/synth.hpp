// Synthetic campus WLAN log generator with weekly-periodic schedules and
// planted superspreaders, for end-to-end validation of the pipeline.
//
// Every student lives at a dorm AP (the last association of each day) and
// follows a fixed weekly class schedule plus random dining, library and
// errand visits. Two planted profiles exist:
//   hub            - sits for hours at busy dining/library APs, collecting
//                    many long (symmetric) overlaps
//   environmental  - sits for hours at service-desk APs visited by a churn
//                    of short errands: each visitor overlaps far less than
//                    d_sym but falls inside the post-d_env window, so the
//                    spreader is only discoverable by asymmetric tracing
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tracenet/trajectory.hpp"
#include "tracenet/wlan_log.hpp"

namespace tracenet {

struct CampusSpec {
  uint32_t n_students = 3748;
  uint32_t weeks = 4;
  uint32_t hub_spreaders = 8;
  uint32_t env_spreaders = 8;

  uint32_t n_class_buildings = 10;
  uint32_t aps_per_class_building = 26;
  uint32_t n_library_aps = 24;
  uint32_t n_dining_aps = 12;
  uint32_t n_desk_aps = 6;
  uint32_t dorm_buildings = 4;
  uint32_t dorm_residents_per_ap = 2;

  uint32_t class_size = 3;            // roster per class block
  uint32_t min_weekly_blocks = 3;     // fixed class blocks per student
  uint32_t max_weekly_blocks = 5;
  double dining_prob = 0.06;          // per meal window, per weekday
  double library_prob = 0.05;         // per weekday
  double errand_prob = 0.22;          // per weekday
  double weekend_outing_prob = 0.10;
  double reassoc_prob = 0.30;         // chance of an extra mid-visit event
  double noise_failure_prob = 0.02;   // failed-auth duplicates
  double noise_invalid_prob = 0.003;  // entries with empty student id
  double noise_guest_prob = 0.003;    // entries at APs absent from the directory

  uint64_t seed = 20150302;
  int64_t start_time = 1425254400;    // Monday 2015-03-02 00:00 UTC
  std::string ssid = "CampusSecure";

  void validate() const;
};

struct CampusData {
  std::vector<std::string> log_lines;  // timestamp-sorted, ready to write
  ApDirectory directory;
  WalkTimeMatrix walk;
  nlohmann::json manifest;  // spreaders, schedules, expected tracklets, stats
};

CampusData generate_campus(const CampusSpec& spec);

// Writes the four sibling artifacts: raw log, manifest JSON, AP directory
// CSV and walking-time CSV.
void write_campus(const CampusData& data, const std::string& log_path,
                  const std::string& manifest_path, const std::string& apdir_path,
                  const std::string& walk_path);

}  // namespace tracenet
