// Shared run configuration: one JSON file carries every tunable of the
// pipeline. Missing keys fall back to defaults; unknown keys and ill-typed
// values are errors that name the offending field. The hash of the
// effective config is embedded in every artifact.
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tracenet/contact.hpp"
#include "tracenet/seir.hpp"
#include "tracenet/synth.hpp"
#include "tracenet/trajectory.hpp"

namespace tracenet {

struct RunConfig {
  uint64_t seed = 20150302;

  std::set<std::string> ssid_drop;  // ingest: SSIDs to discard

  // trajectory
  int64_t session_timeout = 3600;
  int64_t max_terminal_stay = 7200;
  int64_t default_walk = 300;

  ContactConfig contact;
  SeirParams seir;  // seir.seed is ignored; RunConfig.seed feeds every stage

  // harness
  uint32_t quarantine_k = 100;
  std::vector<double> sweep_infected_fracs = {5, 10, 15, 20};
  std::vector<double> sweep_quarantine_fracs = {0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  double turning_threshold = 1.5;  // T-Inf percentage points per extra 5% quarantine
  std::string sweep_measure = "betweenness";

  // analysis
  double rbo_p = 0.9;
  uint32_t stability_weeks = 0;  // 0: use every available week

  CampusSpec synth;

  // pipeline
  uint32_t pipeline_daily_day = 0;  // day offset of the single-day graphs

  static RunConfig defaults() { return {}; }
  // Reads JSON, applying defaults for absent keys. Collects the names of
  // defaulted keys when `defaulted` is non-null.
  static RunConfig load(const std::string& path, std::vector<std::string>* defaulted = nullptr);
  static RunConfig from_json(const nlohmann::json& j, std::vector<std::string>* defaulted);

  nlohmann::json to_json() const;
  std::string canonical_dump() const;
  uint64_t hash() const;

  void validate() const;
};

}  // namespace tracenet
