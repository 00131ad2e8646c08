#include "tracenet/config.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tracenet/centrality.hpp"
#include "tracenet/util.hpp"

namespace tracenet {

namespace {

using nlohmann::json;

// Typed field extraction with error messages that name the field.
template <typename T>
void get_field(const json& obj, const std::string& scope, const char* key, T& out,
               std::vector<std::string>* defaulted) {
  if (!obj.contains(key)) {
    if (defaulted) defaulted->push_back(scope + key);
    return;
  }
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::runtime_error("config field '" + scope + key + "' has the wrong type");
  }
}

void check_known(const json& obj, const std::string& scope,
                 std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw std::runtime_error("unknown config field '" + scope + it.key() + "'");
  }
}

}  // namespace

RunConfig RunConfig::from_json(const json& j, std::vector<std::string>* defaulted) {
  RunConfig cfg;
  if (!j.is_object()) throw std::runtime_error("config root must be a JSON object");
  check_known(j, "", {"seed", "ingest", "trajectory", "contact", "seir", "harness", "analysis",
                      "synth", "pipeline"});
  get_field(j, "", "seed", cfg.seed, defaulted);

  if (j.contains("ingest")) {
    const auto& o = j.at("ingest");
    check_known(o, "ingest.", {"ssid_drop"});
    std::vector<std::string> drop;
    get_field(o, "ingest.", "ssid_drop", drop, defaulted);
    cfg.ssid_drop = {drop.begin(), drop.end()};
  } else if (defaulted) {
    defaulted->push_back("ingest");
  }

  if (j.contains("trajectory")) {
    const auto& o = j.at("trajectory");
    check_known(o, "trajectory.", {"session_timeout", "max_terminal_stay", "default_walk"});
    get_field(o, "trajectory.", "session_timeout", cfg.session_timeout, defaulted);
    get_field(o, "trajectory.", "max_terminal_stay", cfg.max_terminal_stay, defaulted);
    get_field(o, "trajectory.", "default_walk", cfg.default_walk, defaulted);
  } else if (defaulted) {
    defaulted->push_back("trajectory");
  }

  if (j.contains("contact")) {
    const auto& o = j.at("contact");
    check_known(o, "contact.", {"d_sym", "d_env", "d_asym"});
    get_field(o, "contact.", "d_sym", cfg.contact.d_sym, defaulted);
    get_field(o, "contact.", "d_env", cfg.contact.d_env, defaulted);
    get_field(o, "contact.", "d_asym", cfg.contact.d_asym, defaulted);
  } else if (defaulted) {
    defaulted->push_back("contact");
  }

  if (j.contains("seir")) {
    const auto& o = j.at("seir");
    check_known(o, "seir.", {"beta", "sigma", "gamma", "initial_infected", "max_days", "runs"});
    get_field(o, "seir.", "beta", cfg.seir.beta, defaulted);
    get_field(o, "seir.", "sigma", cfg.seir.sigma, defaulted);
    get_field(o, "seir.", "gamma", cfg.seir.gamma, defaulted);
    get_field(o, "seir.", "initial_infected", cfg.seir.initial_infected, defaulted);
    get_field(o, "seir.", "max_days", cfg.seir.max_days, defaulted);
    get_field(o, "seir.", "runs", cfg.seir.runs, defaulted);
  } else if (defaulted) {
    defaulted->push_back("seir");
  }

  if (j.contains("harness")) {
    const auto& o = j.at("harness");
    check_known(o, "harness.",
                {"k", "sweep_infected_fracs", "sweep_quarantine_fracs", "turning_threshold",
                 "sweep_measure"});
    get_field(o, "harness.", "k", cfg.quarantine_k, defaulted);
    get_field(o, "harness.", "sweep_infected_fracs", cfg.sweep_infected_fracs, defaulted);
    get_field(o, "harness.", "sweep_quarantine_fracs", cfg.sweep_quarantine_fracs, defaulted);
    get_field(o, "harness.", "turning_threshold", cfg.turning_threshold, defaulted);
    get_field(o, "harness.", "sweep_measure", cfg.sweep_measure, defaulted);
  } else if (defaulted) {
    defaulted->push_back("harness");
  }

  if (j.contains("analysis")) {
    const auto& o = j.at("analysis");
    check_known(o, "analysis.", {"rbo_p", "stability_weeks"});
    get_field(o, "analysis.", "rbo_p", cfg.rbo_p, defaulted);
    get_field(o, "analysis.", "stability_weeks", cfg.stability_weeks, defaulted);
  } else if (defaulted) {
    defaulted->push_back("analysis");
  }

  if (j.contains("synth")) {
    const auto& o = j.at("synth");
    check_known(o, "synth.",
                {"n_students", "weeks", "hub_spreaders", "env_spreaders", "n_class_buildings",
                 "aps_per_class_building", "n_library_aps", "n_dining_aps", "n_desk_aps",
                 "dorm_buildings", "dorm_residents_per_ap", "class_size", "min_weekly_blocks",
                 "max_weekly_blocks", "dining_prob", "library_prob", "errand_prob",
                 "weekend_outing_prob", "reassoc_prob", "noise_failure_prob",
                 "noise_invalid_prob", "noise_guest_prob", "start_time", "ssid"});
    auto& s = cfg.synth;
    get_field(o, "synth.", "n_students", s.n_students, defaulted);
    get_field(o, "synth.", "weeks", s.weeks, defaulted);
    get_field(o, "synth.", "hub_spreaders", s.hub_spreaders, defaulted);
    get_field(o, "synth.", "env_spreaders", s.env_spreaders, defaulted);
    get_field(o, "synth.", "n_class_buildings", s.n_class_buildings, defaulted);
    get_field(o, "synth.", "aps_per_class_building", s.aps_per_class_building, defaulted);
    get_field(o, "synth.", "n_library_aps", s.n_library_aps, defaulted);
    get_field(o, "synth.", "n_dining_aps", s.n_dining_aps, defaulted);
    get_field(o, "synth.", "n_desk_aps", s.n_desk_aps, defaulted);
    get_field(o, "synth.", "dorm_buildings", s.dorm_buildings, defaulted);
    get_field(o, "synth.", "dorm_residents_per_ap", s.dorm_residents_per_ap, defaulted);
    get_field(o, "synth.", "class_size", s.class_size, defaulted);
    get_field(o, "synth.", "min_weekly_blocks", s.min_weekly_blocks, defaulted);
    get_field(o, "synth.", "max_weekly_blocks", s.max_weekly_blocks, defaulted);
    get_field(o, "synth.", "dining_prob", s.dining_prob, defaulted);
    get_field(o, "synth.", "library_prob", s.library_prob, defaulted);
    get_field(o, "synth.", "errand_prob", s.errand_prob, defaulted);
    get_field(o, "synth.", "weekend_outing_prob", s.weekend_outing_prob, defaulted);
    get_field(o, "synth.", "reassoc_prob", s.reassoc_prob, defaulted);
    get_field(o, "synth.", "noise_failure_prob", s.noise_failure_prob, defaulted);
    get_field(o, "synth.", "noise_invalid_prob", s.noise_invalid_prob, defaulted);
    get_field(o, "synth.", "noise_guest_prob", s.noise_guest_prob, defaulted);
    get_field(o, "synth.", "start_time", s.start_time, defaulted);
    get_field(o, "synth.", "ssid", s.ssid, defaulted);
  } else if (defaulted) {
    defaulted->push_back("synth");
  }

  if (j.contains("pipeline")) {
    const auto& o = j.at("pipeline");
    check_known(o, "pipeline.", {"daily_day"});
    get_field(o, "pipeline.", "daily_day", cfg.pipeline_daily_day, defaulted);
  } else if (defaulted) {
    defaulted->push_back("pipeline");
  }

  cfg.synth.seed = cfg.seed;
  return cfg;
}

RunConfig RunConfig::load(const std::string& path, std::vector<std::string>* defaulted) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
  return from_json(j, defaulted);
}

nlohmann::json RunConfig::to_json() const {
  json j;
  j["seed"] = seed;
  j["ingest"]["ssid_drop"] = std::vector<std::string>(ssid_drop.begin(), ssid_drop.end());
  j["trajectory"] = {{"session_timeout", session_timeout},
                     {"max_terminal_stay", max_terminal_stay},
                     {"default_walk", default_walk}};
  j["contact"] = {{"d_sym", contact.d_sym}, {"d_env", contact.d_env}, {"d_asym", contact.d_asym}};
  j["seir"] = {{"beta", seir.beta},
               {"sigma", seir.sigma},
               {"gamma", seir.gamma},
               {"initial_infected", seir.initial_infected},
               {"max_days", seir.max_days},
               {"runs", seir.runs}};
  j["harness"] = {{"k", quarantine_k},
                  {"sweep_infected_fracs", sweep_infected_fracs},
                  {"sweep_quarantine_fracs", sweep_quarantine_fracs},
                  {"turning_threshold", turning_threshold},
                  {"sweep_measure", sweep_measure}};
  j["analysis"] = {{"rbo_p", rbo_p}, {"stability_weeks", stability_weeks}};
  j["synth"] = {{"n_students", synth.n_students},
                {"weeks", synth.weeks},
                {"hub_spreaders", synth.hub_spreaders},
                {"env_spreaders", synth.env_spreaders},
                {"n_class_buildings", synth.n_class_buildings},
                {"aps_per_class_building", synth.aps_per_class_building},
                {"n_library_aps", synth.n_library_aps},
                {"n_dining_aps", synth.n_dining_aps},
                {"n_desk_aps", synth.n_desk_aps},
                {"dorm_buildings", synth.dorm_buildings},
                {"dorm_residents_per_ap", synth.dorm_residents_per_ap},
                {"class_size", synth.class_size},
                {"min_weekly_blocks", synth.min_weekly_blocks},
                {"max_weekly_blocks", synth.max_weekly_blocks},
                {"dining_prob", synth.dining_prob},
                {"library_prob", synth.library_prob},
                {"errand_prob", synth.errand_prob},
                {"weekend_outing_prob", synth.weekend_outing_prob},
                {"reassoc_prob", synth.reassoc_prob},
                {"noise_failure_prob", synth.noise_failure_prob},
                {"noise_invalid_prob", synth.noise_invalid_prob},
                {"noise_guest_prob", synth.noise_guest_prob},
                {"start_time", synth.start_time},
                {"ssid", synth.ssid}};
  j["pipeline"] = {{"daily_day", pipeline_daily_day}};
  return j;
}

std::string RunConfig::canonical_dump() const { return to_json().dump(); }

uint64_t RunConfig::hash() const { return fnv1a64(canonical_dump()); }

void RunConfig::validate() const {
  contact.validate();
  seir.validate();
  if (!(rbo_p > 0.0 && rbo_p < 1.0))
    throw std::runtime_error("config field 'analysis.rbo_p' must be in (0,1)");
  if (session_timeout < 0 || max_terminal_stay < 0 || default_walk < 0)
    throw std::runtime_error("config field 'trajectory.*' durations must be non-negative");
  if (turning_threshold <= 0)
    throw std::runtime_error("config field 'harness.turning_threshold' must be positive");
  measure_from_name(sweep_measure);
  synth.validate();
}

}  // namespace tracenet
