#include "tracenet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tracenet/util.hpp"

namespace tracenet {

namespace {

constexpr uint64_t kSaltGlobal = 0x11;
constexpr uint64_t kSaltStudentDay = 0x22;
constexpr uint64_t kSaltNoise = 0x33;

constexpr int64_t kHour = 3600;
constexpr int64_t kMinute = 60;

// Class slots start at 08:00, 10:00, 12:00, 14:00, 16:00.
constexpr int kSlotsPerDay = 5;
constexpr int64_t slot_start(int slot) { return 8 * kHour + slot * 2 * kHour; }

struct ClassBlock {
  int weekday;  // 0..4
  int slot;     // 0..4
  uint32_t ap;
};

struct Activity {
  uint32_t ap;
  int64_t start;     // intended start, within the day
  int64_t duration;
};

struct Visit {
  uint32_t student;
  uint32_t ap;
  int64_t begin;
  int64_t end;
};

struct RawEvent {
  int64_t t;
  uint32_t student;
  uint32_t ap;
  bool reassoc;
};

std::string student_id(uint32_t idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "s%05u", idx);
  return std::string(buf);
}

std::string student_mac(uint32_t idx) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "02:00:%02x:%02x:%02x:00", (idx >> 16) & 0xff,
                (idx >> 8) & 0xff, idx & 0xff);
  return std::string(buf);
}

}  // namespace

void CampusSpec::validate() const {
  if (n_students < 2) throw std::invalid_argument("synth: n_students must be >= 2");
  if (hub_spreaders + env_spreaders >= n_students)
    throw std::invalid_argument("synth: planted spreaders must be fewer than students");
  if (weeks < 1) throw std::invalid_argument("synth: weeks must be >= 1");
  if (class_size < 2) throw std::invalid_argument("synth: class_size must be >= 2");
  if (min_weekly_blocks < 1 || max_weekly_blocks < min_weekly_blocks ||
      max_weekly_blocks > static_cast<uint32_t>(5 * kSlotsPerDay))
    throw std::invalid_argument("synth: bad weekly block range");
  if (start_time <= 0) throw std::invalid_argument("synth: start_time must be positive");
}

CampusData generate_campus(const CampusSpec& spec) {
  spec.validate();
  CampusData data;

  // --- campus layout -------------------------------------------------------
  struct ApInfo {
    std::string name;
    std::string building;
  };
  std::vector<ApInfo> aps;
  std::vector<std::pair<std::string, std::pair<int, int>>> buildings;  // name -> grid coords

  auto add_building = [&](const std::string& name, int x, int y, uint32_t n_aps,
                          std::vector<uint32_t>* bucket) {
    buildings.push_back({name, {x, y}});
    for (uint32_t i = 0; i < n_aps; ++i) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "AP-%s-%02u", name.c_str(), i + 1);
      if (bucket) bucket->push_back(static_cast<uint32_t>(aps.size()));
      aps.push_back({buf, name});
    }
  };

  std::vector<uint32_t> class_aps, library_aps, dining_aps, desk_aps, dorm_aps;
  for (uint32_t b = 0; b < spec.n_class_buildings; ++b) {
    char name[8];
    std::snprintf(name, sizeof(name), "B%02u", b + 1);
    add_building(name, static_cast<int>(b % 5), static_cast<int>(b / 5), spec.aps_per_class_building,
                 &class_aps);
  }
  add_building("LIB", 5, 0, spec.n_library_aps, &library_aps);
  add_building("DIN", 5, 1, spec.n_dining_aps, &dining_aps);
  add_building("ADM", 5, 2, spec.n_desk_aps, &desk_aps);
  const uint32_t n_dorm_aps =
      (spec.n_students + spec.dorm_residents_per_ap - 1) / spec.dorm_residents_per_ap;
  for (uint32_t b = 0; b < spec.dorm_buildings; ++b) {
    char name[8];
    std::snprintf(name, sizeof(name), "D%u", b + 1);
    uint32_t lo = n_dorm_aps * b / spec.dorm_buildings;
    uint32_t hi = n_dorm_aps * (b + 1) / spec.dorm_buildings;
    add_building(name, static_cast<int>(b), 3, hi - lo, &dorm_aps);
  }

  for (const auto& ap : aps) data.directory.add(ap.name, ap.building);

  data.walk = WalkTimeMatrix(300);
  for (size_t a = 0; a < buildings.size(); ++a) {
    for (size_t b = a + 1; b < buildings.size(); ++b) {
      int dist = std::abs(buildings[a].second.first - buildings[b].second.first) +
                 std::abs(buildings[a].second.second - buildings[b].second.second);
      data.walk.set(buildings[a].first, buildings[b].first, 60 + 45 * dist);
    }
  }

  // --- population ----------------------------------------------------------
  Rng global(derive_seed(spec.seed, kSaltGlobal));

  const uint32_t n = spec.n_students;
  auto planted = global.sample_indices(n, spec.hub_spreaders + spec.env_spreaders);
  std::vector<int> profile(n, 0);  // 0 background, 1 hub, 2 environmental
  std::vector<uint32_t> hubs, envs;
  for (uint32_t i = 0; i < planted.size(); ++i) {
    if (i < spec.hub_spreaders) {
      profile[planted[i]] = 1;
      hubs.push_back(planted[i]);
    } else {
      profile[planted[i]] = 2;
      envs.push_back(planted[i]);
    }
  }

  std::vector<uint32_t> dorm_of(n);
  for (uint32_t s = 0; s < n; ++s) dorm_of[s] = dorm_aps[s / spec.dorm_residents_per_ap];

  // Fixed weekly class blocks. Students queue into (weekday, slot) buckets;
  // each bucket is chunked into rosters of class_size, one AP per roster.
  // Hubs take no classes; environmental spreaders take exactly two (their
  // symmetric footprint must stay small but nonzero).
  std::vector<std::vector<ClassBlock>> blocks(n);
  {
    std::vector<std::vector<uint32_t>> bucket(5 * kSlotsPerDay);
    std::vector<uint32_t> order(n);
    for (uint32_t s = 0; s < n; ++s) order[s] = s;
    global.shuffle(order);
    for (uint32_t s : order) {
      if (profile[s] == 1) continue;
      uint32_t want = profile[s] == 2
                          ? 2
                          : static_cast<uint32_t>(global.range(spec.min_weekly_blocks,
                                                               spec.max_weekly_blocks));
      auto combos = global.sample_indices(5 * kSlotsPerDay, want);
      for (uint32_t c : combos) bucket[c].push_back(s);
    }
    for (uint32_t c = 0; c < bucket.size(); ++c) {
      const int weekday = static_cast<int>(c) / kSlotsPerDay;
      const int slot = static_cast<int>(c) % kSlotsPerDay;
      auto& members = bucket[c];
      const size_t n_rosters = (members.size() + spec.class_size - 1) / spec.class_size;
      if (n_rosters > class_aps.size())
        throw std::runtime_error("synth: not enough classroom APs for the demanded blocks");
      for (size_t r = 0; r < n_rosters; ++r) {
        uint32_t ap = class_aps[r];
        for (size_t m = r * spec.class_size; m < std::min(members.size(), (r + 1) * spec.class_size);
             ++m)
          blocks[members[m]].push_back({weekday, slot, ap});
      }
    }
  }

  // --- per-day itineraries ---------------------------------------------------
  const uint32_t n_days = spec.weeks * 7;
  std::vector<RawEvent> events;
  std::vector<Visit> visits;
  events.reserve(static_cast<size_t>(n) * n_days * 3);

  auto building_of = [&](uint32_t ap) -> const std::string& { return data.directory.building(ap); };

  for (uint32_t s = 0; s < n; ++s) {
    for (uint32_t d = 0; d < n_days; ++d) {
      Rng rng(derive_seed(derive_seed(spec.seed, kSaltStudentDay),
                          (static_cast<uint64_t>(s) << 20) | d));
      const int64_t day0 = spec.start_time + static_cast<int64_t>(d) * kSecondsPerDay;
      const int weekday = static_cast<int>(d % 7);
      const bool is_weekend = weekday >= 5;

      std::vector<Activity> plan;
      if (!is_weekend) {
        for (const auto& blk : blocks[s]) {
          if (blk.weekday != weekday) continue;
          plan.push_back({blk.ap, slot_start(blk.slot) + rng.range(-180, 180),
                          80 * kMinute + rng.range(0, 600)});
        }
      }

      if (profile[s] == 1) {
        // Hub: three long sits at busy venues, rotating APs daily.
        const uint32_t hub_idx =
            static_cast<uint32_t>(std::find(hubs.begin(), hubs.end(), s) - hubs.begin());
        plan.push_back({dining_aps[(hub_idx * 5 + d) % dining_aps.size()],
                        11 * kHour + rng.range(0, 1200), 3 * kHour + rng.range(0, 1500)});
        plan.push_back({library_aps[(hub_idx * 3 + d) % library_aps.size()],
                        14 * kHour + 40 * kMinute + rng.range(0, 900),
                        2 * kHour + 20 * kMinute + rng.range(0, 1200)});
        plan.push_back({dining_aps[(hub_idx * 5 + d + 6) % dining_aps.size()],
                        17 * kHour + 30 * kMinute + rng.range(0, 1200),
                        2 * kHour + rng.range(0, 1500)});
      } else if (profile[s] == 2) {
        // Environmental: long desk sits; visitors churn through below d_sym.
        const uint32_t env_idx =
            static_cast<uint32_t>(std::find(envs.begin(), envs.end(), s) - envs.begin());
        const int sits = is_weekend ? 1 : 3;
        const int64_t sit_start[3] = {9 * kHour + 30 * kMinute, 13 * kHour,
                                      16 * kHour + 15 * kMinute};
        for (int k = 0; k < sits; ++k)
          plan.push_back({desk_aps[(env_idx + d + static_cast<uint32_t>(k)) % desk_aps.size()],
                          sit_start[k] + rng.range(0, 900), 3 * kHour + rng.range(-900, 900)});
      } else {
        const double meal_p = is_weekend ? spec.dining_prob / 2 : spec.dining_prob;
        if (rng.bernoulli(meal_p))
          plan.push_back({dining_aps[rng.bounded(dining_aps.size())],
                          11 * kHour + 30 * kMinute + rng.range(0, 9000),
                          15 * kMinute + rng.range(0, 600)});
        if (rng.bernoulli(meal_p))
          plan.push_back({dining_aps[rng.bounded(dining_aps.size())],
                          17 * kHour + 30 * kMinute + rng.range(0, 9000),
                          15 * kMinute + rng.range(0, 600)});
        const double lib_p = is_weekend ? spec.weekend_outing_prob : spec.library_prob;
        if (rng.bernoulli(lib_p))
          plan.push_back({library_aps[rng.bounded(library_aps.size())],
                          9 * kHour + rng.range(0, 11 * kHour),
                          45 * kMinute + rng.range(0, 4500)});
        const double errand_p = is_weekend ? spec.errand_prob / 3 : spec.errand_prob;
        if (rng.bernoulli(errand_p))
          plan.push_back({desk_aps[rng.bounded(desk_aps.size())],
                          9 * kHour + rng.range(0, 8 * kHour), 5 * kMinute + rng.range(0, 300)});
      }

      std::sort(plan.begin(), plan.end(),
                [](const Activity& a, const Activity& b) { return a.start < b.start; });

      // Chain the day so no recovered stay outlives its visit: arrivals wait
      // for the previous departure plus the walk, and idle gaps send the
      // student back to the dorm AP (a real association that closes the
      // previous stay). Activities that would spill past 23:00 are dropped.
      constexpr int64_t kIdleGap = 1200;
      const uint32_t dorm = dorm_of[s];
      int64_t prev_dep = -1;
      uint32_t prev_ap = UINT32_MAX;
      int64_t pending_dorm_start = -1;  // open filler stay, closed at next arrival

      auto walk_between = [&](uint32_t a, uint32_t b) {
        return building_of(a) == building_of(b)
                   ? int64_t{0}
                   : data.walk.walk(building_of(a), building_of(b));
      };

      for (const auto& act : plan) {
        int64_t arr = day0 + act.start;
        if (prev_dep >= 0) {
          int64_t via_home = prev_dep + walk_between(prev_ap, dorm) + walk_between(dorm, act.ap);
          if (prev_ap != dorm && arr - via_home > kIdleGap) {
            int64_t home_arr = prev_dep + walk_between(prev_ap, dorm) + rng.range(15, 90);
            events.push_back({home_arr, s, dorm, false});
            pending_dorm_start = home_arr;
            prev_ap = dorm;
            prev_dep = home_arr;
          }
          arr = std::max(arr, prev_dep + walk_between(prev_ap, act.ap) + rng.range(15, 90));
        }
        int64_t dep = arr + act.duration;
        if (dep > day0 + 23 * kHour) continue;
        if (pending_dorm_start >= 0) {
          visits.push_back({s, dorm, pending_dorm_start, arr});
          pending_dorm_start = -1;
        }
        events.push_back({arr, s, act.ap, false});
        if (act.duration > 1800 && rng.bernoulli(spec.reassoc_prob))
          events.push_back({arr + rng.range(600, std::min<int64_t>(1700, act.duration - 60)), s,
                            act.ap, true});
        visits.push_back({s, act.ap, arr, dep});
        prev_dep = dep;
        prev_ap = act.ap;
      }

      // Evening return: straight home after the last activity when the day
      // ends early, otherwise at the intended hour.
      int64_t dorm_arr = day0 + 20 * kHour + 30 * kMinute + rng.range(0, 5400);
      if (pending_dorm_start >= 0) {
        // Day fizzled out at home already; the filler stay runs overnight.
        visits.push_back({s, dorm, pending_dorm_start, day0 + kSecondsPerDay});
      } else {
        if (prev_dep >= 0) {
          int64_t direct = prev_dep + walk_between(prev_ap, dorm) + rng.range(15, 90);
          dorm_arr = dorm_arr - direct > kIdleGap ? direct : std::max(dorm_arr, direct);
        }
        events.push_back({dorm_arr, s, dorm, false});
        visits.push_back({s, dorm, dorm_arr, day0 + kSecondsPerDay});
      }
    }
  }

  // --- ground-truth statistics ----------------------------------------------
  // Expected tracklet counts replicate the session-coalescing rule: a new
  // tracklet opens on an AP change or a same-AP gap above the timeout.
  std::vector<uint32_t> expected_tracklets(n, 0);
  {
    std::vector<RawEvent> ordered = events;
    // Same ordering the trajectory builder uses: (person, time, ap).
    std::sort(ordered.begin(), ordered.end(), [](const RawEvent& a, const RawEvent& b) {
      if (a.student != b.student) return a.student < b.student;
      if (a.t != b.t) return a.t < b.t;
      return a.ap < b.ap;
    });
    constexpr int64_t kTimeout = 3600;
    uint32_t cur = UINT32_MAX;
    uint32_t cur_ap = 0;
    int64_t last_t = 0;
    for (const auto& ev : ordered) {
      if (ev.student != cur || ev.ap != cur_ap || ev.t - last_t > kTimeout) {
        if (ev.student != cur) cur = ev.student;
        cur_ap = ev.ap;
        ++expected_tracklets[ev.student];
      }
      last_t = ev.t;
    }
  }

  std::vector<double> mean_stay(n, 0.0);
  {
    std::vector<uint32_t> n_visits(n, 0);
    for (const auto& v : visits) {
      mean_stay[v.student] += static_cast<double>(v.end - v.begin);
      ++n_visits[v.student];
    }
    for (uint32_t s = 0; s < n; ++s)
      if (n_visits[s] > 0) mean_stay[s] /= n_visits[s];
  }

  // Mean daily count of distinct co-located partners (any positive overlap
  // at the same AP), from the generator's own visit intervals.
  std::vector<double> colocation(n, 0.0);
  {
    std::map<std::pair<uint32_t, int64_t>, std::vector<Visit>> by_ap_day;
    for (const auto& v : visits)
      by_ap_day[{v.ap, (v.begin - spec.start_time) / kSecondsPerDay}].push_back(v);
    std::vector<std::vector<uint32_t>> partners(n);
    for (auto& [key, vs] : by_ap_day) {
      std::sort(vs.begin(), vs.end(), [](const Visit& a, const Visit& b) {
        return a.begin != b.begin ? a.begin < b.begin : a.student < b.student;
      });
      const uint32_t day_tag = static_cast<uint32_t>(key.second) << 24;
      for (size_t i = 0; i < vs.size(); ++i) {
        for (size_t j = i + 1; j < vs.size() && vs[j].begin < vs[i].end; ++j) {
          if (vs[i].student == vs[j].student) continue;
          partners[vs[i].student].push_back(vs[j].student ^ day_tag);
          partners[vs[j].student].push_back(vs[i].student ^ day_tag);
        }
      }
    }
    for (uint32_t s = 0; s < n; ++s) {
      auto& p = partners[s];
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
      colocation[s] = static_cast<double>(p.size()) / n_days;
    }
  }

  // --- noise + serialization --------------------------------------------------
  Rng noise(derive_seed(spec.seed, kSaltNoise));
  struct Line {
    int64_t t;
    std::string text;
  };
  std::vector<Line> lines;
  lines.reserve(events.size() + events.size() / 16);

  auto push_entry = [&](const LogEntry& e) { lines.push_back({e.timestamp, e.serialize()}); };

  for (const auto& ev : events) {
    LogEntry e;
    e.timestamp = ev.t;
    e.process = ev.reassoc ? "reassoc" : "assoc";
    e.ap_name = data.directory.ap_name(ev.ap);
    e.student_id = student_id(ev.student);
    e.role = "student";
    e.mac = student_mac(ev.student);
    e.ssid = spec.ssid;
    e.result = AuthResult::Success;
    if (noise.bernoulli(spec.noise_failure_prob)) {
      LogEntry fail = e;
      fail.timestamp = std::max<int64_t>(1, e.timestamp - noise.range(1, 5));
      fail.result = AuthResult::Failure;
      push_entry(fail);
    }
    push_entry(e);
    if (noise.bernoulli(spec.noise_invalid_prob)) {
      LogEntry bad = e;
      bad.timestamp = e.timestamp + noise.range(1, 30);
      bad.student_id.clear();
      push_entry(bad);
    }
    if (noise.bernoulli(spec.noise_guest_prob)) {
      LogEntry guest = e;
      guest.timestamp = e.timestamp + noise.range(1, 30);
      guest.ap_name = "AP-GUEST-0" + std::to_string(1 + noise.bounded(4));
      guest.ssid = "CampusGuest";
      push_entry(guest);
    }
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return a.t != b.t ? a.t < b.t : a.text < b.text;
  });
  data.log_lines.reserve(lines.size());
  for (auto& l : lines) data.log_lines.push_back(std::move(l.text));

  // --- manifest ----------------------------------------------------------------
  nlohmann::json manifest;
  manifest["n_students"] = n;
  manifest["weeks"] = spec.weeks;
  manifest["start_time"] = spec.start_time;
  manifest["seed"] = spec.seed;
  manifest["ssid"] = spec.ssid;
  manifest["session_timeout_assumed"] = 3600;

  nlohmann::json spreaders = nlohmann::json::array();
  for (uint32_t s : hubs) spreaders.push_back({{"id", student_id(s)}, {"profile", "hub"}});
  for (uint32_t s : envs)
    spreaders.push_back({{"id", student_id(s)}, {"profile", "environmental"}});
  manifest["spreaders"] = spreaders;

  nlohmann::json schedules = nlohmann::json::object();
  nlohmann::json tracklets = nlohmann::json::object();
  nlohmann::json coloc = nlohmann::json::object();
  nlohmann::json stays = nlohmann::json::object();
  for (uint32_t s = 0; s < n; ++s) {
    nlohmann::json sched;
    sched["dorm_ap"] = data.directory.ap_name(dorm_of[s]);
    sched["profile"] = profile[s] == 1 ? "hub" : profile[s] == 2 ? "environmental" : "background";
    nlohmann::json cls = nlohmann::json::array();
    for (const auto& b : blocks[s])
      cls.push_back({{"weekday", b.weekday},
                     {"slot", b.slot},
                     {"ap", data.directory.ap_name(b.ap)}});
    sched["class_blocks"] = cls;
    schedules[student_id(s)] = sched;
    tracklets[student_id(s)] = expected_tracklets[s];
    coloc[student_id(s)] = colocation[s];
    stays[student_id(s)] = mean_stay[s];
  }
  manifest["schedules"] = schedules;
  manifest["expected_tracklets"] = tracklets;
  manifest["mean_daily_colocations"] = coloc;
  manifest["mean_stay_seconds"] = stays;

  {
    std::vector<double> sorted = colocation;
    std::sort(sorted.begin(), sorted.end());
    manifest["median_daily_colocation"] = sorted[sorted.size() / 2];
  }
  data.manifest = std::move(manifest);
  return data;
}

void write_campus(const CampusData& data, const std::string& log_path,
                  const std::string& manifest_path, const std::string& apdir_path,
                  const std::string& walk_path) {
  {
    std::ofstream out(log_path);
    if (!out) throw std::runtime_error("cannot write log file: " + log_path);
    for (const auto& line : data.log_lines) out << line << '\n';
  }
  {
    std::ofstream out(manifest_path);
    if (!out) throw std::runtime_error("cannot write manifest: " + manifest_path);
    out << data.manifest.dump(2) << '\n';
  }
  data.directory.save(apdir_path);
  data.walk.save(walk_path);
}

}  // namespace tracenet
