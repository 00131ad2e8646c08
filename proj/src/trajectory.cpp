#include "tracenet/trajectory.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "tracenet/util.hpp"

namespace tracenet {

void WalkTimeMatrix::set(const std::string& a, const std::string& b, int64_t seconds) {
  auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  for (auto& e : entries_) {
    if (e.first == key) {
      e.second = seconds;
      return;
    }
  }
  entries_.emplace_back(std::move(key), seconds);
}

int64_t WalkTimeMatrix::walk(const std::string& a, const std::string& b) const {
  if (a == b) return 0;
  auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  for (const auto& e : entries_)
    if (e.first == key) return e.second;
  return default_walk_;
}

WalkTimeMatrix WalkTimeMatrix::load(const std::string& path, int64_t default_walk) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open walk-time matrix: " + path);
  WalkTimeMatrix m(default_walk);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line == "building_a,building_b,seconds") continue;
      throw std::runtime_error(path + ": expected header 'building_a,building_b,seconds'");
    }
    auto f = split_csv(line);
    auto secs = f.size() == 3 ? parse_i64(f[2]) : std::nullopt;
    if (f.size() != 3 || f[0].empty() || f[1].empty() || !secs || *secs < 0)
      throw std::runtime_error(path + ": bad walk-time row: " + line);
    m.set(std::string(f[0]), std::string(f[1]), *secs);
  }
  return m;
}

void WalkTimeMatrix::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write walk-time matrix: " + path);
  out << "building_a,building_b,seconds\n";
  for (const auto& e : entries_)
    out << e.first.first << ',' << e.first.second << ',' << e.second << '\n';
}

int64_t terminal_stay(int64_t t_last, int64_t cutoff, int64_t max_terminal_stay) {
  int64_t open = cutoff - t_last;
  if (open < 0) open = 0;
  return std::min(open, max_terminal_stay);
}

namespace {

struct Event {
  int64_t t;
  uint32_t ap_id;
};

}  // namespace

std::vector<Trajectory> build_trajectories(std::span<const LogEntry> entries,
                                           const ApDirectory& dir,
                                           const WalkTimeMatrix& walk,
                                           const TrajectoryParams& params) {
  // Group windowed events by person. Persons are processed in sorted order so
  // the result does not depend on input order.
  std::vector<std::pair<std::string, Event>> rows;
  rows.reserve(entries.size());
  int64_t max_event_time = params.window_start;
  for (const auto& e : entries) {
    if (e.timestamp < params.window_start || e.timestamp >= params.window_end) continue;
    auto ap = dir.resolve(e.ap_name);
    if (!ap) throw std::runtime_error("unvalidated entry: unknown AP " + e.ap_name);
    rows.emplace_back(e.student_id, Event{e.timestamp, *ap});
    max_event_time = std::max(max_event_time, e.timestamp);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.second.t != b.second.t) return a.second.t < b.second.t;
    return a.second.ap_id < b.second.ap_id;
  });

  // The cutoff for terminal stays: end of the analysis window, or the day
  // after the last observed event when the window is unbounded.
  int64_t cutoff = params.window_end;
  if (cutoff == INT64_MAX) cutoff = floor_day(max_event_time) + kSecondsPerDay;

  std::vector<Trajectory> out;
  size_t i = 0;
  while (i < rows.size()) {
    size_t j = i;
    while (j < rows.size() && rows[j].first == rows[i].first) ++j;

    // Coalesce same-AP re-associations within session_timeout. Each kept
    // event opens a tracklet; last_seen tracks the latest event merged in.
    std::vector<Event> stops;
    std::vector<int64_t> last_seen;
    for (size_t k = i; k < j; ++k) {
      const Event& ev = rows[k].second;
      if (!stops.empty() && stops.back().ap_id == ev.ap_id &&
          ev.t - last_seen.back() <= params.session_timeout) {
        last_seen.back() = ev.t;
        continue;
      }
      stops.push_back(ev);
      last_seen.push_back(ev.t);
    }

    Trajectory traj;
    traj.person_id = rows[i].first;
    traj.tracklets.reserve(stops.size());
    for (size_t k = 0; k < stops.size(); ++k) {
      Tracklet t;
      t.ap_id = stops[k].ap_id;
      t.arrival = stops[k].t;
      if (k + 1 < stops.size()) {
        int64_t gap = stops[k + 1].t - stops[k].t;
        const std::string& b_here = dir.building(stops[k].ap_id);
        const std::string& b_next = dir.building(stops[k + 1].ap_id);
        int64_t w = b_here == b_next ? 0 : walk.walk(b_here, b_next);
        t.stay = std::max<int64_t>(0, gap - w);
      } else {
        int64_t tail = terminal_stay(last_seen[k], cutoff, params.max_terminal_stay);
        t.stay = (last_seen[k] - stops[k].t) + tail;
      }
      traj.tracklets.push_back(t);
    }
    if (!traj.tracklets.empty()) out.push_back(std::move(traj));
    i = j;
  }
  return out;
}

}  // namespace tracenet
