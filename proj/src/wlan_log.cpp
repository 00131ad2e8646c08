#include "tracenet/wlan_log.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "tracenet/util.hpp"

namespace tracenet {

std::string LogEntry::serialize() const {
  std::string out;
  out.reserve(64);
  out += std::to_string(timestamp);
  out += ',';
  out += process;
  out += ',';
  out += ap_name;
  out += ',';
  out += student_id;
  out += ',';
  out += role;
  out += ',';
  out += mac;
  out += ',';
  out += ssid;
  out += ',';
  out += result == AuthResult::Success ? "success" : "failure";
  return out;
}

std::optional<LogEntry> parse_log_line(std::string_view line, std::string* why) {
  auto fields = split_csv(line);
  if (fields.size() != 8) {
    if (why) *why = "expected 8 fields, got " + std::to_string(fields.size());
    return std::nullopt;
  }
  auto ts = parse_i64(fields[0]);
  if (!ts || *ts <= 0) {
    if (why) *why = "bad timestamp";
    return std::nullopt;
  }
  AuthResult res;
  if (fields[7] == "success") {
    res = AuthResult::Success;
  } else if (fields[7] == "failure") {
    res = AuthResult::Failure;
  } else {
    if (why) *why = "unknown result token";
    return std::nullopt;
  }
  LogEntry e;
  e.timestamp = *ts;
  e.process = std::string(fields[1]);
  e.ap_name = std::string(fields[2]);
  e.student_id = std::string(fields[3]);
  e.role = std::string(fields[4]);
  e.mac = std::string(fields[5]);
  e.ssid = std::string(fields[6]);
  e.result = res;
  return e;
}

std::vector<LogEntry> parse_log_file(const std::string& path,
                                     const std::set<std::string>& ssid_drop,
                                     ParseCounts& counts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open log file: " + path);
  std::vector<LogEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++counts.lines;
    auto e = parse_log_line(line);
    if (!e) {
      ++counts.malformed;
      continue;
    }
    if (e->ap_name.empty() || e->student_id.empty()) {
      ++counts.invalid;
      continue;
    }
    if (ssid_drop.count(e->ssid)) {
      ++counts.ssid_filtered;
      continue;
    }
    ++counts.accepted;
    out.push_back(std::move(*e));
  }
  return out;
}

uint32_t ApDirectory::add(const std::string& ap, const std::string& building) {
  auto id = static_cast<uint32_t>(names_.size());
  names_.push_back(ap);
  buildings_.push_back(building);
  index_dirty_ = true;
  return id;
}

void ApDirectory::rebuild_index() {
  index_.clear();
  index_.reserve(names_.size());
  for (uint32_t i = 0; i < names_.size(); ++i) index_.emplace_back(names_[i], i);
  std::sort(index_.begin(), index_.end());
  index_dirty_ = false;
}

std::optional<uint32_t> ApDirectory::resolve(std::string_view ap) const {
  if (index_dirty_) const_cast<ApDirectory*>(this)->rebuild_index();
  auto it = std::lower_bound(index_.begin(), index_.end(), ap,
                             [](const auto& p, std::string_view v) { return p.first < v; });
  if (it == index_.end() || it->first != ap) return std::nullopt;
  return it->second;
}

ApDirectory ApDirectory::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open AP directory: " + path);
  ApDirectory dir;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line == "ap_name,building_id") continue;
      throw std::runtime_error(path + ": expected header 'ap_name,building_id'");
    }
    auto f = split_csv(line);
    if (f.size() != 2 || f[0].empty() || f[1].empty())
      throw std::runtime_error(path + ": bad AP directory row: " + line);
    if (dir.resolve(f[0]))
      throw std::runtime_error(path + ": duplicate AP name: " + std::string(f[0]));
    dir.add(std::string(f[0]), std::string(f[1]));
  }
  return dir;
}

void ApDirectory::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write AP directory: " + path);
  out << "ap_name,building_id\n";
  for (size_t i = 0; i < names_.size(); ++i) out << names_[i] << ',' << buildings_[i] << '\n';
}

std::vector<LogEntry> validate_and_filter(std::vector<LogEntry> entries,
                                          const ApDirectory& dir, FilterCounts& counts) {
  std::vector<LogEntry> out;
  out.reserve(entries.size());
  counts.input += entries.size();
  for (auto& e : entries) {
    if (e.result != AuthResult::Success) {
      ++counts.dropped_failure;
      continue;
    }
    if (e.student_id.empty() || e.ap_name.empty()) {
      ++counts.dropped_empty_field;
      continue;
    }
    if (!dir.resolve(e.ap_name)) {
      ++counts.dropped_unknown_ap;
      continue;
    }
    out.push_back(std::move(e));
  }
  counts.output += out.size();
  return out;
}

}  // namespace tracenet
