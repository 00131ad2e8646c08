// WLAN (dis)association log ingestion: line parsing, validation and SSID
// filtering into clean per-person event streams.
//
// Input lines carry eight comma-separated fields:
//   timestamp,process,ap-name,student-id,role,MAC,SSID,result
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tracenet {

enum class AuthResult : uint8_t { Success, Failure };

struct LogEntry {
  int64_t timestamp = 0;  // seconds since UNIX epoch, > 0
  std::string process;
  std::string ap_name;
  std::string student_id;
  std::string role;
  std::string mac;
  std::string ssid;
  AuthResult result = AuthResult::Success;

  // Inverse of parse_log_line for well-formed entries (byte round-trip).
  std::string serialize() const;
};

struct ParseCounts {
  uint64_t lines = 0;          // non-empty lines seen
  uint64_t accepted = 0;
  uint64_t malformed = 0;      // wrong field count / bad timestamp / bad result
  uint64_t invalid = 0;        // missing student-id or AP name
  uint64_t ssid_filtered = 0;  // dropped by the SSID filter
};

// Returns nullopt for malformed lines; sets *why when provided.
std::optional<LogEntry> parse_log_line(std::string_view line, std::string* why = nullptr);

// Reads a log file in order, dropping malformed/invalid lines and entries on
// SSIDs listed in ssid_drop. Throws std::runtime_error if unreadable.
std::vector<LogEntry> parse_log_file(const std::string& path,
                                     const std::set<std::string>& ssid_drop,
                                     ParseCounts& counts);

// AP name -> dense handle plus the building each AP belongs to. Handles are
// assigned in file order, so a fixed directory file fixes all ap_ids.
class ApDirectory {
 public:
  // CSV with header "ap_name,building_id".
  static ApDirectory load(const std::string& path);

  uint32_t add(const std::string& ap_name, const std::string& building_id);
  std::optional<uint32_t> resolve(std::string_view ap_name) const;
  const std::string& ap_name(uint32_t ap_id) const { return names_[ap_id]; }
  const std::string& building(uint32_t ap_id) const { return buildings_[ap_id]; }
  size_t size() const { return names_.size(); }

  void save(const std::string& path) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::string> buildings_;
  std::vector<std::pair<std::string, uint32_t>> index_;  // sorted by name
  bool index_dirty_ = false;
  void rebuild_index();
};

struct FilterCounts {
  uint64_t input = 0;
  uint64_t output = 0;
  uint64_t dropped_failure = 0;
  uint64_t dropped_empty_field = 0;
  uint64_t dropped_unknown_ap = 0;
  uint64_t dropped() const { return input - output; }
};

// Keeps successful authentications with non-empty ids whose AP resolves in
// the directory. Idempotent; preserves input order.
std::vector<LogEntry> validate_and_filter(std::vector<LogEntry> entries,
                                          const ApDirectory& dir, FilterCounts& counts);

}  // namespace tracenet
