#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "tracenet/wlan_log.hpp"

using namespace tracenet;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/tracenet_test_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

ApDirectory small_dir() {
  ApDirectory dir;
  dir.add("AP-Lib-3F-02", "LIB");
  dir.add("AP-B01-01", "B01");
  return dir;
}

}  // namespace

TEST_CASE("parse a documented sample line") {
  auto e = parse_log_line(
      "1425000000,auth,AP-Lib-3F-02,s001,student,00:11:22:xx:xx:xx,SecureNet,success");
  REQUIRE(e.has_value());
  CHECK(e->timestamp == 1425000000);
  CHECK(e->ap_name == "AP-Lib-3F-02");
  CHECK(e->student_id == "s001");
  CHECK(e->result == AuthResult::Success);
  CHECK(e->mac == "00:11:22:xx:xx:xx");
}

TEST_CASE("round trip reproduces the line byte for byte") {
  const std::string line =
      "1425000000,auth,AP-Lib-3F-02,s001,student,00:11:22:xx:xx:xx,SecureNet,success";
  auto e = parse_log_line(line);
  REQUIRE(e.has_value());
  CHECK(e->serialize() == line);

  const std::string failure = "99,assoc,AP-B01-01,s9,staff,aa:bb,Net,failure";
  CHECK(parse_log_line(failure)->serialize() == failure);
}

TEST_CASE("malformed lines are rejected") {
  CHECK_FALSE(parse_log_line("only,three,fields").has_value());
  CHECK_FALSE(parse_log_line("notatime,a,b,c,d,e,f,success").has_value());
  CHECK_FALSE(parse_log_line("-5,a,b,c,d,e,f,success").has_value());
  CHECK_FALSE(parse_log_line("10,a,b,c,d,e,f,weird").has_value());
  std::string why;
  CHECK_FALSE(parse_log_line("x", &why).has_value());
  CHECK(why.find("8 fields") != std::string::npos);
}

TEST_CASE("file parsing with drops and counters") {
  TempFile f("log.csv",
             "1000,auth,AP-1,s1,student,m,SecureNet,success\n"
             "1001,auth,AP-1,,student,m,SecureNet,success\n"       // invalid: empty student
             "garbage line\n"                                      // malformed
             "1002,auth,AP-1,s2,student,m,OpenNet,success\n"       // filtered SSID
             "1003,auth,AP-2,s3,student,m,SecureNet,failure\n");
  ParseCounts counts;
  auto entries = parse_log_file(f.path, {"OpenNet"}, counts);
  CHECK(counts.lines == 5);
  CHECK(counts.accepted == 2);
  CHECK(counts.invalid == 1);
  CHECK(counts.malformed == 1);
  CHECK(counts.ssid_filtered == 1);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].student_id == "s1");
  CHECK(entries[1].result == AuthResult::Failure);
  CHECK(counts.accepted + counts.invalid + counts.malformed + counts.ssid_filtered == counts.lines);
}

TEST_CASE("empty file yields empty stream and zero counts") {
  TempFile f("empty.csv", "");
  ParseCounts counts;
  CHECK(parse_log_file(f.path, {}, counts).empty());
  CHECK(counts.lines == 0);
}

TEST_CASE("unreadable file is fatal") {
  ParseCounts counts;
  CHECK_THROWS_AS(parse_log_file("/nonexistent/really", {}, counts), std::runtime_error);
}

TEST_CASE("validate_and_filter") {
  auto dir = small_dir();
  auto mk = [](int64_t t, const std::string& ap, const std::string& sid, AuthResult r) {
    LogEntry e;
    e.timestamp = t;
    e.ap_name = ap;
    e.student_id = sid;
    e.result = r;
    return e;
  };
  std::vector<LogEntry> in = {
      mk(1, "AP-Lib-3F-02", "s1", AuthResult::Success),
      mk(2, "AP-Lib-3F-02", "s2", AuthResult::Failure),   // failed auth dropped
      mk(3, "AP-Unknown", "s3", AuthResult::Success),     // unresolvable AP
      mk(4, "AP-B01-01", "", AuthResult::Success),        // empty id
      mk(5, "AP-B01-01", "s4", AuthResult::Success),
  };
  FilterCounts counts;
  auto out = validate_and_filter(in, dir, counts);
  REQUIRE(out.size() == 2);
  CHECK(out[0].student_id == "s1");
  CHECK(out[1].student_id == "s4");
  CHECK(counts.input == 5);
  CHECK(counts.output == 2);
  CHECK(counts.dropped_failure == 1);
  CHECK(counts.dropped_unknown_ap == 1);
  CHECK(counts.dropped_empty_field == 1);
  CHECK(counts.output + counts.dropped() == counts.input);

  SUBCASE("idempotent") {
    FilterCounts again;
    auto twice = validate_and_filter(out, dir, again);
    CHECK(twice.size() == out.size());
    CHECK(again.dropped() == 0);
    for (size_t i = 0; i < twice.size(); ++i) CHECK(twice[i].serialize() == out[i].serialize());
  }
}

TEST_CASE("ap directory") {
  auto dir = small_dir();
  CHECK(dir.size() == 2);
  CHECK(dir.resolve("AP-Lib-3F-02") == 0u);
  CHECK(dir.resolve("AP-B01-01") == 1u);
  CHECK_FALSE(dir.resolve("nope").has_value());
  CHECK(dir.building(0) == "LIB");

  TempFile f("apdir.csv", "ap_name,building_id\nAP-X,BX\nAP-Y,BY\n");
  auto loaded = ApDirectory::load(f.path);
  CHECK(loaded.size() == 2);
  CHECK(loaded.resolve("AP-Y") == 1u);

  TempFile bad_header("apdir_bad.csv", "whatever\nAP-X,BX\n");
  CHECK_THROWS_AS(ApDirectory::load(bad_header.path), std::runtime_error);
  TempFile dup("apdir_dup.csv", "ap_name,building_id\nAP-X,BX\nAP-X,BY\n");
  CHECK_THROWS_AS(ApDirectory::load(dup.path), std::runtime_error);
}
