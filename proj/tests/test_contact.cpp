#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "tracenet/contact.hpp"
#include "tracenet/util.hpp"

using namespace tracenet;

namespace {

// Independent oracle: count integer seconds belonging to both closed stay
// windows by scanning [t, t+st) membership second by second.
int64_t scan_intersection(int64_t t_a, int64_t st_a, int64_t t_b, int64_t st_b) {
  int64_t lo = std::min(t_a, t_b);
  int64_t hi = std::max(t_a + st_a, t_b + st_b);
  int64_t count = 0;
  for (int64_t s = lo; s < hi; ++s)
    if (s >= t_a && s < t_a + st_a && s >= t_b && s < t_b + st_b) ++count;
  return count;
}

Trajectory make_traj(const std::string& id,
                     std::vector<std::tuple<uint32_t, int64_t, int64_t>> rows) {
  Trajectory t;
  t.person_id = id;
  for (auto& [ap, arr, stay] : rows) t.tracklets.push_back({ap, arr, stay});
  return t;
}

std::set<std::pair<std::string, std::string>> arc_pairs(const ContactGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const Arc& a : g.arcs()) out.insert({g.person(a.src), g.person(a.dst)});
  return out;
}

// O(n^2) reference tracer over every tracklet pair, ignoring the per-AP index.
std::set<std::pair<std::string, std::string>> brute_force_arcs(
    const std::vector<Trajectory>& ts, const ContactConfig& cfg, bool symmetric) {
  std::set<std::pair<std::string, std::string>> out;
  struct Row {
    std::string person;
    Tracklet tk;
  };
  std::vector<Row> rows;
  for (const auto& t : ts)
    for (const auto& tk : t.tracklets) rows.push_back({t.person_id, tk});
  for (const auto& a : rows) {
    for (const auto& b : rows) {
      if (a.person == b.person || a.tk.ap_id != b.tk.ap_id) continue;
      if (symmetric) {
        if (overlap_duration(a.tk.arrival, a.tk.stay, b.tk.arrival, b.tk.stay) >= cfg.d_sym) {
          out.insert({a.person, b.person});
          out.insert({b.person, a.person});
        }
      } else {
        if (a.tk.stay >= cfg.d_env &&
            env_overlap_duration(a.tk.arrival, a.tk.stay, b.tk.arrival, b.tk.stay, cfg.d_env) >=
                cfg.d_asym)
          out.insert({a.person, b.person});
      }
    }
  }
  return out;
}

std::vector<Trajectory> random_trajectories(Rng& rng, size_t n_people, size_t max_tracklets,
                                            uint32_t n_aps) {
  std::vector<Trajectory> ts;
  for (size_t p = 0; p < n_people; ++p) {
    Trajectory t;
    t.person_id = "p" + std::to_string(100 + p);
    int64_t cursor = rng.range(0, 2000);
    size_t k = 1 + rng.bounded(max_tracklets);
    for (size_t i = 0; i < k; ++i) {
      Tracklet tk;
      tk.ap_id = static_cast<uint32_t>(rng.bounded(n_aps));
      tk.arrival = cursor;
      tk.stay = rng.range(0, 5000);
      t.tracklets.push_back(tk);
      cursor += tk.stay + rng.range(1, 900);
    }
    ts.push_back(std::move(t));
  }
  return ts;
}

}  // namespace

TEST_CASE("symmetric criterion examples") {
  CHECK(overlap_duration(0, 1800, 600, 1800) == 1200);
  CHECK(overlap_duration(0, 600, 1200, 600) == -600);
}

TEST_CASE("symmetric criterion equals interval intersection") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    int64_t tq = rng.range(0, 5000), sq = rng.range(0, 4000);
    int64_t tp = rng.range(0, 5000), sp = rng.range(0, 4000);
    int64_t lhs = overlap_duration(tq, sq, tp, sp);
    // Algebraic identity with min(end)-max(start).
    CHECK(lhs == std::min(tq + sq, tp + sp) - std::max(tq, tp));
    if (lhs >= 0) CHECK(lhs == scan_intersection(tq, sq, tp, sp));
  }
}

TEST_CASE("asymmetric criterion equals shifted-window intersection") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    int64_t tq = rng.range(0, 5000), sq = rng.range(0, 6000);
    int64_t tp = rng.range(0, 5000), sp = rng.range(0, 4000);
    int64_t d_env = rng.range(0, 3000);
    if (sq < d_env) continue;
    int64_t lhs = env_overlap_duration(tq, sq, tp, sp, d_env);
    CHECK(lhs == std::min(tq + sq, tp + sp) - std::max(tq + d_env, tp));
    if (lhs >= 0) CHECK(lhs == scan_intersection(tq + d_env, sq - d_env, tp, sp));
  }
}

TEST_CASE("symmetric edges") {
  ContactConfig cfg;
  SUBCASE("overlap above threshold is bidirectional") {
    std::vector<Trajectory> ts = {make_traj("a", {{1, 0, 1800}}), make_traj("b", {{1, 600, 1800}})};
    auto g = symmetric_graph(ts, cfg);
    CHECK(arc_pairs(g) == std::set<std::pair<std::string, std::string>>{{"a", "b"}, {"b", "a"}});
  }
  SUBCASE("boundary overlap counts, criterion is >=") {
    std::vector<Trajectory> ts = {make_traj("a", {{1, 0, 900}}), make_traj("b", {{1, 0, 900}})};
    CHECK(symmetric_graph(ts, cfg).num_arcs() == 2);
  }
  SUBCASE("same overlap at different APs gives no edge") {
    std::vector<Trajectory> ts = {make_traj("a", {{1, 0, 1800}}), make_traj("b", {{2, 0, 1800}})};
    auto g = symmetric_graph(ts, cfg);
    CHECK(g.num_arcs() == 0);
    CHECK(g.num_vertices() == 2);
  }
}

TEST_CASE("asymmetric edges") {
  ContactConfig cfg;  // d_env 3000, d_asym 300
  SUBCASE("long stay infects a later visitor") {
    std::vector<Trajectory> ts = {make_traj("q", {{1, 0, 7200}}),
                                  make_traj("p", {{1, 3600, 1800}})};
    auto g = asymmetric_graph(ts, cfg);
    CHECK(arc_pairs(g) == std::set<std::pair<std::string, std::string>>{{"q", "p"}});
  }
  SUBCASE("source stay below d_env never emits") {
    std::vector<Trajectory> ts = {make_traj("q", {{1, 0, 2400}}),
                                  make_traj("p", {{1, 0, 2400}})};
    CHECK(asymmetric_graph(ts, cfg).num_arcs() == 0);
  }
  SUBCASE("visitor entirely before the environmental window") {
    std::vector<Trajectory> ts = {make_traj("q", {{1, 0, 7200}}), make_traj("p", {{1, 0, 2400}})};
    CHECK(asymmetric_graph(ts, cfg).num_arcs() == 0);
  }
}

TEST_CASE("merge graphs") {
  ContactConfig cfg;
  auto sym = symmetric_graph(
      std::vector<Trajectory>{make_traj("a", {{1, 0, 1800}}), make_traj("b", {{1, 0, 1800}}),
                              make_traj("c", {{2, 0, 60}})},
      cfg);
  auto asym = asymmetric_graph(
      std::vector<Trajectory>{make_traj("a", {{3, 0, 7200}}), make_traj("b", {{4, 0, 60}}),
                              make_traj("c", {{3, 5000, 1200}})},
      cfg);
  auto hybrid = merge_graphs(sym, asym);
  CHECK(hybrid.mode() == GraphMode::Hybrid);
  CHECK(arc_pairs(hybrid) ==
        std::set<std::pair<std::string, std::string>>{{"a", "b"}, {"b", "a"}, {"a", "c"}});

  SUBCASE("empty asymmetric side leaves the symmetric arcs") {
    auto empty_asym = asymmetric_graph(
        std::vector<Trajectory>{make_traj("a", {{1, 0, 10}}), make_traj("b", {{2, 0, 10}}),
                                make_traj("c", {{3, 0, 10}})},
        cfg);
    auto h = merge_graphs(sym, empty_asym);
    CHECK(arc_pairs(h) == arc_pairs(sym));
  }
  SUBCASE("both empty keeps vertices") {
    std::vector<Trajectory> quiet = {make_traj("a", {{1, 0, 10}}), make_traj("b", {{2, 0, 10}})};
    auto h = merge_graphs(symmetric_graph(quiet, cfg), asymmetric_graph(quiet, cfg));
    CHECK(h.num_vertices() == 2);
    CHECK(h.num_arcs() == 0);
  }
  SUBCASE("dual-tagged arcs keep both kinds") {
    std::vector<Trajectory> ts = {make_traj("a", {{1, 0, 7200}}), make_traj("b", {{1, 0, 7200}})};
    auto h = merge_graphs(symmetric_graph(ts, cfg), asymmetric_graph(ts, cfg));
    CHECK(h.num_arcs() == 2);
    for (const Arc& a : h.arcs()) CHECK(a.kinds == (kArcSymmetric | kArcAsymmetric));
    CHECK(h.count_kind(kArcSymmetric) == 2);
    CHECK(h.count_kind(kArcAsymmetric) == 2);
  }
}

TEST_CASE("symmetric adjacency equals its transpose") {
  Rng rng(23);
  ContactConfig cfg;
  for (int round = 0; round < 20; ++round) {
    auto ts = random_trajectories(rng, 12, 5, 4);
    auto arcs = arc_pairs(symmetric_graph(ts, cfg));
    for (const auto& [s, d] : arcs) CHECK(arcs.count({d, s}) == 1);
  }
}

TEST_CASE("hybrid arc count dominates both parts") {
  Rng rng(29);
  ContactConfig cfg;
  for (int round = 0; round < 20; ++round) {
    auto ts = random_trajectories(rng, 15, 4, 5);
    auto sym = symmetric_graph(ts, cfg);
    auto asym = asymmetric_graph(ts, cfg);
    auto hybrid = merge_graphs(sym, asym);
    CHECK(hybrid.num_arcs() >= sym.num_arcs());
    CHECK(hybrid.num_arcs() >= asym.num_arcs());
  }
}

TEST_CASE("degenerate thresholds make asymmetric tracing cover symmetric arcs") {
  Rng rng(31);
  ContactConfig cfg;
  cfg.d_env = 0;
  cfg.d_asym = cfg.d_sym = 900;
  for (int round = 0; round < 10; ++round) {
    auto ts = random_trajectories(rng, 12, 4, 3);
    auto sym = arc_pairs(symmetric_graph(ts, cfg));
    auto asym = arc_pairs(asymmetric_graph(ts, cfg));
    for (const auto& arc : sym) CHECK(asym.count(arc) == 1);
  }
}

TEST_CASE("indexed tracing matches the all-pairs scan") {
  Rng rng(37);
  ContactConfig cfg;
  for (int round = 0; round < 25; ++round) {
    auto ts = random_trajectories(rng, 20, 10, 6);  // up to 200 tracklets
    CHECK(arc_pairs(symmetric_graph(ts, cfg)) == brute_force_arcs(ts, cfg, true));
    CHECK(arc_pairs(asymmetric_graph(ts, cfg)) == brute_force_arcs(ts, cfg, false));
  }
}

TEST_CASE("config validation") {
  ContactConfig bad;
  bad.d_asym = 2000;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ContactConfig{};
  bad.d_env = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(ContactConfig{}.validate());
}
