#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tracenet/analysis.hpp"
#include "tracenet/util.hpp"

using namespace tracenet;

namespace {

std::vector<std::string> ids(std::initializer_list<const char*> xs) {
  return {xs.begin(), xs.end()};
}

// Direct evaluation of the finite RBO sum, as an independent reference.
double rbo_reference(const std::vector<std::string>& a, const std::vector<std::string>& b,
                     double p) {
  size_t d = std::min(a.size(), b.size());
  double sum = 0.0, weight = 1.0, a_i = 0.0;
  for (size_t i = 1; i <= d; ++i) {
    size_t overlap = 0;
    for (size_t x = 0; x < i; ++x)
      for (size_t y = 0; y < i; ++y)
        if (a[x] == b[y]) ++overlap;
    a_i = static_cast<double>(overlap) / i;
    sum += weight * a_i;
    weight *= p;
  }
  return sum * (1.0 - p) + a_i * weight;
}

}  // namespace

TEST_CASE("rbo reference values") {
  CHECK(rbo(ids({"a", "b", "c"}), ids({"a", "b", "c"}), 0.9) == 1.0);  // exactly
  CHECK(std::abs(rbo(ids({"a", "b"}), ids({"c", "d"}), 0.5)) <= 1e-12);
  // Hand-derived: A_1 = 0, A_2 = 1 at p = 0.9 gives 0.9.
  CHECK(std::abs(rbo(ids({"x", "y"}), ids({"y", "x"}), 0.9) - 0.9) <= 1e-12);
}

TEST_CASE("rbo equals the direct finite sum on random lists") {
  Rng rng(17);
  for (int round = 0; round < 300; ++round) {
    size_t n = 1 + rng.bounded(12);
    std::vector<std::string> pool;
    for (int i = 0; i < 20; ++i) pool.push_back("id" + std::to_string(i));
    rng.shuffle(pool);
    std::vector<std::string> a(pool.begin(), pool.begin() + n);
    rng.shuffle(pool);
    size_t m = 1 + rng.bounded(12);
    std::vector<std::string> b(pool.begin(), pool.begin() + m);
    double p = 0.05 + 0.9 * rng.uniform01();
    CHECK(std::abs(rbo(a, b, p) - rbo_reference(a, b, p)) <= 1e-12);
    CHECK(rbo(a, b, p) == rbo(b, a, p));  // symmetric in its arguments
  }
}

TEST_CASE("rbo self-similarity is exactly one") {
  Rng rng(19);
  for (int round = 0; round < 50; ++round) {
    size_t n = 1 + rng.bounded(150);
    std::vector<std::string> a;
    for (size_t i = 0; i < n; ++i) a.push_back("p" + std::to_string(i * 7));
    double p = 0.05 + 0.9 * rng.uniform01();
    CHECK(rbo(a, a, p) == 1.0);
  }
}

TEST_CASE("rbo input validation") {
  CHECK_THROWS_AS(rbo(ids({"a"}), ids({"a"}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rbo(ids({"a"}), ids({"a"}), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rbo(ids({}), ids({"a"}), 0.9), std::invalid_argument);
  CHECK_THROWS_AS(rbo(ids({"a", "a"}), ids({"a", "b"}), 0.9), std::invalid_argument);
}

namespace {

// Tiny fixed-schedule store: the same co-location pattern every week, so
// accumulated rankings converge.
std::vector<Trajectory> weekly_store(uint32_t weeks) {
  const int64_t origin = 1425254400;
  std::vector<Trajectory> out;
  for (int person = 0; person < 8; ++person) {
    Trajectory t;
    t.person_id = "p" + std::to_string(person);
    for (uint32_t w = 0; w < weeks; ++w) {
      for (int day = 0; day < 5; ++day) {
        int64_t base = origin + w * kSecondsPerWeek + day * kSecondsPerDay + 9 * 3600;
        // Person 0 sits everywhere; others visit their own AP plus a shared one.
        if (person == 0) {
          t.tracklets.push_back({1, base, 7200});
          t.tracklets.push_back({2, base + 8000, 7200});
        } else {
          t.tracklets.push_back({static_cast<uint32_t>(person % 2 + 1),
                                 base + 600 * person, 3600});
        }
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

TEST_CASE("accumulated week matrix") {
  ContactConfig cfg;
  SUBCASE("single window is the unit matrix") {
    auto m = accumulated_week_matrix(weekly_store(1), 1, Measure::Degree, 5, cfg, 0.9);
    REQUIRE(m.values.size() == 1);
    CHECK(m.values[0][0] == 1.0);
  }
  SUBCASE("diagonal one, exact symmetry, values in range") {
    auto m = accumulated_week_matrix(weekly_store(4), 4, Measure::Degree, 5, cfg, 0.9);
    REQUIRE(m.values.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
      CHECK(m.values[i][i] == 1.0);
      for (size_t j = 0; j < 4; ++j) {
        CHECK(m.values[i][j] == m.values[j][i]);
        CHECK(m.values[i][j] >= 0.0);
        CHECK(m.values[i][j] <= 1.0);
      }
    }
    // Stationary schedule: consecutive late windows agree at least as well
    // as the first window agrees with the last.
    CHECK(m.values[2][3] >= m.values[0][3]);
  }
  SUBCASE("insufficient span names the shortfall") {
    CHECK_THROWS_WITH_AS(accumulated_week_matrix(weekly_store(2), 6, Measure::Degree, 5, cfg, 0.9),
                         doctest::Contains("2 week(s)"), std::runtime_error);
  }
  SUBCASE("deterministic across repeat builds") {
    auto a = accumulated_week_matrix(weekly_store(3), 3, Measure::Betweenness, 4, cfg, 0.9);
    auto b = accumulated_week_matrix(weekly_store(3), 3, Measure::Betweenness, 4, cfg, 0.9);
    CHECK(a.values == b.values);
  }
}

TEST_CASE("window clipping bounds stays") {
  std::vector<Trajectory> store(1);
  store[0].person_id = "p";
  store[0].tracklets = {{1, 100, 500}, {2, 1000, 10000}, {3, 20000, 5}};
  auto clipped = clip_window(store, 0, 2000);
  REQUIRE(clipped.size() == 1);
  REQUIRE(clipped[0].tracklets.size() == 2);
  CHECK(clipped[0].tracklets[1].stay == 1000);  // clipped at the window end
  CHECK(clip_window(store, 50000, 60000).empty());
}
