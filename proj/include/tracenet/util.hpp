// Deterministic low-level helpers shared across the toolkit: seeded RNG,
// seed derivation, hashing, calendar math, CSV splitting and a fixed-block
// parallel loop whose results never depend on the number of worker threads.
#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tracenet {

// --- seeding -------------------------------------------------------------

// splitmix64 finalizer. Bijective on 64-bit values.
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Documented mixing function for per-run / per-stage seed streams:
//   derived = mix64(base ^ mix64(salt))
// Distinct salts give independent streams from one master seed.
constexpr uint64_t derive_seed(uint64_t base, uint64_t salt) {
  return mix64(base ^ mix64(salt));
}

// Small self-contained PRNG (splitmix64 sequence). Used everywhere instead
// of <random> distributions so that draws are identical across platforms
// and standard-library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Unbiased integer in [0, n). Lemire's multiply-with-rejection.
  uint64_t bounded(uint64_t n);

  // Integer in [lo, hi] inclusive.
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(bounded(static_cast<uint64_t>(hi - lo + 1)));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = bounded(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices drawn from [0, n), in draw order.
  std::vector<uint32_t> sample_indices(uint32_t n, uint32_t k);

 private:
  uint64_t state_;
};

// --- hashing -------------------------------------------------------------

constexpr uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(uint64_t v);

// --- calendar ------------------------------------------------------------
// All timestamps are UTC seconds since the UNIX epoch; analysis windows are
// aligned to UTC midnights (no local-timezone dependence).

constexpr int64_t kSecondsPerDay = 86400;
constexpr int64_t kSecondsPerWeek = 7 * kSecondsPerDay;

constexpr int64_t floor_day(int64_t ts) {
  int64_t d = ts / kSecondsPerDay;
  if (ts < 0 && ts % kSecondsPerDay != 0) --d;
  return d * kSecondsPerDay;
}

// Days since epoch for a civil date (proleptic Gregorian).
int64_t days_from_civil(int y, unsigned m, unsigned d);
void civil_from_days(int64_t z, int& y, unsigned& m, unsigned& d);

// "YYYY-MM-DD" -> UTC midnight timestamp.
std::optional<int64_t> parse_iso_date(std::string_view s);
std::string format_iso_date(int64_t ts);

// --- text ----------------------------------------------------------------

// Splits on commas, no quoting (log fields are opaque tokens).
std::vector<std::string_view> split_csv(std::string_view line);

std::optional<int64_t> parse_i64(std::string_view s);

// Shortest-ish deterministic decimal rendering used by all CSV writers.
std::string format_double(double v);

// --- parallelism ---------------------------------------------------------

int thread_budget();
void set_thread_budget(int n);

// Runs fn(block_index, begin, end) over [0, n) split into fixed-size blocks.
// Block boundaries depend only on n and block_size, never on the thread
// count, so per-block outputs can be combined in block order for results
// that are identical at any parallelism level.
void parallel_blocks(size_t n, size_t block_size,
                     const std::function<void(size_t, size_t, size_t)>& fn);

}  // namespace tracenet
