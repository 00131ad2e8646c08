#include "tracenet/seir.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tracenet/util.hpp"

namespace tracenet {

void SeirParams::validate() const {
  if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("beta must be in [0,1]");
  if (sigma <= 0.0 || sigma > 1.0) throw std::invalid_argument("sigma must be in (0,1]");
  if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("gamma must be in (0,1]");
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (max_days < 1) throw std::invalid_argument("max_days must be >= 1");
}

SeirTrace simulate(const ContactGraph& g, const SeirParams& params,
                   const std::vector<uint32_t>& quarantine, uint64_t seed, SimAudit* audit) {
  const auto n = static_cast<uint32_t>(g.num_vertices());
  std::vector<uint8_t> state(n, kStateS);
  for (uint32_t v : quarantine) {
    if (v >= n) throw std::invalid_argument("quarantine vertex out of range");
    state[v] = kStateQ;
  }
  uint32_t n_quarantined = 0;
  for (uint8_t st : state) n_quarantined += st == kStateQ;

  if (params.initial_infected > n - n_quarantined)
    throw std::invalid_argument("initial_infected exceeds non-quarantined population");

  // Seed the infectious set uniformly among non-quarantined vertices.
  Rng rng(seed);
  std::vector<uint32_t> free_vertices;
  free_vertices.reserve(n - n_quarantined);
  for (uint32_t v = 0; v < n; ++v)
    if (state[v] != kStateQ) free_vertices.push_back(v);
  for (uint32_t pick : rng.sample_indices(static_cast<uint32_t>(free_vertices.size()),
                                          params.initial_infected))
    state[free_vertices[pick]] = kStateI;

  SeirTrace trace;
  trace.population = n;
  auto record = [&](uint32_t cs, uint32_t ce, uint32_t ci, uint32_t cr, uint32_t cum) {
    trace.s.push_back(cs);
    trace.e.push_back(ce);
    trace.i.push_back(ci);
    trace.r.push_back(cr);
    trace.q.push_back(n_quarantined);
    trace.cumulative.push_back(cum);
  };

  uint32_t count_e = 0, count_i = params.initial_infected, count_r = 0;
  uint32_t count_s = n - n_quarantined - params.initial_infected;
  uint32_t cumulative = params.initial_infected;
  record(count_s, count_e, count_i, count_r, cumulative);
  if (audit) audit->daily_state.push_back(state);

  std::vector<uint32_t> exposure(n, 0);   // infectious in-neighbor counts
  std::vector<uint32_t> touched;          // vertices with nonzero exposure

  for (uint32_t day = 1; day <= params.max_days; ++day) {
    if (count_e + count_i > 0) {
      touched.clear();
      for (uint32_t u = 0; u < n; ++u) {
        if (state[u] != kStateI) continue;
        for (uint32_t w : g.out_neighbors(u)) {
          if (state[w] != kStateS) continue;
          if (exposure[w]++ == 0) touched.push_back(w);
        }
      }
      // Draw in ascending vertex order so the RNG stream is reproducible.
      std::sort(touched.begin(), touched.end());

      std::vector<uint32_t> to_e, to_i, to_r;
      for (uint32_t w : touched) {
        double p = 1.0 - std::pow(1.0 - params.beta, static_cast<double>(exposure[w]));
        if (rng.bernoulli(p)) to_e.push_back(w);
        exposure[w] = 0;
      }
      for (uint32_t v = 0; v < n; ++v) {
        if (state[v] == kStateE) {
          if (rng.bernoulli(params.sigma)) to_i.push_back(v);
        } else if (state[v] == kStateI) {
          if (rng.bernoulli(params.gamma)) to_r.push_back(v);
        }
      }
      for (uint32_t v : to_e) state[v] = kStateE;
      for (uint32_t v : to_i) state[v] = kStateI;
      for (uint32_t v : to_r) state[v] = kStateR;
      count_s -= static_cast<uint32_t>(to_e.size());
      count_e += static_cast<uint32_t>(to_e.size()) - static_cast<uint32_t>(to_i.size());
      count_i += static_cast<uint32_t>(to_i.size()) - static_cast<uint32_t>(to_r.size());
      count_r += static_cast<uint32_t>(to_r.size());
      cumulative += static_cast<uint32_t>(to_e.size());
    }
    record(count_s, count_e, count_i, count_r, cumulative);
    if (audit) audit->daily_state.push_back(state);
  }
  return trace;
}

EpidemicMetrics run_metrics(const SeirTrace& trace, uint32_t population,
                            uint32_t initial_infected) {
  EpidemicMetrics m;
  const auto& cum = trace.cumulative;
  const double target = 2.0 * initial_infected;

  if (!cum.empty() && cum.front() >= target) {
    m.doubling_time = 0.0;
  } else {
    for (size_t d = 1; d < cum.size(); ++d) {
      if (cum[d] >= target) {
        // Linear interpolation between the bracketing days.
        double lo = cum[d - 1], hi = cum[d];
        m.doubling_time = (d - 1) + (target - lo) / (hi - lo);
        break;
      }
    }
  }

  if (!cum.empty())
    m.total_infected_fraction = 100.0 * cum.back() / population;

  uint32_t peak = 0;
  size_t peak_day = 0;
  for (size_t d = 0; d < trace.i.size(); ++d) {
    if (trace.i[d] > peak) {
      peak = trace.i[d];
      peak_day = d;
    }
  }
  m.peak_infected_time = static_cast<double>(peak_day);
  m.peak_infected_fraction = 100.0 * peak / population;
  return m;
}

double EnsembleStats::tinf_stderr() const {
  return runs > 0 ? stddev.total_infected_fraction / std::sqrt(static_cast<double>(runs)) : 0.0;
}

EnsembleStats ensemble_with(
    const ContactGraph& g, const SeirParams& params,
    const std::function<std::vector<uint32_t>(uint32_t, uint64_t)>& quarantine_provider) {
  params.validate();
  const uint32_t runs = params.runs;
  std::vector<SeirTrace> traces(runs);
  std::vector<EpidemicMetrics> metrics(runs);

  parallel_blocks(runs, 1, [&](size_t, size_t lo, size_t hi) {
    for (size_t rix = lo; rix < hi; ++rix) {
      uint64_t run_seed = derive_seed(params.seed, rix);
      auto quarantine = quarantine_provider(static_cast<uint32_t>(rix), run_seed);
      traces[rix] = simulate(g, params, quarantine, run_seed);
      metrics[rix] = run_metrics(traces[rix], traces[rix].population, params.initial_infected);
    }
  });

  EnsembleStats out;
  out.runs = runs;

  // Welford-free two-pass aggregation in run order.
  auto mean_std = [&](auto getter) {
    double sum = 0.0;
    for (const auto& m : metrics) sum += getter(m);
    double mean = sum / runs;
    double ss = 0.0;
    for (const auto& m : metrics) {
      double d = getter(m) - mean;
      ss += d * d;
    }
    double sd = runs > 1 ? std::sqrt(ss / (runs - 1)) : 0.0;
    return std::make_pair(mean, sd);
  };

  std::tie(out.mean.total_infected_fraction, out.stddev.total_infected_fraction) =
      mean_std([](const EpidemicMetrics& m) { return m.total_infected_fraction; });
  std::tie(out.mean.peak_infected_time, out.stddev.peak_infected_time) =
      mean_std([](const EpidemicMetrics& m) { return m.peak_infected_time; });
  std::tie(out.mean.peak_infected_fraction, out.stddev.peak_infected_fraction) =
      mean_std([](const EpidemicMetrics& m) { return m.peak_infected_fraction; });

  double db_sum = 0.0;
  uint32_t db_n = 0;
  for (const auto& m : metrics) {
    if (m.doubling_time) {
      db_sum += *m.doubling_time;
      ++db_n;
    }
  }
  out.undefined_doubling_runs = runs - db_n;
  if (db_n > 0) {
    double mean = db_sum / db_n;
    double ss = 0.0;
    for (const auto& m : metrics)
      if (m.doubling_time) ss += (*m.doubling_time - mean) * (*m.doubling_time - mean);
    out.mean.doubling_time = mean;
    out.stddev.doubling_time = db_n > 1 ? std::sqrt(ss / (db_n - 1)) : 0.0;
  }

  const size_t days = traces.front().days();
  out.mean_s.assign(days, 0.0);
  out.mean_e.assign(days, 0.0);
  out.mean_i.assign(days, 0.0);
  out.mean_r.assign(days, 0.0);
  out.mean_q.assign(days, 0.0);
  out.mean_cumulative.assign(days, 0.0);
  for (const auto& t : traces) {
    for (size_t d = 0; d < days; ++d) {
      out.mean_s[d] += t.s[d];
      out.mean_e[d] += t.e[d];
      out.mean_i[d] += t.i[d];
      out.mean_r[d] += t.r[d];
      out.mean_q[d] += t.q[d];
      out.mean_cumulative[d] += t.cumulative[d];
    }
  }
  for (size_t d = 0; d < days; ++d) {
    out.mean_s[d] /= runs;
    out.mean_e[d] /= runs;
    out.mean_i[d] /= runs;
    out.mean_r[d] /= runs;
    out.mean_q[d] /= runs;
    out.mean_cumulative[d] /= runs;
  }
  return out;
}

EnsembleStats ensemble(const ContactGraph& g, const SeirParams& params,
                       const std::vector<uint32_t>& quarantine) {
  return ensemble_with(g, params,
                       [&quarantine](uint32_t, uint64_t) { return quarantine; });
}

}  // namespace tracenet
