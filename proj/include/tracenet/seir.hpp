// Discrete-time stochastic SEIR simulation on a directed contact graph.
//
// Day 0 places the quarantine set in Q (removed from dynamics for the whole
// run) and seeds the initial infectious set uniformly at random among the
// rest. Each subsequent day, synchronously on the previous day's state:
//   S with k infectious in-neighbors -> E with probability 1 - (1-beta)^k
//   E -> I with probability sigma
//   I -> R with probability gamma
// A run ends when E+I hits zero or at max_days; the trace is padded with the
// final state so every trace spans day 0..max_days.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tracenet/contact.hpp"

namespace tracenet {

struct SeirParams {
  double beta = 0.155;          // per-contact daily transmission probability
  double sigma = 1.0 / 5.2;     // daily E -> I progression probability
  double gamma = 1.0 / 12.39;   // daily I -> R recovery probability
  uint32_t initial_infected = 50;
  uint32_t max_days = 150;
  uint32_t runs = 50;
  uint64_t seed = 0;

  void validate() const;  // rates in range, runs/max_days >= 1
};

struct SeirTrace {
  uint32_t population = 0;
  std::vector<uint32_t> s, e, i, r, q;
  std::vector<uint32_t> cumulative;  // ever exposed+infectious+recovered
  size_t days() const { return s.size(); }  // max_days + 1 entries
};

struct EpidemicMetrics {
  std::optional<double> doubling_time;   // absent if cumulative never doubles
  double total_infected_fraction = 0.0;  // percent of N
  double peak_infected_time = 0.0;       // day of max I, earliest on ties
  double peak_infected_fraction = 0.0;   // percent of N
};

// Optional audit trail: full per-day compartment state of every vertex.
struct SimAudit {
  std::vector<std::vector<uint8_t>> daily_state;  // [day][vertex], SEIRQ codes
};

inline constexpr uint8_t kStateS = 0, kStateE = 1, kStateI = 2, kStateR = 3, kStateQ = 4;

// Bit-identical for identical (graph, params, quarantine, seed).
SeirTrace simulate(const ContactGraph& g, const SeirParams& params,
                   const std::vector<uint32_t>& quarantine, uint64_t seed,
                   SimAudit* audit = nullptr);

EpidemicMetrics run_metrics(const SeirTrace& trace, uint32_t population,
                            uint32_t initial_infected);

struct EnsembleStats {
  EpidemicMetrics mean;
  EpidemicMetrics stddev;              // sample stddev; 0 when runs == 1
  uint32_t runs = 0;
  uint32_t undefined_doubling_runs = 0;  // excluded from the doubling mean
  // Ensemble-mean daily trace.
  std::vector<double> mean_s, mean_e, mean_i, mean_r, mean_q, mean_cumulative;

  double tinf_stderr() const;
};

// Fixed quarantine set for all runs; run i uses seed derive_seed(params.seed, i).
EnsembleStats ensemble(const ContactGraph& g, const SeirParams& params,
                       const std::vector<uint32_t>& quarantine);

// Re-draws the quarantine set per run (provider receives the run index and
// its derived seed). Runs execute in parallel; aggregation is by run index.
EnsembleStats ensemble_with(
    const ContactGraph& g, const SeirParams& params,
    const std::function<std::vector<uint32_t>(uint32_t, uint64_t)>& quarantine_provider);

}  // namespace tracenet
