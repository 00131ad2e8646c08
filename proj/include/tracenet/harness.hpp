// Experiment harness: quarantine strategies, the strategy-by-measure results
// table, and the (initial infected %, quarantined %) budget sweep. Epidemics
// always run on the hybrid graph; strategies differ only in how the
// quarantine set is chosen.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tracenet/centrality.hpp"
#include "tracenet/seir.hpp"

namespace tracenet {

enum class StrategyKind : uint8_t { NoQuarantine, Random, SymCentrality, HybridCentrality };

const char* strategy_name(StrategyKind k);

struct Strategy {
  StrategyKind kind;
  std::optional<Measure> measure;  // present iff kind is Sym/HybridCentrality
  uint32_t k = 0;                  // quarantine count; 0 for NoQuarantine

  void validate() const;
};

// Reference population the paper's constants were stated for; counts scale
// as round(value * N / 3748) on differently sized graphs.
inline constexpr uint32_t kReferencePopulation = 3748;
uint32_t scale_to_population(uint32_t value, size_t population);

// The paper's full table: NoQuarantine, Random, then SymC/Hybrid per measure.
std::vector<Strategy> full_strategy_matrix(uint32_t k);

// Quarantine set for one strategy. Random draws k vertices from rng_seed;
// centrality strategies are deterministic top-k picks and ignore the seed.
std::vector<std::string> select_quarantine(const Strategy& strategy, const ContactGraph& sym,
                                           const ContactGraph& hybrid, uint64_t rng_seed);

struct MetricDeltas {
  std::optional<double> doubling_time;
  double total_infected_fraction = 0.0;
  double peak_infected_time = 0.0;
  double peak_infected_fraction = 0.0;
};

struct ReportRow {
  Strategy strategy;
  EnsembleStats stats;
  std::optional<MetricDeltas> delta_vs_symc;  // Hybrid rows only
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  uint64_t master_seed = 0;
  uint32_t population = 0;
  uint32_t k_effective = 0;
  uint32_t initial_effective = 0;
};

// One ensemble per strategy. The Random baseline re-draws its quarantine set
// every run. initial_infected and each strategy's k are scaled to the graph
// population before running.
ExperimentReport run_table(std::span<const Strategy> strategies, const ContactGraph& sym,
                           const ContactGraph& hybrid, const SeirParams& params);

struct SweepGrid {
  Measure measure;
  std::vector<double> infected_fracs;    // percent, grid rows
  std::vector<double> quarantine_fracs;  // percent, grid columns
  std::vector<std::vector<double>> mean_tinf;
  std::vector<std::vector<double>> stderr_tinf;
  std::vector<std::vector<uint8_t>> feasible;  // 0 when counts exceed N
};

// Grid of ensemble-mean total infected fractions. Quarantine sets are the
// top ceil(q*N/100) vertices by `measure` on the hybrid graph; initial
// infections are ceil(i*N/100) seeds.
SweepGrid budget_sweep(const ContactGraph& hybrid, Measure measure,
                       std::span<const double> infected_fracs,
                       std::span<const double> quarantine_fracs, const SeirParams& params);

// Smallest quarantine fraction q such that the next grid step reduces the
// row-averaged mean T-Inf by less than `threshold` percentage points per 5%
// of additional quarantine. Falls back to the last column if the gain never
// drops below the threshold; nullopt when the grid has fewer than 2 columns.
std::optional<double> turning_point(const SweepGrid& grid, double threshold);

}  // namespace tracenet
