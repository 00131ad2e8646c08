#include "tracenet/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tracenet/util.hpp"

namespace tracenet {

namespace {
constexpr uint64_t kSaltRow = 0x51;
constexpr uint64_t kSaltCell = 0x52;
constexpr uint64_t kSaltRandomDraw = 0x53;
}  // namespace

const char* strategy_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::NoQuarantine: return "no_quarantine";
    case StrategyKind::Random: return "random";
    case StrategyKind::SymCentrality: return "symc";
    case StrategyKind::HybridCentrality: return "hybrid";
  }
  return "?";
}

void Strategy::validate() const {
  const bool wants_measure =
      kind == StrategyKind::SymCentrality || kind == StrategyKind::HybridCentrality;
  if (wants_measure != measure.has_value())
    throw std::invalid_argument("strategy measure must be present exactly for centrality kinds");
  if (kind == StrategyKind::NoQuarantine && k != 0)
    throw std::invalid_argument("no_quarantine strategy must have k = 0");
}

uint32_t scale_to_population(uint32_t value, size_t population) {
  if (population == kReferencePopulation) return value;
  double scaled = static_cast<double>(value) * static_cast<double>(population) /
                  static_cast<double>(kReferencePopulation);
  auto rounded = static_cast<uint32_t>(std::llround(scaled));
  if (value > 0 && rounded == 0) rounded = 1;
  return rounded;
}

std::vector<Strategy> full_strategy_matrix(uint32_t k) {
  std::vector<Strategy> out;
  out.push_back({StrategyKind::NoQuarantine, std::nullopt, 0});
  out.push_back({StrategyKind::Random, std::nullopt, k});
  for (Measure m : {Measure::Degree, Measure::Closeness, Measure::Betweenness}) {
    out.push_back({StrategyKind::SymCentrality, m, k});
    out.push_back({StrategyKind::HybridCentrality, m, k});
  }
  return out;
}

namespace {

std::vector<uint32_t> random_vertices(const ContactGraph& g, uint32_t k, uint64_t seed) {
  Rng rng(seed);
  return rng.sample_indices(static_cast<uint32_t>(g.num_vertices()), k);
}

std::vector<uint32_t> top_indices(const CentralityScores& scores, uint32_t k) {
  return {scores.ranking.begin(), scores.ranking.begin() + k};
}

}  // namespace

std::vector<std::string> select_quarantine(const Strategy& strategy, const ContactGraph& sym,
                                           const ContactGraph& hybrid, uint64_t rng_seed) {
  strategy.validate();
  if (strategy.k > hybrid.num_vertices())
    throw std::invalid_argument("quarantine count exceeds population");
  std::vector<uint32_t> idx;
  const ContactGraph* g = &hybrid;
  switch (strategy.kind) {
    case StrategyKind::NoQuarantine:
      return {};
    case StrategyKind::Random:
      idx = random_vertices(hybrid, strategy.k, rng_seed);
      break;
    case StrategyKind::SymCentrality:
      g = &sym;
      idx = top_indices(compute_centrality(sym, *strategy.measure), strategy.k);
      break;
    case StrategyKind::HybridCentrality:
      idx = top_indices(compute_centrality(hybrid, *strategy.measure), strategy.k);
      break;
  }
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (uint32_t v : idx) out.push_back(g->person(v));
  return out;
}

ExperimentReport run_table(std::span<const Strategy> strategies, const ContactGraph& sym,
                           const ContactGraph& hybrid, const SeirParams& params) {
  if (sym.num_vertices() != hybrid.num_vertices())
    throw std::invalid_argument("run_table: graphs must share one vertex set");
  params.validate();

  const auto n = static_cast<uint32_t>(hybrid.num_vertices());
  SeirParams scaled = params;
  scaled.initial_infected = scale_to_population(params.initial_infected, n);

  ExperimentReport report;
  report.master_seed = params.seed;
  report.population = n;
  report.initial_effective = scaled.initial_infected;

  // Centrality rankings are shared across rows; compute lazily once.
  std::optional<CentralityScores> sym_scores[3], hybrid_scores[3];
  auto ranked = [&](const ContactGraph& g, Measure m, bool is_sym) -> const CentralityScores& {
    auto& slot = (is_sym ? sym_scores : hybrid_scores)[static_cast<int>(m)];
    if (!slot) slot = compute_centrality(g, m);
    return *slot;
  };

  for (size_t row = 0; row < strategies.size(); ++row) {
    Strategy st = strategies[row];
    st.validate();
    const uint32_t k_eff = st.kind == StrategyKind::NoQuarantine
                               ? 0
                               : scale_to_population(st.k, n);
    if (k_eff > n) throw std::invalid_argument("quarantine count exceeds population");
    report.k_effective = std::max(report.k_effective, k_eff);

    SeirParams row_params = scaled;
    row_params.seed = derive_seed(params.seed, kSaltRow + row);

    EnsembleStats stats;
    switch (st.kind) {
      case StrategyKind::NoQuarantine:
        stats = ensemble(hybrid, row_params, {});
        break;
      case StrategyKind::Random:
        // Re-drawn per run: the baseline's variance includes selection noise.
        stats = ensemble_with(hybrid, row_params, [&](uint32_t run, uint64_t) {
          return random_vertices(hybrid, k_eff,
                                 derive_seed(row_params.seed, kSaltRandomDraw + run));
        });
        break;
      case StrategyKind::SymCentrality: {
        auto idx = top_indices(ranked(sym, *st.measure, true), k_eff);
        // Sym rankings name persons; map onto the hybrid graph's indices.
        std::vector<uint32_t> mapped;
        mapped.reserve(idx.size());
        for (uint32_t v : idx) {
          auto h = hybrid.index_of(sym.person(v));
          if (!h) throw std::invalid_argument("run_table: graphs do not share a vertex set");
          mapped.push_back(*h);
        }
        stats = ensemble(hybrid, row_params, mapped);
        break;
      }
      case StrategyKind::HybridCentrality:
        stats = ensemble(hybrid, row_params, top_indices(ranked(hybrid, *st.measure, false), k_eff));
        break;
    }
    report.rows.push_back({st, std::move(stats), std::nullopt});
  }

  // Parenthesized deltas: Hybrid row minus the SymC row of the same measure.
  for (auto& row : report.rows) {
    if (row.strategy.kind != StrategyKind::HybridCentrality) continue;
    for (const auto& other : report.rows) {
      if (other.strategy.kind != StrategyKind::SymCentrality ||
          other.strategy.measure != row.strategy.measure)
        continue;
      MetricDeltas d;
      if (row.stats.mean.doubling_time && other.stats.mean.doubling_time)
        d.doubling_time = *row.stats.mean.doubling_time - *other.stats.mean.doubling_time;
      d.total_infected_fraction =
          row.stats.mean.total_infected_fraction - other.stats.mean.total_infected_fraction;
      d.peak_infected_time = row.stats.mean.peak_infected_time - other.stats.mean.peak_infected_time;
      d.peak_infected_fraction =
          row.stats.mean.peak_infected_fraction - other.stats.mean.peak_infected_fraction;
      row.delta_vs_symc = d;
      break;
    }
  }
  return report;
}

SweepGrid budget_sweep(const ContactGraph& hybrid, Measure measure,
                       std::span<const double> infected_fracs,
                       std::span<const double> quarantine_fracs, const SeirParams& params) {
  params.validate();
  for (double f : infected_fracs)
    if (f < 0.0 || f > 100.0) throw std::invalid_argument("infected fraction out of [0,100]");
  for (double f : quarantine_fracs)
    if (f < 0.0 || f > 100.0) throw std::invalid_argument("quarantine fraction out of [0,100]");

  const auto n = static_cast<uint32_t>(hybrid.num_vertices());
  auto scores = compute_centrality(hybrid, measure);

  SweepGrid grid;
  grid.measure = measure;
  grid.infected_fracs.assign(infected_fracs.begin(), infected_fracs.end());
  grid.quarantine_fracs.assign(quarantine_fracs.begin(), quarantine_fracs.end());
  const size_t rows = infected_fracs.size(), cols = quarantine_fracs.size();
  grid.mean_tinf.assign(rows, std::vector<double>(cols, 0.0));
  grid.stderr_tinf.assign(rows, std::vector<double>(cols, 0.0));
  grid.feasible.assign(rows, std::vector<uint8_t>(cols, 1));

  auto count_of = [&](double frac) {
    return static_cast<uint32_t>(std::ceil(frac * n / 100.0));
  };

  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      const uint32_t n_inf = count_of(infected_fracs[r]);
      const uint32_t n_q = count_of(quarantine_fracs[c]);
      if (static_cast<uint64_t>(n_inf) + n_q > n) {
        grid.feasible[r][c] = 0;
        continue;
      }
      SeirParams cell = params;
      cell.initial_infected = n_inf;
      cell.seed = derive_seed(params.seed, kSaltCell + r * cols + c);
      auto stats = ensemble(hybrid, cell, top_indices(scores, n_q));
      grid.mean_tinf[r][c] = stats.mean.total_infected_fraction;
      grid.stderr_tinf[r][c] = stats.tinf_stderr();
    }
  }
  return grid;
}

std::optional<double> turning_point(const SweepGrid& grid, double threshold) {
  const size_t cols = grid.quarantine_fracs.size();
  if (cols < 2) return std::nullopt;
  for (size_t c = 1; c < cols; ++c) {
    double gain_sum = 0.0;
    size_t rows_used = 0;
    for (size_t r = 0; r < grid.infected_fracs.size(); ++r) {
      if (!grid.feasible[r][c - 1] || !grid.feasible[r][c]) continue;
      gain_sum += grid.mean_tinf[r][c - 1] - grid.mean_tinf[r][c];
      ++rows_used;
    }
    if (rows_used == 0) return grid.quarantine_fracs[c - 1];
    const double step = grid.quarantine_fracs[c] - grid.quarantine_fracs[c - 1];
    const double gain_per_5pct = (gain_sum / rows_used) * (5.0 / step);
    if (gain_per_5pct < threshold) return grid.quarantine_fracs[c - 1];
  }
  return grid.quarantine_fracs.back();
}

}  // namespace tracenet
