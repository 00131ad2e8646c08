// trace: WLAN-log contact tracing, superspreader ranking and SEIR
// intervention toolkit. Subcommands mirror the pipeline stages; `pipeline`
// runs them end to end. All randomness flows from one master seed and every
// artifact records the config hash and seed that produced it.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tracenet/analysis.hpp"
#include "tracenet/centrality.hpp"
#include "tracenet/config.hpp"
#include "tracenet/contact.hpp"
#include "tracenet/harness.hpp"
#include "tracenet/io.hpp"
#include "tracenet/seir.hpp"
#include "tracenet/synth.hpp"
#include "tracenet/trajectory.hpp"
#include "tracenet/util.hpp"
#include "tracenet/wlan_log.hpp"

namespace fs = std::filesystem;
using namespace tracenet;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::optional<uint64_t> seed;
  int threads = 0;
};

RunConfig load_config(const GlobalOpts& g, bool log_defaults = false) {
  RunConfig cfg;
  if (!g.config_path.empty()) {
    std::vector<std::string> defaulted;
    cfg = RunConfig::load(g.config_path, &defaulted);
    if (log_defaults && !defaulted.empty()) {
      std::cerr << "config: defaults applied for:";
      for (const auto& k : defaulted) std::cerr << ' ' << k;
      std::cerr << '\n';
    }
  }
  if (g.seed) {
    cfg.seed = *g.seed;
    cfg.synth.seed = *g.seed;
  }
  if (g.threads > 0) set_thread_budget(g.threads);
  cfg.validate();
  return cfg;
}

Meta meta_of(const RunConfig& cfg) { return Meta{cfg.hash(), cfg.seed}; }

// "YYYY-MM-DD" or "YYYY-MM-DD..YYYY-MM-DD" (end date inclusive).
std::pair<int64_t, int64_t> parse_window(const std::string& spec) {
  auto sep = spec.find("..");
  if (sep == std::string::npos) {
    auto day = parse_iso_date(spec);
    if (!day) throw std::runtime_error("bad --window date: " + spec);
    return {*day, *day + kSecondsPerDay};
  }
  auto lo = parse_iso_date(spec.substr(0, sep));
  auto hi = parse_iso_date(spec.substr(sep + 2));
  if (!lo || !hi || *hi < *lo) throw std::runtime_error("bad --window range: " + spec);
  return {*lo, *hi + kSecondsPerDay};
}

TrajectoryParams trajectory_params(const RunConfig& cfg, int64_t start, int64_t end) {
  TrajectoryParams p;
  p.session_timeout = cfg.session_timeout;
  p.max_terminal_stay = cfg.max_terminal_stay;
  p.window_start = start;
  p.window_end = end;
  return p;
}

std::vector<uint32_t> quarantine_indices(const ContactGraph& g,
                                         const std::vector<std::string>& ids) {
  std::vector<uint32_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    auto v = g.index_of(id);
    if (!v) throw std::runtime_error("quarantine person not in graph: " + id);
    out.push_back(*v);
  }
  return out;
}

// --- subcommand bodies -----------------------------------------------------

void cmd_synth(const RunConfig& cfg, const std::string& out, const std::string& manifest,
               std::string apdir, std::string walk) {
  if (apdir.empty()) apdir = out + ".apdir.csv";
  if (walk.empty()) walk = out + ".walk.csv";
  auto data = generate_campus(cfg.synth);
  write_campus(data, out, manifest, apdir, walk);
  std::cerr << "synth: " << data.log_lines.size() << " log lines, " << data.directory.size()
            << " APs\n";
}

void cmd_ingest(const RunConfig& cfg, const std::string& log, const std::string& apdir,
                const std::vector<std::string>& extra_ssids, const std::string& out) {
  auto dir = ApDirectory::load(apdir);
  std::set<std::string> drop = cfg.ssid_drop;
  drop.insert(extra_ssids.begin(), extra_ssids.end());
  ParseCounts pc;
  auto entries = parse_log_file(log, drop, pc);
  FilterCounts fc;
  auto valid = validate_and_filter(std::move(entries), dir, fc);
  write_events(out, valid, dir, meta_of(cfg));
  std::cerr << "ingest: lines=" << pc.lines << " accepted=" << pc.accepted
            << " malformed=" << pc.malformed << " invalid=" << pc.invalid
            << " ssid_filtered=" << pc.ssid_filtered << " dropped_failure=" << fc.dropped_failure
            << " dropped_empty=" << fc.dropped_empty_field
            << " dropped_unknown_ap=" << fc.dropped_unknown_ap << " events=" << fc.output << '\n';
}

void cmd_build(const RunConfig& cfg, const std::string& events_path, const std::string& walk_path,
               const std::string& window, const std::string& out) {
  auto [entries, dir] = read_events(events_path);
  auto walk = WalkTimeMatrix::load(walk_path, cfg.default_walk);
  int64_t lo = 0, hi = INT64_MAX;
  if (!window.empty()) std::tie(lo, hi) = parse_window(window);
  auto trajectories = build_trajectories(entries, dir, walk, trajectory_params(cfg, lo, hi));
  write_trajectories(out, trajectories, meta_of(cfg));
  size_t tracklets = 0;
  for (const auto& t : trajectories) tracklets += t.tracklets.size();
  std::cerr << "build: " << trajectories.size() << " trajectories, " << tracklets
            << " tracklets\n";
}

void cmd_graph(const RunConfig& cfg, const std::string& traj_path, const std::string& mode,
               const std::string& out) {
  auto trajectories = read_trajectories(traj_path);
  GraphMode m = mode == "sym"      ? GraphMode::Symmetric
                : mode == "asym"   ? GraphMode::Asymmetric
                : mode == "hybrid" ? GraphMode::Hybrid
                                   : throw std::runtime_error("bad --mode: " + mode);
  auto g = build_graph(trajectories, cfg.contact, m);
  write_graph(out, g, meta_of(cfg));
  std::cerr << "graph: " << g.num_vertices() << " vertices, " << g.num_arcs() << " arcs\n";
}

void cmd_rank(const RunConfig& cfg, const std::string& graph_prefix, const std::string& measure,
              uint32_t k, const std::string& out) {
  auto g = read_graph(graph_prefix);
  auto scores = compute_centrality(g, measure_from_name(measure));
  write_ranking(out, g, scores, std::min<size_t>(k, g.num_vertices()), meta_of(cfg));
  std::cerr << "rank: " << g.num_vertices() << " vertices ranked by " << measure << '\n';
}

void cmd_simulate(const RunConfig& cfg, const std::string& graph_prefix,
                  const std::string& quarantine_path, const std::string& out_dir, bool per_run) {
  auto g = read_graph(graph_prefix);
  std::vector<uint32_t> quarantine;
  if (!quarantine_path.empty())
    quarantine = quarantine_indices(g, read_person_list(quarantine_path));
  SeirParams params = cfg.seir;
  params.seed = cfg.seed;
  fs::create_directories(out_dir);
  auto stats = ensemble(g, params, quarantine);
  write_trace_mean((fs::path(out_dir) / "trace_mean.csv").string(), stats, meta_of(cfg));
  write_metrics_json((fs::path(out_dir) / "metrics.json").string(), stats, meta_of(cfg));
  if (per_run) {
    for (uint32_t r = 0; r < params.runs; ++r) {
      auto trace = simulate(g, params, quarantine, derive_seed(params.seed, r));
      char name[32];
      std::snprintf(name, sizeof(name), "trace_run_%03u.csv", r);
      write_trace_run((fs::path(out_dir) / name).string(), trace, meta_of(cfg));
    }
  }
  std::cerr << "simulate: runs=" << params.runs
            << " mean_t_inf=" << stats.mean.total_infected_fraction << "%\n";
}

void cmd_experiment(const RunConfig& cfg, const std::string& sym_prefix,
                    const std::string& hybrid_prefix, uint32_t k, const std::string& out_dir) {
  auto sym = read_graph(sym_prefix);
  auto hybrid = read_graph(hybrid_prefix);
  SeirParams params = cfg.seir;
  params.seed = cfg.seed;
  auto report = run_table(full_strategy_matrix(k), sym, hybrid, params);
  fs::create_directories(out_dir);
  write_report((fs::path(out_dir) / "report.csv").string(), report, meta_of(cfg));
  std::cerr << "experiment: " << report.rows.size() << " rows, population=" << report.population
            << '\n';
}

void cmd_sweep(const RunConfig& cfg, const std::string& hybrid_prefix, const std::string& measure,
               const std::string& out_dir) {
  auto hybrid = read_graph(hybrid_prefix);
  SeirParams params = cfg.seir;
  params.seed = cfg.seed;
  auto grid = budget_sweep(hybrid, measure_from_name(measure), cfg.sweep_infected_fracs,
                           cfg.sweep_quarantine_fracs, params);
  fs::create_directories(out_dir);
  write_sweep((fs::path(out_dir) / "sweep.csv").string(),
              (fs::path(out_dir) / "sweep.json").string(), grid, cfg.turning_threshold,
              meta_of(cfg));
  auto tp = turning_point(grid, cfg.turning_threshold);
  std::cerr << "sweep: " << grid.infected_fracs.size() << "x" << grid.quarantine_fracs.size()
            << " grid, turning_point=" << (tp ? format_double(*tp) + "%" : "none") << '\n';
}

void cmd_stability(const RunConfig& cfg, const std::string& traj_path, uint32_t weeks,
                   const std::string& measure, uint32_t k, const std::string& out) {
  auto store = read_trajectories(traj_path);
  if (weeks == 0) {
    // Auto: every full-or-partial week the store spans.
    int64_t first = INT64_MAX, last = INT64_MIN;
    for (const auto& t : store)
      for (const auto& tk : t.tracklets) {
        first = std::min(first, tk.arrival);
        last = std::max(last, tk.arrival);
      }
    if (first > last) throw std::runtime_error("stability: empty trajectory store");
    weeks = static_cast<uint32_t>((last - floor_day(first)) / kSecondsPerWeek + 1);
  }
  auto m = accumulated_week_matrix(store, weeks, measure_from_name(measure), k, cfg.contact,
                                   cfg.rbo_p);
  write_similarity_matrix(out, m, meta_of(cfg));
  std::cerr << "stability: " << weeks << " accumulated windows\n";
}

void cmd_pipeline(const RunConfig& cfg, const std::string& log, std::string apdir,
                  std::string walk, const std::string& out_dir) {
  if (apdir.empty()) apdir = log + ".apdir.csv";
  if (walk.empty()) walk = log + ".walk.csv";
  fs::create_directories(out_dir);
  auto path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

  std::string stage = "config";
  try {
    {
      std::ofstream out(path("config_frozen.json"));
      nlohmann::json j = cfg.to_json();
      meta_of(cfg).attach(j);
      out << j.dump(2) << '\n';
    }

    stage = "ingest";
    cmd_ingest(cfg, log, apdir, {}, path("events.csv"));

    stage = "build";
    cmd_build(cfg, path("events.csv"), walk, "", path("trajectories.csv"));

    // Single-day window for the daily graphs, offset from the first event day.
    stage = "build-daily";
    auto [entries, dir] = read_events(path("events.csv"));
    int64_t first_event = INT64_MAX;
    for (const auto& e : entries) first_event = std::min(first_event, e.timestamp);
    if (first_event == INT64_MAX) throw std::runtime_error("no events after ingest");
    const int64_t day_lo =
        floor_day(first_event) + static_cast<int64_t>(cfg.pipeline_daily_day) * kSecondsPerDay;
    cmd_build(cfg, path("events.csv"), walk, format_iso_date(day_lo), path("trajectories_daily.csv"));

    stage = "graph";
    for (const char* mode : {"sym", "asym", "hybrid"})
      cmd_graph(cfg, path("trajectories_daily.csv"), mode, path(std::string("graph_daily_") + mode));

    stage = "rank";
    for (const char* mode : {"sym", "asym", "hybrid"})
      for (const char* m : {"degree", "closeness", "betweenness"})
        cmd_rank(cfg, path(std::string("graph_daily_") + mode), m, cfg.quarantine_k,
                 path(std::string("rank_daily_") + mode + "_" + m + ".csv"));

    stage = "experiment";
    cmd_experiment(cfg, path("graph_daily_sym"), path("graph_daily_hybrid"), cfg.quarantine_k,
                   out_dir);

    stage = "sweep";
    cmd_sweep(cfg, path("graph_daily_hybrid"), cfg.sweep_measure, out_dir);

    stage = "stability";
    cmd_stability(cfg, path("trajectories.csv"), cfg.stability_weeks, cfg.sweep_measure,
                  cfg.quarantine_k, path("stability.csv"));
  } catch (const std::exception& e) {
    throw std::runtime_error("pipeline stage '" + stage + "' failed: " + e.what());
  }
  std::cerr << "pipeline: artifacts in " << out_dir << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WLAN-log contact tracing and superspreader detection toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "Shared JSON config file")->expected(1);
  uint64_t seed_flag = 0;
  auto* seed_opt = app.add_option("--seed", seed_flag, "Master seed (overrides config)");
  app.add_option("--threads", g.threads, "Worker thread budget");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic campus WLAN log");
  std::string synth_spec, synth_out, synth_manifest, synth_apdir, synth_walk;
  synth->add_option("--spec", synth_spec, "Config file holding the synth section");
  synth->add_option("--out", synth_out, "Output log path")->required();
  synth->add_option("--manifest", synth_manifest, "Ground-truth manifest JSON")->required();
  synth->add_option("--ap-dir-out", synth_apdir, "AP directory CSV (default <log>.apdir.csv)");
  synth->add_option("--walk-out", synth_walk, "Walk matrix CSV (default <log>.walk.csv)");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Parse and validate a raw WLAN log");
  std::string in_log, in_apdir, in_out;
  std::vector<std::string> in_ssids;
  ingest->add_option("--log", in_log, "Raw log file")->required();
  ingest->add_option("--ap-dir", in_apdir, "AP directory CSV")->required();
  ingest->add_option("--ssid", in_ssids, "SSID to drop (repeatable)");
  ingest->add_option("--out", in_out, "Validated events CSV")->required();

  // build
  auto* build = app.add_subcommand("build", "Build trajectories from validated events");
  std::string b_events, b_walk, b_window, b_out;
  build->add_option("--events", b_events, "Events CSV")->required();
  build->add_option("--walk", b_walk, "Walking-time CSV")->required();
  build->add_option("--window", b_window, "ISO date or date..date (inclusive)");
  build->add_option("--out", b_out, "Trajectory CSV")->required();

  // graph
  auto* graph = app.add_subcommand("graph", "Build a contact graph from trajectories");
  std::string gr_traj, gr_mode = "hybrid", gr_out;
  graph->add_option("--trajectories", gr_traj, "Trajectory CSV")->required();
  graph->add_option("--mode", gr_mode, "sym|asym|hybrid");
  graph->add_option("--out", gr_out, "Output prefix")->required();

  // rank
  auto* rank = app.add_subcommand("rank", "Score and rank vertices of a graph");
  std::string rk_graph, rk_measure = "degree", rk_out;
  uint32_t rk_k = 0;
  rank->add_option("--graph", rk_graph, "Graph prefix")->required();
  rank->add_option("--measure", rk_measure, "degree|closeness|betweenness");
  auto* rk_k_opt = rank->add_option("--k", rk_k, "Top-k list length (default config harness.k)");
  rank->add_option("--out", rk_out, "Ranking CSV path")->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run a SEIR ensemble on a graph");
  std::string sm_graph, sm_quarantine, sm_params, sm_out;
  bool sm_per_run = false;
  sim->add_option("--graph", sm_graph, "Graph prefix")->required();
  sim->add_option("--quarantine", sm_quarantine, "Person list to quarantine");
  sim->add_option("--params", sm_params, "Config file (alias of --config)");
  sim->add_option("--out", sm_out, "Output directory")->required();
  sim->add_flag("--per-run", sm_per_run, "Also write each run's trace");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Strategy-by-measure results table");
  std::string ex_sym, ex_hybrid, ex_params, ex_out;
  uint32_t ex_k = 0;
  exp->add_option("--sym", ex_sym, "Symmetric graph prefix")->required();
  exp->add_option("--hybrid", ex_hybrid, "Hybrid graph prefix")->required();
  exp->add_option("--params", ex_params, "Config file (alias of --config)");
  auto* ex_k_opt = exp->add_option("--k", ex_k, "Quarantine count before scaling");
  exp->add_option("--out", ex_out, "Output directory")->required();

  // sweep
  auto* swp = app.add_subcommand("sweep", "Initial-infected x quarantine budget sweep");
  std::string sw_hybrid, sw_measure, sw_out;
  swp->add_option("--hybrid", sw_hybrid, "Hybrid graph prefix")->required();
  swp->add_option("--measure", sw_measure, "Centrality measure (default config)");
  swp->add_option("--out", sw_out, "Output directory")->required();

  // stability
  auto* stab = app.add_subcommand("stability", "Accumulated-week RBO similarity matrix");
  std::string st_traj, st_measure, st_out;
  uint32_t st_weeks = 0, st_k = 0;
  stab->add_option("--trajectories", st_traj, "Trajectory CSV (full span)")->required();
  stab->add_option("--weeks", st_weeks, "Accumulated weeks (default: all available)");
  stab->add_option("--measure", st_measure, "Centrality measure (default config)");
  auto* st_k_opt = stab->add_option("--k", st_k, "Ranked list length");
  stab->add_option("--out", st_out, "Matrix CSV path")->required();

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "ingest -> build -> graph -> rank -> experiment -> sweep -> stability");
  std::string pl_log, pl_apdir, pl_walk, pl_out;
  pipe->add_option("--log", pl_log, "Raw log file")->required();
  pipe->add_option("--ap-dir", pl_apdir, "AP directory CSV (default <log>.apdir.csv)");
  pipe->add_option("--walk", pl_walk, "Walk matrix CSV (default <log>.walk.csv)");
  pipe->add_option("--out", pl_out, "Artifact directory")->required();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) g.seed = seed_flag;

  try {
    if (*synth) {
      if (!synth_spec.empty()) g.config_path = synth_spec;
      auto cfg = load_config(g, true);
      cmd_synth(cfg, synth_out, synth_manifest, synth_apdir, synth_walk);
    } else if (*ingest) {
      auto cfg = load_config(g);
      cmd_ingest(cfg, in_log, in_apdir, in_ssids, in_out);
    } else if (*build) {
      auto cfg = load_config(g);
      cmd_build(cfg, b_events, b_walk, b_window, b_out);
    } else if (*graph) {
      auto cfg = load_config(g);
      cmd_graph(cfg, gr_traj, gr_mode, gr_out);
    } else if (*rank) {
      auto cfg = load_config(g);
      cmd_rank(cfg, rk_graph, rk_measure, rk_k_opt->count() ? rk_k : cfg.quarantine_k, rk_out);
    } else if (*sim) {
      if (!sm_params.empty()) g.config_path = sm_params;
      auto cfg = load_config(g);
      cmd_simulate(cfg, sm_graph, sm_quarantine, sm_out, sm_per_run);
    } else if (*exp) {
      if (!ex_params.empty()) g.config_path = ex_params;
      auto cfg = load_config(g);
      cmd_experiment(cfg, ex_sym, ex_hybrid, ex_k_opt->count() ? ex_k : cfg.quarantine_k, ex_out);
    } else if (*swp) {
      auto cfg = load_config(g);
      cmd_sweep(cfg, sw_hybrid, sw_measure.empty() ? cfg.sweep_measure : sw_measure, sw_out);
    } else if (*stab) {
      auto cfg = load_config(g);
      cmd_stability(cfg, st_traj, st_weeks ? st_weeks : cfg.stability_weeks,
                    st_measure.empty() ? cfg.sweep_measure : st_measure,
                    st_k_opt->count() ? st_k : cfg.quarantine_k, st_out);
    } else if (*pipe) {
      auto cfg = load_config(g, true);
      cmd_pipeline(cfg, pl_log, pl_apdir, pl_walk, pl_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
