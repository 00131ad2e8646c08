// Artifact file formats. Every CSV begins with a comment line
//   # config_hash=<hex> master_seed=<decimal>
// and every JSON artifact carries the same pair under "meta", so each output
// names the configuration and seed that produced it. Readers skip '#' lines.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tracenet/analysis.hpp"
#include "tracenet/centrality.hpp"
#include "tracenet/contact.hpp"
#include "tracenet/harness.hpp"
#include "tracenet/seir.hpp"
#include "tracenet/trajectory.hpp"
#include "tracenet/wlan_log.hpp"

namespace tracenet {

struct Meta {
  uint64_t config_hash = 0;
  uint64_t master_seed = 0;
  std::string comment_line() const;
  void attach(nlohmann::json& j) const;
};

// Validated event stream, one row per accepted log entry, file order:
//   timestamp,person_id,ap_id,ap_name,building_id
void write_events(const std::string& path, std::span<const LogEntry> entries,
                  const ApDirectory& dir, const Meta& meta);
// Rebuilds the entries plus an AP table equivalent to the ingest directory.
std::pair<std::vector<LogEntry>, ApDirectory> read_events(const std::string& path);

// person_id,ap_id,arrival_time,stay_time ordered by person then time.
void write_trajectories(const std::string& path, std::span<const Trajectory> trajectories,
                        const Meta& meta);
std::vector<Trajectory> read_trajectories(const std::string& path);

// Graph artifacts live under a common prefix: <prefix>.edges.csv,
// <prefix>.vertices.csv and <prefix>.summary.json.
void write_graph(const std::string& prefix, const ContactGraph& g, const Meta& meta);
ContactGraph read_graph(const std::string& prefix);

// person_id,score,rank for all vertices plus <path>.topk.txt with the first
// k ids and <path>.summary.json with distribution statistics.
void write_ranking(const std::string& path, const ContactGraph& g, const CentralityScores& s,
                   size_t k, const Meta& meta);

std::vector<std::string> read_person_list(const std::string& path);

void write_trace_mean(const std::string& path, const EnsembleStats& stats, const Meta& meta);
void write_trace_run(const std::string& path, const SeirTrace& trace, const Meta& meta);
void write_metrics_json(const std::string& path, const EnsembleStats& stats, const Meta& meta);

// Table 1 / Table 2 shaped CSV: method, measure, the four metric means in
// paper column order, stddevs, undefined-doubling counts and hybrid-vs-symc
// delta columns.
void write_report(const std::string& path, const ExperimentReport& report, const Meta& meta);

// Matrix CSV with quarantine fractions as columns and infected fractions as
// rows; infeasible cells print "nan". The JSON sibling stores the stderr
// grid and the detected turning point.
void write_sweep(const std::string& csv_path, const std::string& json_path,
                 const SweepGrid& grid, double turning_threshold, const Meta& meta);

void write_similarity_matrix(const std::string& path, const SimilarityMatrix& m, const Meta& meta);

}  // namespace tracenet
