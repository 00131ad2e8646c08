#include "tracenet/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tracenet/util.hpp"

namespace tracenet {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return in;
}

// Yields non-comment, non-empty lines.
bool next_row(std::ifstream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    return true;
  }
  return false;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("nan");
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace

std::string Meta::comment_line() const {
  return "# config_hash=" + hex64(config_hash) + " master_seed=" + std::to_string(master_seed);
}

void Meta::attach(nlohmann::json& j) const {
  j["meta"] = {{"config_hash", hex64(config_hash)}, {"master_seed", master_seed}};
}

void write_events(const std::string& path, std::span<const LogEntry> entries,
                  const ApDirectory& dir, const Meta& meta) {
  auto out = open_out(path);
  out << meta.comment_line() << '\n';
  out << "timestamp,person_id,ap_id,ap_name,building_id\n";
  for (const auto& e : entries) {
    auto ap = dir.resolve(e.ap_name);
    if (!ap) throw std::runtime_error("write_events: unresolvable AP " + e.ap_name);
    out << e.timestamp << ',' << e.student_id << ',' << *ap << ',' << e.ap_name << ','
        << dir.building(*ap) << '\n';
  }
}

std::pair<std::vector<LogEntry>, ApDirectory> read_events(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!next_row(in, line) || line != "timestamp,person_id,ap_id,ap_name,building_id")
    throw std::runtime_error(path + ": not an events file");
  std::vector<LogEntry> entries;
  // ap_id -> (name, building); ids must stay identical to the ingest run.
  std::map<uint32_t, std::pair<std::string, std::string>> ap_rows;
  while (next_row(in, line)) {
    auto f = split_csv(line);
    if (f.size() != 5) throw std::runtime_error(path + ": bad events row: " + line);
    auto ts = parse_i64(f[0]);
    auto ap_id = parse_i64(f[2]);
    if (!ts || !ap_id || *ap_id < 0 || f[1].empty() || f[3].empty() || f[4].empty())
      throw std::runtime_error(path + ": bad events row: " + line);
    LogEntry e;
    e.timestamp = *ts;
    e.student_id = std::string(f[1]);
    e.ap_name = std::string(f[3]);
    e.result = AuthResult::Success;
    entries.push_back(std::move(e));
    ap_rows[static_cast<uint32_t>(*ap_id)] = {std::string(f[3]), std::string(f[4])};
  }
  ApDirectory dir;
  uint32_t next_id = 0;
  for (const auto& [id, info] : ap_rows) {
    // Fill directory gaps so ids keep their original positions.
    while (next_id < id) {
      dir.add("__gap_" + std::to_string(next_id), "__gap");
      ++next_id;
    }
    dir.add(info.first, info.second);
    ++next_id;
  }
  return {std::move(entries), std::move(dir)};
}

void write_trajectories(const std::string& path, std::span<const Trajectory> trajectories,
                        const Meta& meta) {
  auto out = open_out(path);
  out << meta.comment_line() << '\n';
  out << "person_id,ap_id,arrival_time,stay_time\n";
  for (const auto& t : trajectories)
    for (const auto& tk : t.tracklets)
      out << t.person_id << ',' << tk.ap_id << ',' << tk.arrival << ',' << tk.stay << '\n';
}

std::vector<Trajectory> read_trajectories(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!next_row(in, line) || line != "person_id,ap_id,arrival_time,stay_time")
    throw std::runtime_error(path + ": not a trajectory file");
  std::vector<Trajectory> out;
  while (next_row(in, line)) {
    auto f = split_csv(line);
    if (f.size() != 4) throw std::runtime_error(path + ": bad trajectory row: " + line);
    auto ap = parse_i64(f[1]);
    auto arr = parse_i64(f[2]);
    auto stay = parse_i64(f[3]);
    if (f[0].empty() || !ap || !arr || !stay || *ap < 0 || *stay < 0)
      throw std::runtime_error(path + ": bad trajectory row: " + line);
    if (out.empty() || out.back().person_id != f[0]) {
      Trajectory t;
      t.person_id = std::string(f[0]);
      out.push_back(std::move(t));
    }
    out.back().tracklets.push_back(
        {static_cast<uint32_t>(*ap), *arr, *stay});
  }
  return out;
}

namespace {
std::string kind_token(uint8_t kinds) {
  if (kinds == (kArcSymmetric | kArcAsymmetric)) return "sym+asym";
  if (kinds == kArcSymmetric) return "sym";
  if (kinds == kArcAsymmetric) return "asym";
  throw std::runtime_error("arc with empty kind tags");
}

uint8_t kinds_from_token(std::string_view t) {
  if (t == "sym+asym") return kArcSymmetric | kArcAsymmetric;
  if (t == "sym") return kArcSymmetric;
  if (t == "asym") return kArcAsymmetric;
  throw std::runtime_error("unknown arc kind: " + std::string(t));
}

const char* mode_token(GraphMode m) {
  switch (m) {
    case GraphMode::Symmetric: return "sym";
    case GraphMode::Asymmetric: return "asym";
    case GraphMode::Hybrid: return "hybrid";
  }
  return "?";
}

GraphMode mode_from_token(std::string_view t) {
  if (t == "sym") return GraphMode::Symmetric;
  if (t == "asym") return GraphMode::Asymmetric;
  if (t == "hybrid") return GraphMode::Hybrid;
  throw std::runtime_error("unknown graph mode: " + std::string(t));
}
}  // namespace

void write_graph(const std::string& prefix, const ContactGraph& g, const Meta& meta) {
  {
    auto out = open_out(prefix + ".vertices.csv");
    out << meta.comment_line() << '\n';
    out << "person_id\n";
    for (const auto& p : g.persons()) out << p << '\n';
  }
  {
    auto out = open_out(prefix + ".edges.csv");
    out << meta.comment_line() << '\n';
    out << "src,dst,kind\n";
    for (const Arc& a : g.arcs())
      out << g.person(a.src) << ',' << g.person(a.dst) << ',' << kind_token(a.kinds) << '\n';
  }
  nlohmann::json j;
  j["mode"] = mode_token(g.mode());
  j["n_vertices"] = g.num_vertices();
  j["n_arcs"] = g.num_arcs();
  j["n_symmetric_arcs"] = g.count_kind(kArcSymmetric);
  j["n_asymmetric_arcs"] = g.count_kind(kArcAsymmetric);
  meta.attach(j);
  write_json_file(prefix + ".summary.json", j);
}

ContactGraph read_graph(const std::string& prefix) {
  nlohmann::json summary;
  {
    auto in = open_in(prefix + ".summary.json");
    in >> summary;
  }
  GraphMode mode = mode_from_token(summary.at("mode").get<std::string>());

  std::vector<std::string> persons;
  {
    auto in = open_in(prefix + ".vertices.csv");
    std::string line;
    if (!next_row(in, line) || line != "person_id")
      throw std::runtime_error(prefix + ".vertices.csv: not a vertex file");
    while (next_row(in, line)) persons.emplace_back(line);
  }
  std::sort(persons.begin(), persons.end());
  auto index_of = [&](std::string_view p) -> uint32_t {
    auto it = std::lower_bound(persons.begin(), persons.end(), p);
    if (it == persons.end() || *it != p)
      throw std::runtime_error(prefix + ": edge endpoint missing from vertex list");
    return static_cast<uint32_t>(it - persons.begin());
  };

  std::vector<Arc> arcs;
  {
    auto in = open_in(prefix + ".edges.csv");
    std::string line;
    if (!next_row(in, line) || line != "src,dst,kind")
      throw std::runtime_error(prefix + ".edges.csv: not an edge file");
    while (next_row(in, line)) {
      auto f = split_csv(line);
      if (f.size() != 3) throw std::runtime_error(prefix + ": bad edge row: " + line);
      arcs.push_back({index_of(f[0]), index_of(f[1]), kinds_from_token(f[2])});
    }
  }
  return ContactGraph(std::move(persons), std::move(arcs), mode);
}

void write_ranking(const std::string& path, const ContactGraph& g, const CentralityScores& s,
                   size_t k, const Meta& meta) {
  {
    auto out = open_out(path);
    out << meta.comment_line() << '\n';
    out << "person_id,score,rank\n";
    for (size_t r = 0; r < s.ranking.size(); ++r)
      out << g.person(s.ranking[r]) << ',' << format_double(s.scores[s.ranking[r]]) << ','
          << r + 1 << '\n';
  }
  {
    auto out = open_out(path + ".topk.txt");
    out << meta.comment_line() << '\n';
    for (size_t r = 0; r < std::min(k, s.ranking.size()); ++r)
      out << g.person(s.ranking[r]) << '\n';
  }
  // Distribution summary (moments, quantiles, fixed 20-bin histogram).
  std::vector<double> sorted = s.scores;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  const double mean = sorted.empty() ? 0.0 : sum / sorted.size();
  double ss = 0.0;
  for (double v : sorted) ss += (v - mean) * (v - mean);
  auto quantile = [&](double q) {
    if (sorted.empty()) return 0.0;
    double pos = q * (sorted.size() - 1);
    size_t lo = static_cast<size_t>(pos);
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
  };
  nlohmann::json j;
  j["measure"] = measure_name(s.measure);
  j["count"] = sorted.size();
  j["min"] = sorted.empty() ? 0.0 : sorted.front();
  j["max"] = sorted.empty() ? 0.0 : sorted.back();
  j["mean"] = mean;
  j["stddev"] = sorted.size() > 1 ? std::sqrt(ss / (sorted.size() - 1)) : 0.0;
  j["p50"] = quantile(0.5);
  j["p90"] = quantile(0.9);
  j["p99"] = quantile(0.99);
  if (!sorted.empty()) {
    const double lo = sorted.front(), hi = sorted.back();
    const double width = hi > lo ? (hi - lo) / 20.0 : 1.0;
    std::vector<uint32_t> bins(20, 0);
    for (double v : sorted) {
      auto b = static_cast<size_t>((v - lo) / width);
      if (b >= 20) b = 19;
      ++bins[b];
    }
    j["histogram"] = {{"lo", lo}, {"hi", hi}, {"counts", bins}};
  }
  meta.attach(j);
  write_json_file(path + ".summary.json", j);
}

std::vector<std::string> read_person_list(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::string> out;
  std::string line;
  while (next_row(in, line)) {
    auto f = split_csv(line);
    if (f[0] == "person_id") continue;  // tolerate ranking CSV headers
    if (!f[0].empty()) out.emplace_back(f[0]);
  }
  return out;
}

namespace {
void write_trace_header(std::ofstream& out, const Meta& meta) {
  out << meta.comment_line() << '\n';
  out << "day,S,E,I,R,Q,cumulative_infected\n";
}
}  // namespace

void write_trace_mean(const std::string& path, const EnsembleStats& stats, const Meta& meta) {
  auto out = open_out(path);
  write_trace_header(out, meta);
  for (size_t d = 0; d < stats.mean_s.size(); ++d)
    out << d << ',' << format_double(stats.mean_s[d]) << ',' << format_double(stats.mean_e[d])
        << ',' << format_double(stats.mean_i[d]) << ',' << format_double(stats.mean_r[d]) << ','
        << format_double(stats.mean_q[d]) << ',' << format_double(stats.mean_cumulative[d])
        << '\n';
}

void write_trace_run(const std::string& path, const SeirTrace& trace, const Meta& meta) {
  auto out = open_out(path);
  write_trace_header(out, meta);
  for (size_t d = 0; d < trace.days(); ++d)
    out << d << ',' << trace.s[d] << ',' << trace.e[d] << ',' << trace.i[d] << ',' << trace.r[d]
        << ',' << trace.q[d] << ',' << trace.cumulative[d] << '\n';
}

void write_metrics_json(const std::string& path, const EnsembleStats& stats, const Meta& meta) {
  nlohmann::json j;
  if (stats.mean.doubling_time)
    j["doubling_time"] = *stats.mean.doubling_time;
  else
    j["doubling_time"] = nullptr;
  j["total_infected_fraction"] = stats.mean.total_infected_fraction;
  j["peak_infected_time"] = stats.mean.peak_infected_time;
  j["peak_infected_fraction"] = stats.mean.peak_infected_fraction;
  nlohmann::json sd;
  if (stats.stddev.doubling_time)
    sd["doubling_time"] = *stats.stddev.doubling_time;
  else
    sd["doubling_time"] = nullptr;
  sd["total_infected_fraction"] = stats.stddev.total_infected_fraction;
  sd["peak_infected_time"] = stats.stddev.peak_infected_time;
  sd["peak_infected_fraction"] = stats.stddev.peak_infected_fraction;
  j["stddevs"] = sd;
  j["undefined_doubling_count"] = stats.undefined_doubling_runs;
  j["runs"] = stats.runs;
  meta.attach(j);
  write_json_file(path, j);
}

void write_report(const std::string& path, const ExperimentReport& report, const Meta& meta) {
  auto out = open_out(path);
  out << meta.comment_line() << '\n';
  out << "# population=" << report.population << " k_effective=" << report.k_effective
      << " initial_infected=" << report.initial_effective << '\n';
  out << "method,measure,db_time,t_inf,pk_time,pk_inf,"
         "db_time_std,t_inf_std,pk_time_std,pk_inf_std,undefined_doubling_runs,"
         "delta_db_time,delta_t_inf,delta_pk_time,delta_pk_inf\n";
  for (const auto& row : report.rows) {
    out << strategy_name(row.strategy.kind) << ','
        << (row.strategy.measure ? measure_name(*row.strategy.measure) : "-") << ','
        << fmt_opt(row.stats.mean.doubling_time) << ','
        << format_double(row.stats.mean.total_infected_fraction) << ','
        << format_double(row.stats.mean.peak_infected_time) << ','
        << format_double(row.stats.mean.peak_infected_fraction) << ','
        << fmt_opt(row.stats.stddev.doubling_time) << ','
        << format_double(row.stats.stddev.total_infected_fraction) << ','
        << format_double(row.stats.stddev.peak_infected_time) << ','
        << format_double(row.stats.stddev.peak_infected_fraction) << ','
        << row.stats.undefined_doubling_runs << ',';
    if (row.delta_vs_symc) {
      out << fmt_opt(row.delta_vs_symc->doubling_time) << ','
          << format_double(row.delta_vs_symc->total_infected_fraction) << ','
          << format_double(row.delta_vs_symc->peak_infected_time) << ','
          << format_double(row.delta_vs_symc->peak_infected_fraction);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

void write_sweep(const std::string& csv_path, const std::string& json_path, const SweepGrid& grid,
                 double turning_threshold, const Meta& meta) {
  {
    auto out = open_out(csv_path);
    out << meta.comment_line() << '\n';
    out << "infected_pct\\quarantine_pct";
    for (double q : grid.quarantine_fracs) out << ',' << format_double(q);
    out << '\n';
    for (size_t r = 0; r < grid.infected_fracs.size(); ++r) {
      out << format_double(grid.infected_fracs[r]);
      for (size_t c = 0; c < grid.quarantine_fracs.size(); ++c)
        out << ',' << (grid.feasible[r][c] ? format_double(grid.mean_tinf[r][c]) : "nan");
      out << '\n';
    }
  }
  nlohmann::json j;
  j["measure"] = measure_name(grid.measure);
  j["infected_fracs"] = grid.infected_fracs;
  j["quarantine_fracs"] = grid.quarantine_fracs;
  j["mean_total_infected_fraction"] = grid.mean_tinf;
  j["stderr_total_infected_fraction"] = grid.stderr_tinf;
  j["feasible"] = grid.feasible;
  auto tp = turning_point(grid, turning_threshold);
  if (tp)
    j["turning_point_pct"] = *tp;
  else
    j["turning_point_pct"] = nullptr;
  j["turning_threshold"] = turning_threshold;
  meta.attach(j);
  write_json_file(json_path, j);
}

void write_similarity_matrix(const std::string& path, const SimilarityMatrix& m, const Meta& meta) {
  auto out = open_out(path);
  out << meta.comment_line() << '\n';
  out << "window";
  for (const auto& l : m.labels) out << ',' << l;
  out << '\n';
  for (size_t r = 0; r < m.labels.size(); ++r) {
    out << m.labels[r];
    for (size_t c = 0; c < m.labels.size(); ++c) out << ',' << format_double(m.values[r][c]);
    out << '\n';
  }
}

}  // namespace tracenet
