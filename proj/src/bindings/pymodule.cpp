// Python bindings for the contact-tracing core: interval criteria, graph
// construction, centrality ranking, SEIR simulation and RBO.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tracenet/analysis.hpp"
#include "tracenet/centrality.hpp"
#include "tracenet/contact.hpp"
#include "tracenet/harness.hpp"
#include "tracenet/seir.hpp"
#include "tracenet/trajectory.hpp"
#include "tracenet/util.hpp"

namespace py = pybind11;
using namespace tracenet;

namespace {

// Trajectories arrive as {person_id: [(ap_id, arrival, stay), ...]}.
std::vector<Trajectory> trajectories_from_dict(
    const std::map<std::string, std::vector<std::tuple<uint32_t, int64_t, int64_t>>>& d) {
  std::vector<Trajectory> out;
  out.reserve(d.size());
  for (const auto& [person, rows] : d) {
    Trajectory t;
    t.person_id = person;
    for (const auto& [ap, arrival, stay] : rows) t.tracklets.push_back({ap, arrival, stay});
    out.push_back(std::move(t));
  }
  return out;
}

py::dict metrics_dict(const EpidemicMetrics& m) {
  py::dict d;
  d["doubling_time"] = m.doubling_time ? py::cast(*m.doubling_time) : py::none();
  d["total_infected_fraction"] = m.total_infected_fraction;
  d["peak_infected_time"] = m.peak_infected_time;
  d["peak_infected_fraction"] = m.peak_infected_fraction;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Contact tracing, centrality and SEIR simulation core";

  m.def("overlap_duration", &overlap_duration, py::arg("t_q"), py::arg("st_q"), py::arg("t_p"),
        py::arg("st_p"),
        "Signed intersection length of two stay intervals (symmetric criterion LHS)");
  m.def("env_overlap_duration", &env_overlap_duration, py::arg("t_q"), py::arg("st_q"),
        py::arg("t_p"), py::arg("st_p"), py::arg("d_env"),
        "Intersection of the post-d_env source window with the target stay");

  py::class_<ContactConfig>(m, "ContactConfig")
      .def(py::init([](int64_t d_sym, int64_t d_env, int64_t d_asym) {
             ContactConfig c{d_sym, d_env, d_asym};
             c.validate();
             return c;
           }),
           py::arg("d_sym") = 900, py::arg("d_env") = 3000, py::arg("d_asym") = 300)
      .def_readonly("d_sym", &ContactConfig::d_sym)
      .def_readonly("d_env", &ContactConfig::d_env)
      .def_readonly("d_asym", &ContactConfig::d_asym);

  py::class_<ContactGraph>(m, "ContactGraph")
      .def_property_readonly("n_vertices", &ContactGraph::num_vertices)
      .def_property_readonly("n_arcs", &ContactGraph::num_arcs)
      .def_property_readonly("persons", &ContactGraph::persons)
      .def("arcs",
           [](const ContactGraph& g) {
             std::vector<std::tuple<std::string, std::string, std::string>> out;
             out.reserve(g.num_arcs());
             for (const Arc& a : g.arcs()) {
               std::string kind = a.kinds == (kArcSymmetric | kArcAsymmetric) ? "sym+asym"
                                  : a.kinds == kArcSymmetric                  ? "sym"
                                                                              : "asym";
               out.emplace_back(g.person(a.src), g.person(a.dst), kind);
             }
             return out;
           })
      .def("out_degree", [](const ContactGraph& g, const std::string& person) {
        auto v = g.index_of(person);
        if (!v) throw py::value_error("unknown person: " + person);
        return g.out_neighbors(*v).size();
      });

  m.def(
      "symmetric_graph",
      [](const std::map<std::string, std::vector<std::tuple<uint32_t, int64_t, int64_t>>>& t,
         const ContactConfig& cfg) { return symmetric_graph(trajectories_from_dict(t), cfg); },
      py::arg("trajectories"), py::arg("config") = ContactConfig{});
  m.def(
      "asymmetric_graph",
      [](const std::map<std::string, std::vector<std::tuple<uint32_t, int64_t, int64_t>>>& t,
         const ContactConfig& cfg) { return asymmetric_graph(trajectories_from_dict(t), cfg); },
      py::arg("trajectories"), py::arg("config") = ContactConfig{});
  m.def(
      "hybrid_graph",
      [](const std::map<std::string, std::vector<std::tuple<uint32_t, int64_t, int64_t>>>& t,
         const ContactConfig& cfg) {
        return build_graph(trajectories_from_dict(t), cfg, GraphMode::Hybrid);
      },
      py::arg("trajectories"), py::arg("config") = ContactConfig{});
  m.def("merge_graphs", &merge_graphs, py::arg("sym"), py::arg("asym"));

  m.def(
      "centrality",
      [](const ContactGraph& g, const std::string& measure) {
        auto s = compute_centrality(g, measure_from_name(measure));
        py::dict out;
        for (uint32_t v = 0; v < g.num_vertices(); ++v)
          out[py::str(g.person(v))] = s.scores[v];
        return out;
      },
      py::arg("graph"), py::arg("measure"));
  m.def(
      "top_k",
      [](const ContactGraph& g, const std::string& measure, size_t k) {
        auto s = compute_centrality(g, measure_from_name(measure));
        return top_k(g, s, std::min(k, g.num_vertices()));
      },
      py::arg("graph"), py::arg("measure"), py::arg("k"));

  py::class_<SeirParams>(m, "SeirParams")
      .def(py::init([](double beta, double sigma, double gamma, uint32_t initial_infected,
                       uint32_t max_days, uint32_t runs, uint64_t seed) {
             SeirParams p{beta, sigma, gamma, initial_infected, max_days, runs, seed};
             p.validate();
             return p;
           }),
           py::arg("beta") = 0.155, py::arg("sigma") = 1.0 / 5.2, py::arg("gamma") = 1.0 / 12.39,
           py::arg("initial_infected") = 50, py::arg("max_days") = 150, py::arg("runs") = 50,
           py::arg("seed") = 0)
      .def_readonly("beta", &SeirParams::beta)
      .def_readonly("sigma", &SeirParams::sigma)
      .def_readonly("gamma", &SeirParams::gamma)
      .def_readonly("initial_infected", &SeirParams::initial_infected)
      .def_readonly("max_days", &SeirParams::max_days)
      .def_readonly("runs", &SeirParams::runs)
      .def_readonly("seed", &SeirParams::seed);

  m.def(
      "simulate",
      [](const ContactGraph& g, const SeirParams& params,
         const std::vector<std::string>& quarantine, uint64_t seed) {
        std::vector<uint32_t> q;
        q.reserve(quarantine.size());
        for (const auto& id : quarantine) {
          auto v = g.index_of(id);
          if (!v) throw py::value_error("quarantine person not in graph: " + id);
          q.push_back(*v);
        }
        auto trace = simulate(g, params, q, seed);
        py::dict out;
        out["S"] = trace.s;
        out["E"] = trace.e;
        out["I"] = trace.i;
        out["R"] = trace.r;
        out["Q"] = trace.q;
        out["cumulative_infected"] = trace.cumulative;
        out["metrics"] = metrics_dict(run_metrics(trace, trace.population, params.initial_infected));
        return out;
      },
      py::arg("graph"), py::arg("params"), py::arg("quarantine") = std::vector<std::string>{},
      py::arg("seed") = 0);

  m.def(
      "ensemble",
      [](const ContactGraph& g, const SeirParams& params,
         const std::vector<std::string>& quarantine) {
        std::vector<uint32_t> q;
        for (const auto& id : quarantine) {
          auto v = g.index_of(id);
          if (!v) throw py::value_error("quarantine person not in graph: " + id);
          q.push_back(*v);
        }
        auto stats = ensemble(g, params, q);
        py::dict out;
        out["mean"] = metrics_dict(stats.mean);
        out["stddev"] = metrics_dict(stats.stddev);
        out["runs"] = stats.runs;
        out["undefined_doubling_count"] = stats.undefined_doubling_runs;
        out["mean_cumulative"] = stats.mean_cumulative;
        return out;
      },
      py::arg("graph"), py::arg("params"), py::arg("quarantine") = std::vector<std::string>{});

  m.def(
      "rbo",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b, double p) {
        return rbo(a, b, p);
      },
      py::arg("list_a"), py::arg("list_b"), py::arg("p") = 0.9,
      "Extrapolated rank-biased overlap of two ranked lists");

  m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("salt"));
}
