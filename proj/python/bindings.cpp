#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "citenet/dimension.hpp"
#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "citenet/intervals.hpp"
#include "citenet/io.hpp"
#include "citenet/sprinkle.hpp"
#include "citenet/transitive.hpp"

namespace py = pybind11;
using namespace citenet;

namespace {

py::dict ingest_dict(const IngestReport& r) {
  py::dict d;
  d["edges_total"] = r.edges_total;
  d["edges_accepted"] = r.edges_accepted;
  d["edges_acausal_dropped"] = r.edges_acausal_dropped;
  d["edges_equal_time_dropped"] = r.edges_equal_time_dropped;
  d["edges_duplicate_dropped"] = r.edges_duplicate_dropped;
  d["self_loops_dropped"] = r.self_loops_dropped;
  d["edges_unknown_node_dropped"] = r.edges_unknown_node_dropped;
  d["acausal_fraction"] = r.acausal_fraction;
  d["equal_time_cycle"] = r.equal_time_cycle;
  return d;
}

py::list id_list(const CitationGraph& g, const std::vector<NodeIndex>& nodes) {
  py::list out;
  for (NodeIndex v : nodes) out.append(g.id(v));
  return out;
}

py::list citation_rows(const std::vector<NodeCitations>& rows) {
  py::list out;
  for (const auto& r : rows) {
    out.append(py::make_tuple(r.id, r.count_before, r.count_after));
  }
  return out;
}

SweepOptions sweep_options(std::size_t chunk_size, unsigned threads) {
  SweepOptions s;
  s.chunk_size = chunk_size;
  s.threads = threads;
  return s;
}

}  // namespace

PYBIND11_MODULE(_citenet, m) {
  m.doc() = "Transitive reduction and causal-set dimension of citation DAGs";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  auto data = py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<UnknownNodeError>(m, "UnknownNodeError", data.ptr());
  py::register_exception<EstimateError>(m, "EstimateError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());

  py::class_<CitationGraph>(m, "CitationGraph")
      .def("__len__", &CitationGraph::size)
      .def_property_readonly("edge_count", &CitationGraph::edge_count)
      .def_property_readonly("ids", [](const CitationGraph& g) {
        py::list out;
        for (NodeIndex v = 0; v < g.size(); ++v) out.append(g.id(v));
        return out;
      })
      .def("time", [](const CitationGraph& g, const std::string& id) {
        return g.time(g.at(id));
      })
      .def("edges", [](const CitationGraph& g) {
        py::list out;
        for (auto [u, v] : g.edges()) out.append(py::make_tuple(g.id(u), g.id(v)));
        return out;
      })
      .def("cited_by", [](const CitationGraph& g, const std::string& id) {
        auto ins = g.in_edges(g.at(id));
        return id_list(g, {ins.begin(), ins.end()});
      })
      .def("cites", [](const CitationGraph& g, const std::string& id) {
        auto outs = g.out_edges(g.at(id));
        return id_list(g, {outs.begin(), outs.end()});
      })
      .def("__contains__", [](const CitationGraph& g, const std::string& id) {
        return g.contains(id);
      });

  m.def(
      "build_graph",
      [](const std::vector<std::pair<std::string, double>>& nodes,
         const std::vector<std::pair<std::string, std::string>>& edges,
         bool keep_equal_time) {
        std::vector<NodeRecord> n;
        n.reserve(nodes.size());
        for (const auto& [id, t] : nodes) n.push_back({id, t});
        std::vector<EdgeRecord> e;
        e.reserve(edges.size());
        for (const auto& [a, b] : edges) e.push_back({a, b});
        BuildOptions options;
        options.keep_equal_time = keep_equal_time;
        auto result = build_graph(std::span<const NodeRecord>(n),
                                  std::span<const EdgeRecord>(e), options);
        return py::make_tuple(std::move(result.graph), ingest_dict(result.report));
      },
      py::arg("nodes"), py::arg("edges"), py::arg("keep_equal_time") = false);

  m.def(
      "load_graph",
      [](const std::string& nodes, const std::string& edges, bool keep_equal_time) {
        BuildOptions options;
        options.keep_equal_time = keep_equal_time;
        auto result = load_graph(nodes, edges, options);
        return py::make_tuple(std::move(result.graph), ingest_dict(result.report));
      },
      py::arg("nodes"), py::arg("edges"), py::arg("keep_equal_time") = false);

  m.def("descendants", [](const CitationGraph& g, const std::string& id) {
    return id_list(g, descendants(g, id));
  });
  m.def("ancestors", [](const CitationGraph& g, const std::string& id) {
    return id_list(g, ancestors(g, id));
  });
  m.def("citation_count", [](const CitationGraph& g, const std::string& id) {
    return citation_count(g, id);
  });
  m.def(
      "degree_distribution",
      [](const CitationGraph& g, const std::string& direction) {
        if (direction != "in" && direction != "out") {
          throw UsageError("direction must be 'in' or 'out'");
        }
        return degree_distribution(
            g, direction == "in" ? Direction::in : Direction::out);
      },
      py::arg("g"), py::arg("direction") = "in");

  m.def(
      "transitive_reduction",
      [](const CitationGraph& g, std::size_t chunk_size, unsigned threads) {
        py::gil_scoped_release release;
        return transitive_reduction(g, sweep_options(chunk_size, threads));
      },
      py::arg("g"), py::arg("chunk_size") = 4096, py::arg("threads") = 0);

  m.def(
      "transitive_closure",
      [](const CitationGraph& g, std::uint64_t edge_budget, unsigned threads) {
        py::gil_scoped_release release;
        ClosureOptions options;
        options.edge_budget = edge_budget;
        options.sweep.threads = threads;
        return transitive_closure(g, options);
      },
      py::arg("g"), py::arg("edge_budget") = 1'000'000'000ULL,
      py::arg("threads") = 0);

  m.def(
      "tr_report",
      [](const CitationGraph& g, unsigned threads) {
        const TrReport r = tr_report(g, sweep_options(4096, threads));
        py::dict d;
        d["edges_before"] = r.edges_before;
        d["edges_after"] = r.edges_after;
        d["edge_loss_fraction"] = r.edge_loss_fraction;
        d["per_node_citations"] = citation_rows(r.per_node_citations);
        return d;
      },
      py::arg("g"), py::arg("threads") = 0);

  m.def(
      "post_tr_ranking",
      [](const CitationGraph& g, std::size_t top_k, unsigned threads) {
        return citation_rows(
            post_tr_ranking(g, top_k, sweep_options(4096, threads)));
      },
      py::arg("g"), py::arg("top_k") = 20, py::arg("threads") = 0);

  m.def(
      "interval",
      [](const CitationGraph& g, const std::string& source,
         const std::string& target, bool include_endpoints) {
        IntervalOptions options;
        options.include_endpoints = include_endpoints;
        IntervalAnalysis a(g, g.at(source), g.at(target), options);
        const IntervalSummary s = a.summary();
        py::dict d;
        d["source"] = source;
        d["target"] = target;
        d["members"] = id_list(g, s.members);
        d["N"] = s.N;
        d["P"] = s.P;
        return d;
      },
      py::arg("g"), py::arg("source"), py::arg("target"),
      py::arg("include_endpoints") = false);

  m.def(
      "find_midpoint",
      [](const CitationGraph& g, const std::string& source,
         const std::string& target, bool include_endpoints) {
        IntervalOptions options;
        options.include_endpoints = include_endpoints;
        const MidpointSplit s = find_midpoint(g, source, target, options);
        return py::make_tuple(g.id(s.midpoint), s.N1, s.N2);
      },
      py::arg("g"), py::arg("source"), py::arg("target"),
      py::arg("include_endpoints") = false);

  m.def("mm_ordering_fraction", &mm_ordering_fraction, py::arg("d"));
  m.def(
      "mm_dimension",
      [](std::uint64_t N, std::uint64_t P) { return mm_dimension(N, P).dimension; },
      py::arg("N"), py::arg("P"));
  m.def(
      "mm_dimension_from_fraction",
      [](double f) { return mm_dimension_from_fraction(f).dimension; },
      py::arg("fraction"));
  m.def("box_counting_dimension", &box_counting_dimension, py::arg("N"),
        py::arg("N_sub"));
  m.def("box_space_dimension", &box_space_dimension, py::arg("N"), py::arg("P"));

  m.def(
      "estimate_field_dimension",
      [](const CitationGraph& g, const std::string& method,
         std::uint64_t num_pairs, std::uint64_t min_interval_size,
         std::uint64_t seed, bool include_endpoints, unsigned threads) {
        FieldOptions options;
        options.method = parse_method(method);
        options.num_pairs = num_pairs;
        options.min_interval_size = min_interval_size;
        options.seed = seed;
        options.interval.include_endpoints = include_endpoints;
        options.threads = threads;
        FieldDimensionReport r;
        {
          py::gil_scoped_release release;
          r = estimate_field_dimension(g, options);
        }
        py::dict d;
        d["method"] = std::string(to_string(r.method));
        d["num_pairs_sampled"] = r.num_pairs_sampled;
        d["num_pairs_accepted"] = r.num_pairs_accepted;
        d["num_rejected_small"] = r.num_rejected_small;
        d["num_rejected_undefined"] = r.num_rejected_undefined;
        d["min_interval_size"] = r.min_interval_size;
        py::list values;
        for (const auto& e : r.estimates) values.append(e.D);
        d["estimates"] = values;
        if (r.summary) {
          d["median"] = r.summary->median;
          d["iqr"] = r.summary->iqr();
        } else {
          d["median"] = py::none();
          d["iqr"] = py::none();
        }
        return d;
      },
      py::arg("g"), py::arg("method") = "myrheim_meyer",
      py::arg("num_pairs") = 200, py::arg("min_interval_size") = 32,
      py::arg("seed") = 2015, py::arg("include_endpoints") = false,
      py::arg("threads") = 0);

  m.def(
      "sprinkle",
      [](const std::string& geometry, int dim, std::uint64_t n,
         std::uint64_t seed) {
        SprinkleSpec spec;
        spec.geometry = parse_geometry(geometry);
        spec.D = dim;
        spec.n = n;
        spec.seed = seed;
        py::gil_scoped_release release;
        return sprinkle(spec).graph;
      },
      py::arg("geometry") = "minkowski_diamond", py::arg("dim") = 2,
      py::arg("n") = 1000, py::arg("seed") = 2015);
}
