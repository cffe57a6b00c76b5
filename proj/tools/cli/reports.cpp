#include "reports.hpp"

#include <ostream>

#include "citenet/error.hpp"
#include "citenet/io.hpp"
#include "output.hpp"

namespace citenet::cli {

using nlohmann::json;

json to_json(const IngestReport& r) {
  return {
      {"schema_version", kSchemaVersion},
      {"edges_total", r.edges_total},
      {"edges_accepted", r.edges_accepted},
      {"edges_acausal_dropped", r.edges_acausal_dropped},
      {"edges_equal_time_dropped", r.edges_equal_time_dropped},
      {"edges_duplicate_dropped", r.edges_duplicate_dropped},
      {"self_loops_dropped", r.self_loops_dropped},
      {"edges_unknown_node_dropped", r.edges_unknown_node_dropped},
      {"acausal_fraction", r.acausal_fraction},
      {"equal_time_cycle", r.equal_time_cycle},
  };
}

json to_json(const TrReport& r) {
  json per_node = json::array();
  for (const auto& c : r.per_node_citations) {
    per_node.push_back({{"id", c.id},
                        {"count_before", c.count_before},
                        {"count_after", c.count_after}});
  }
  return {
      {"schema_version", kSchemaVersion},
      {"edges_before", r.edges_before},
      {"edges_after", r.edges_after},
      {"edge_loss_fraction", r.edge_loss_fraction},
      {"per_node_citations", std::move(per_node)},
  };
}

json to_json(const CitationGraph& g, const IntervalSummary& s,
             const std::optional<MidpointSplit>& midpoint) {
  json members = json::array();
  for (NodeIndex v : s.members) members.push_back(g.id(v));
  json mid = nullptr;
  if (midpoint) {
    mid = {{"id", g.id(midpoint->midpoint)},
           {"N1", midpoint->N1},
           {"N2", midpoint->N2}};
  }
  return {
      {"schema_version", kSchemaVersion},
      {"source", g.id(s.source)},
      {"target", g.id(s.target)},
      {"N", s.N},
      {"P", s.P},
      {"members", std::move(members)},
      {"midpoint", std::move(mid)},
  };
}

json to_json(const CitationGraph& g, const FieldDimensionReport& r) {
  json estimates = json::array();
  for (const auto& e : r.estimates) {
    json item = {{"D", e.D},
                 {"method", to_string(e.method)},
                 {"N", e.N},
                 {"source", g.id(e.source)},
                 {"target", g.id(e.target)}};
    if (e.method == DimensionMethod::box_counting) {
      item["N1"] = e.N1;
      item["N2"] = e.N2;
      item["sub_interval"] = e.sub_interval;
    } else {
      item["P"] = e.P;
    }
    if (e.clamped) item["clamped"] = true;
    estimates.push_back(std::move(item));
  }
  json summary = nullptr;
  if (r.summary) {
    summary = {{"median", r.summary->median},
               {"q1", r.summary->q1},
               {"q3", r.summary->q3},
               {"iqr", r.summary->iqr()}};
  }
  return {
      {"schema_version", kSchemaVersion},
      {"method", to_string(r.method)},
      {"num_pairs_sampled", r.num_pairs_sampled},
      {"num_pairs_accepted", r.num_pairs_accepted},
      {"num_rejected_small", r.num_rejected_small},
      {"num_rejected_undefined", r.num_rejected_undefined},
      {"min_interval_size", r.min_interval_size},
      {"seed", r.seed},
      {"summary", std::move(summary)},
      {"estimates", std::move(estimates)},
  };
}

Figure parse_figure(std::string_view name) {
  if (name == "f3_degree_dist") return Figure::f3_degree_dist;
  if (name == "f4_scatter") return Figure::f4_scatter;
  if (name == "f5_dim_hist") return Figure::f5_dim_hist;
  throw UsageError("unknown figure '" + std::string(name) + "'");
}

void write_degree_csv(std::ostream& out, const std::vector<DegreeBin>& bins) {
  out << "degree,count_before,count_after\n";
  for (const auto& b : bins) {
    out << b.degree << ',' << b.count_before << ',' << b.count_after << '\n';
  }
}

void write_scatter_csv(std::ostream& out,
                       const std::vector<NodeCitations>& rows) {
  out << "id,count_before,count_after\n";
  for (const auto& r : rows) {
    out << r.id << ',' << r.count_before << ',' << r.count_after << '\n';
  }
}

void write_estimates_csv(std::ostream& out, const json& report) {
  if (!report.contains("estimates") || !report["estimates"].is_array()) {
    throw DataError("dimension report has no estimates array");
  }
  out << "source,target,N,P_or_N1N2,D\n";
  for (const auto& e : report["estimates"]) {
    out << e.at("source").get<std::string>() << ','
        << e.at("target").get<std::string>() << ','
        << e.at("N").get<std::uint64_t>() << ',';
    if (e.contains("P")) {
      out << e["P"].get<std::uint64_t>();
    } else {
      out << e.at("N1").get<std::uint64_t>() << ':'
          << e.at("N2").get<std::uint64_t>();
    }
    out << ',' << format_time(e.at("D").get<double>()) << '\n';
  }
}

void export_figure_data(const CitationGraph& g, Figure figure,
                        const std::filesystem::path& path,
                        const json* dimension_report,
                        const SweepOptions& sweep) {
  if (figure == Figure::f5_dim_hist && dimension_report == nullptr) {
    throw UsageError("f5_dim_hist needs a dimension report");
  }
  AtomicFile file(path);
  switch (figure) {
    case Figure::f3_degree_dist: {
      const CitationGraph reduced = transitive_reduction(g, sweep);
      write_degree_csv(file.stream(), citation_histogram(g, reduced));
      break;
    }
    case Figure::f4_scatter:
      write_scatter_csv(file.stream(), tr_report(g, sweep).per_node_citations);
      break;
    case Figure::f5_dim_hist:
      write_estimates_csv(file.stream(), *dimension_report);
      break;
  }
  file.commit();
}

}  // namespace citenet::cli
