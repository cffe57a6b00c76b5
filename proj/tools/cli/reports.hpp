#ifndef CITENET_TOOLS_REPORTS_HPP
#define CITENET_TOOLS_REPORTS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "citenet/dimension.hpp"
#include "citenet/graph.hpp"
#include "citenet/intervals.hpp"
#include "citenet/transitive.hpp"

namespace citenet::cli {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const IngestReport& report);
nlohmann::json to_json(const TrReport& report);
nlohmann::json to_json(const CitationGraph& g, const IntervalSummary& interval,
                       const std::optional<MidpointSplit>& midpoint);
nlohmann::json to_json(const CitationGraph& g,
                       const FieldDimensionReport& report);

enum class Figure { f3_degree_dist, f4_scatter, f5_dim_hist };
Figure parse_figure(std::string_view name);

/// `degree,count_before,count_after`, one row per in-degree bin.
void write_degree_csv(std::ostream& out, const std::vector<DegreeBin>& bins);
/// `id,count_before,count_after`, one row per node.
void write_scatter_csv(std::ostream& out,
                       const std::vector<NodeCitations>& rows);
/// `source,target,N,P_or_N1N2,D`, one row per estimate of a serialized
/// FieldDimensionReport. Box-counting rows give the split as "N1:N2".
void write_estimates_csv(std::ostream& out, const nlohmann::json& report);

/// Writes the plot-ready CSV for one figure. f3/f4 compare g with its
/// transitive reduction; f5 needs a serialized FieldDimensionReport.
void export_figure_data(const CitationGraph& g, Figure figure,
                        const std::filesystem::path& path,
                        const nlohmann::json* dimension_report,
                        const SweepOptions& sweep = {});

}  // namespace citenet::cli

#endif  // CITENET_TOOLS_REPORTS_HPP
