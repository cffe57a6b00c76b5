#ifndef CITENET_IO_HPP
#define CITENET_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "citenet/graph.hpp"

namespace citenet {

enum class TimeFormat { number, iso_date };

/// Parses a "YYYY-MM-DD" date into days since 1970-01-01. Returns false when
/// the text is not a valid calendar date in that form.
bool parse_iso_date(std::string_view text, double& days);

/// Node file: one `id<TAB>time` per line; blank lines and lines starting with
/// '#' are skipped. Times are all numbers or all ISO-8601 dates (converted to
/// days since 1970-01-01); a mix is an error. Errors name the source and line.
std::vector<NodeRecord> read_node_tsv(std::istream& in,
                                      const std::string& source_name,
                                      TimeFormat* format = nullptr);

/// Edge file: one `citing_id<TAB>cited_id` per line, same comment rules.
std::vector<EdgeRecord> read_edge_tsv(std::istream& in,
                                      const std::string& source_name);

BuildResult load_graph(const std::filesystem::path& nodes,
                       const std::filesystem::path& edges,
                       const BuildOptions& options = {});

/// Shortest decimal text that parses back to exactly `value`.
std::string format_time(double value);

void write_node_tsv(std::ostream& out, const CitationGraph& g);
void write_edge_tsv(std::ostream& out, const CitationGraph& g);

}  // namespace citenet

#endif  // CITENET_IO_HPP
