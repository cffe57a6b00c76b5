#include "citenet/io.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>

#include "citenet/error.hpp"

namespace citenet {

namespace {

template <typename Row>
void for_each_row(std::istream& in, const std::string& source, Row&& row) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    auto fail = [&](const std::string& what) {
      throw DataError(source + ":" + std::to_string(number) + ": " + what);
    };
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      fail("expected exactly two tab-separated fields");
    }
    std::string_view first(line.data(), tab);
    std::string_view second(line.data() + tab + 1, line.size() - tab - 1);
    if (first.empty() || second.empty()) fail("empty field");
    row(first, second, fail);
  }
  if (in.bad()) throw DataError(source + ": read error");
}

bool parse_number(std::string_view text, double& value) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

bool parse_iso_date(std::string_view text, double& days) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto field = [&](std::size_t pos, std::size_t len, auto& out) {
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return ec == std::errc{} && ptr == text.data() + pos + len;
  };
  if (!field(0, 4, y) || !field(5, 2, m) || !field(8, 2, d)) return false;
  const std::chrono::year_month_day date{std::chrono::year{y},
                                         std::chrono::month{m},
                                         std::chrono::day{d}};
  if (!date.ok()) return false;
  days = static_cast<double>(
      std::chrono::sys_days{date}.time_since_epoch().count());
  return true;
}

std::vector<NodeRecord> read_node_tsv(std::istream& in,
                                      const std::string& source_name,
                                      TimeFormat* format) {
  std::vector<NodeRecord> nodes;
  bool seen_number = false;
  bool seen_date = false;
  for_each_row(in, source_name, [&](std::string_view id, std::string_view time,
                                    auto& fail) {
    double value = 0.0;
    if (parse_iso_date(time, value)) {
      seen_date = true;
    } else if (parse_number(time, value)) {
      seen_number = true;
    } else {
      fail("cannot parse time '" + std::string(time) + "'");
    }
    if (seen_date && seen_number) {
      fail("file mixes numeric times and ISO-8601 dates");
    }
    nodes.push_back({std::string(id), value});
  });
  if (format) *format = seen_date ? TimeFormat::iso_date : TimeFormat::number;
  return nodes;
}

std::vector<EdgeRecord> read_edge_tsv(std::istream& in,
                                      const std::string& source_name) {
  std::vector<EdgeRecord> edges;
  for_each_row(in, source_name,
               [&](std::string_view citing, std::string_view cited, auto&) {
                 edges.push_back({std::string(citing), std::string(cited)});
               });
  return edges;
}

BuildResult load_graph(const std::filesystem::path& nodes_path,
                       const std::filesystem::path& edges_path,
                       const BuildOptions& options) {
  std::ifstream nodes_in(nodes_path);
  if (!nodes_in) throw DataError("cannot open " + nodes_path.string());
  std::ifstream edges_in(edges_path);
  if (!edges_in) throw DataError("cannot open " + edges_path.string());
  const auto nodes = read_node_tsv(nodes_in, nodes_path.string());
  const auto edges = read_edge_tsv(edges_in, edges_path.string());
  return build_graph(std::span<const NodeRecord>(nodes),
                     std::span<const EdgeRecord>(edges), options);
}

std::string format_time(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

void write_node_tsv(std::ostream& out, const CitationGraph& g) {
  for (NodeIndex v = 0; v < g.size(); ++v) {
    out << g.id(v) << '\t' << format_time(g.time(v)) << '\n';
  }
}

void write_edge_tsv(std::ostream& out, const CitationGraph& g) {
  for (NodeIndex u = 0; u < g.size(); ++u) {
    for (NodeIndex v : g.out_edges(u)) out << g.id(u) << '\t' << g.id(v) << '\n';
  }
}

}  // namespace citenet
