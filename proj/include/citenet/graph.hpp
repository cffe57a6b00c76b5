#ifndef CITENET_GRAPH_HPP
#define CITENET_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace citenet {

/// Dense node index. Indices are canonical: nodes are numbered by increasing
/// (time, id), so every edge runs from a higher index to a lower one.
using NodeIndex = std::uint32_t;

struct NodeRecord {
  std::string id;
  double time = 0.0;
};

struct EdgeRecord {
  std::string citing;
  std::string cited;
};

/// An edge given by positions into the node list passed alongside it.
using PositionEdge = std::pair<std::size_t, std::size_t>;

/// Immutable table of node labels and times, shared between a graph and the
/// graphs derived from it (reduction, closure).
class NodeTable {
 public:
  NodeTable(std::vector<std::string> ids, std::vector<double> times);
  NodeTable(const NodeTable&) = delete;
  NodeTable& operator=(const NodeTable&) = delete;

  std::size_t size() const { return ids_.size(); }
  const std::string& id(NodeIndex v) const { return ids_[v]; }
  double time(NodeIndex v) const { return times_[v]; }
  std::span<const double> times() const { return times_; }

  /// Index of `id`; throws UnknownNodeError.
  NodeIndex at(std::string_view id) const;
  bool contains(std::string_view id) const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> times_;
  std::unordered_map<std::string_view, NodeIndex> index_;
};

/// A timestamped citation DAG with adjacency in both directions.
///
/// out_edges(u) lists the nodes u cites (older), in_edges(v) the nodes citing
/// v (newer). Both lists are sorted ascending and one is the exact transpose
/// of the other.
class CitationGraph {
 public:
  CitationGraph();

  /// Assembles a graph from canonically numbered nodes and an edge list that
  /// is already sorted by (citing, cited), free of duplicates, and satisfies
  /// cited < citing. Throws DataError when the edge list breaks that contract.
  static CitationGraph from_sorted_edges(
      std::shared_ptr<const NodeTable> nodes,
      std::span<const std::pair<NodeIndex, NodeIndex>> edges);

  /// Same contract as from_sorted_edges, but with the out-adjacency already in
  /// CSR form: offsets has size()+1 entries.
  static CitationGraph from_out_csr(std::shared_ptr<const NodeTable> nodes,
                                    std::vector<std::uint64_t> offsets,
                                    std::vector<NodeIndex> targets);

  std::size_t size() const { return nodes_->size(); }
  std::size_t edge_count() const { return out_targets_.size(); }

  std::span<const NodeIndex> out_edges(NodeIndex u) const {
    return {out_targets_.data() + out_offsets_[u],
            out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const NodeIndex> in_edges(NodeIndex v) const {
    return {in_sources_.data() + in_offsets_[v],
            in_sources_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(NodeIndex u) const {
    return out_offsets_[u + 1] - out_offsets_[u];
  }
  std::size_t in_degree(NodeIndex v) const {
    return in_offsets_[v + 1] - in_offsets_[v];
  }
  /// Position of the first out-edge of u in the flat edge numbering.
  std::uint64_t edge_offset(NodeIndex u) const { return out_offsets_[u]; }

  const std::string& id(NodeIndex v) const { return nodes_->id(v); }
  double time(NodeIndex v) const { return nodes_->time(v); }
  NodeIndex at(std::string_view id) const { return nodes_->at(id); }
  bool contains(std::string_view id) const { return nodes_->contains(id); }
  const std::shared_ptr<const NodeTable>& nodes() const { return nodes_; }

  /// Flat list of (citing, cited) pairs in canonical order.
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const;

  bool same_edges(const CitationGraph& other) const {
    return out_offsets_ == other.out_offsets_ &&
           out_targets_ == other.out_targets_;
  }

 private:
  CitationGraph(std::shared_ptr<const NodeTable> nodes,
                std::vector<std::uint64_t> out_offsets,
                std::vector<NodeIndex> out_targets);
  void build_transpose();

  std::shared_ptr<const NodeTable> nodes_;
  std::vector<std::uint64_t> out_offsets_;
  std::vector<NodeIndex> out_targets_;
  std::vector<std::uint64_t> in_offsets_;
  std::vector<NodeIndex> in_sources_;
};

struct IngestReport {
  std::uint64_t edges_total = 0;
  std::uint64_t edges_accepted = 0;
  std::uint64_t edges_acausal_dropped = 0;
  std::uint64_t edges_equal_time_dropped = 0;
  std::uint64_t edges_duplicate_dropped = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t edges_unknown_node_dropped = 0;
  /// (acausal + equal_time) / total input edges; 0 for empty input.
  double acausal_fraction = 0.0;
  /// Set when --keep-equal-time was requested but the equal-time edges
  /// formed a cycle and were dropped instead.
  bool equal_time_cycle = false;
};

struct BuildOptions {
  /// Retain edges between nodes with identical times, provided they do not
  /// form a cycle.
  bool keep_equal_time = false;
};

struct BuildResult {
  CitationGraph graph;
  IngestReport report;
};

/// Builds a DAG from labelled nodes and edges, dropping and counting
/// acausal, equal-time, duplicate, self-loop and dangling edges.
/// Throws DataError on a non-finite time or a repeated node id.
BuildResult build_graph(std::span<const NodeRecord> nodes,
                        std::span<const EdgeRecord> edges,
                        const BuildOptions& options = {});

/// Same as above with edges given as positions into `nodes`. Positions out of
/// range count as unknown-node edges.
BuildResult build_graph(std::span<const NodeRecord> nodes,
                        std::span<const PositionEdge> edges,
                        const BuildOptions& options = {});

/// Node indices ordered by decreasing time (ties: decreasing index), so every
/// edge points from an earlier to a later position.
std::vector<NodeIndex> topological_order(const CitationGraph& g);

/// Nodes reachable from v along edge direction, v excluded, sorted ascending.
std::vector<NodeIndex> descendants(const CitationGraph& g, NodeIndex v);
std::vector<NodeIndex> descendants(const CitationGraph& g, std::string_view id);

/// Nodes that can reach v, v excluded, sorted ascending.
std::vector<NodeIndex> ancestors(const CitationGraph& g, NodeIndex v);
std::vector<NodeIndex> ancestors(const CitationGraph& g, std::string_view id);

std::size_t citation_count(const CitationGraph& g, std::string_view id);

enum class Direction { in, out };

/// degree -> number of nodes with that degree.
std::map<std::size_t, std::size_t> degree_distribution(const CitationGraph& g,
                                                       Direction direction);

/// Full-scan check of every CitationGraph invariant: edges point to strictly
/// older nodes (or equal time when allow_equal_time), sorted unique
/// adjacency, exact transpose, acyclicity. Returns an empty string when the
/// graph is valid, otherwise a description of the first violation.
std::string check_invariants(const CitationGraph& g,
                             bool allow_equal_time = false);

}  // namespace citenet

#endif  // CITENET_GRAPH_HPP
