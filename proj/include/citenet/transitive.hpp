#ifndef CITENET_TRANSITIVE_HPP
#define CITENET_TRANSITIVE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "citenet/graph.hpp"

namespace citenet {

/// Tuning for the striped reachability sweep shared by reduction, closure and
/// pair counting. Descendant sets are held as bitsets restricted to a stripe
/// of `chunk_size` target nodes, so one stripe costs about
/// size() * chunk_size / 8 bytes.
struct SweepOptions {
  std::size_t chunk_size = 4096;
  /// Worker threads; 0 means all hardware threads.
  unsigned threads = 0;
  /// Upper bound on stripe memory held at once; limits concurrent stripes.
  std::size_t memory_budget = std::size_t{4} << 30;
};

struct ClosureOptions {
  SweepOptions sweep;
  /// Maximum number of edges the closure may contain.
  std::uint64_t edge_budget = 1'000'000'000;
};

/// The unique minimal subgraph with the same reachability relation.
CitationGraph transitive_reduction(const CitationGraph& g,
                                   const SweepOptions& options = {});

/// Edge u->v for every v reachable from u. Throws ResourceError when the
/// result would exceed options.edge_budget.
CitationGraph transitive_closure(const CitationGraph& g,
                                 const ClosureOptions& options = {});

/// Number of ordered pairs (u, v) with v reachable from u, i.e. the edge
/// count of the closure, without materializing it.
std::uint64_t count_reachable_pairs(const CitationGraph& g,
                                    const SweepOptions& options = {});

struct NodeCitations {
  NodeIndex node = 0;
  std::string id;
  std::size_t count_before = 0;
  std::size_t count_after = 0;
};

struct TrReport {
  std::uint64_t edges_before = 0;
  std::uint64_t edges_after = 0;
  /// 1 - edges_after / edges_before, or 0 for an edgeless graph.
  double edge_loss_fraction = 0.0;
  /// One entry per node, in canonical index order.
  std::vector<NodeCitations> per_node_citations;
};

/// Before/after statistics of `reduced` against `g`. Both graphs must share
/// the node table.
TrReport tr_report(const CitationGraph& g, const CitationGraph& reduced);
TrReport tr_report(const CitationGraph& g, const SweepOptions& options = {});

/// Nodes ordered by post-reduction citation count, descending; ties by
/// pre-reduction count (descending) then id. At most top_k entries.
std::vector<NodeCitations> post_tr_ranking(const TrReport& report,
                                           std::size_t top_k);
std::vector<NodeCitations> post_tr_ranking(const CitationGraph& g,
                                           std::size_t top_k,
                                           const SweepOptions& options = {});

struct DegreeBin {
  std::size_t degree = 0;
  std::size_t count_before = 0;
  std::size_t count_after = 0;
};

/// In-degree histograms of g and its reduction side by side, one bin per
/// degree present in either.
std::vector<DegreeBin> citation_histogram(const CitationGraph& g,
                                          const CitationGraph& reduced);

}  // namespace citenet

#endif  // CITENET_TRANSITIVE_HPP
