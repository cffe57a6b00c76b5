#ifndef CITENET_INTERVALS_HPP
#define CITENET_INTERVALS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "citenet/graph.hpp"

namespace citenet {

struct IntervalOptions {
  /// Count the source and target themselves as interval members, and the
  /// endpoints of sub-intervals in N1 / N2.
  bool include_endpoints = false;
  /// Intervals with more interior members are refused with ResourceError;
  /// the member reachability matrix needs members^2 / 8 bytes.
  std::size_t max_members = 100'000;
};

struct IntervalSummary {
  NodeIndex source = 0;
  NodeIndex target = 0;
  /// Sorted ascending.
  std::vector<NodeIndex> members;
  std::uint64_t N = 0;
  /// Unordered member pairs (a, b) with a path a -> b.
  std::uint64_t P = 0;
};

struct MidpointSplit {
  NodeIndex midpoint = 0;
  std::uint64_t N1 = 0;
  std::uint64_t N2 = 0;
};

/// Reachability among the members of one causal interval, as a dense bit
/// matrix over member positions. Answers relation counts and sub-interval
/// sizes for every member without further graph traversal.
class IntervalAnalysis {
 public:
  /// Throws UsageError when source == target, UnknownNodeError for
  /// out-of-range indices.
  IntervalAnalysis(const CitationGraph& g, NodeIndex source, NodeIndex target,
                   const IntervalOptions& options = {});
  /// Reuses interior members already computed by interior_members().
  IntervalAnalysis(const CitationGraph& g, NodeIndex source, NodeIndex target,
                   std::vector<NodeIndex> interior,
                   const IntervalOptions& options = {});

  NodeIndex source() const { return source_; }
  NodeIndex target() const { return target_; }
  /// Interior members, sorted ascending (endpoints never included here).
  const std::vector<NodeIndex>& interior() const { return interior_; }
  std::uint64_t size() const;
  std::uint64_t relations() const;
  IntervalSummary summary() const;

  /// Balanced split point; nullopt when the interval has no interior member.
  std::optional<MidpointSplit> midpoint() const;

  /// Sub-interval sizes (source, m) and (m, target) for interior member at
  /// position i of interior().
  std::pair<std::uint64_t, std::uint64_t> split_sizes(std::size_t i) const;

 private:
  bool reaches(std::size_t a, std::size_t b) const {
    return (reach_[a * words_ + b / 64] >> (b % 64)) & 1u;
  }

  NodeIndex source_;
  NodeIndex target_;
  bool include_endpoints_;
  std::vector<NodeIndex> interior_;
  std::size_t words_ = 0;
  // reach_[a] holds the interior members reachable from interior member a.
  std::vector<std::uint64_t> reach_;
  std::vector<std::uint64_t> below_;  // members reachable from each member
  std::vector<std::uint64_t> above_;  // members reaching each member
  std::uint64_t interior_relations_ = 0;
  bool connected_ = false;
};

/// Nodes strictly between source and target on some directed path
/// source -> target, sorted ascending. Empty when no path exists. Throws
/// UsageError when source == target.
std::vector<NodeIndex> interior_members(const CitationGraph& g,
                                        NodeIndex source, NodeIndex target);

/// True when target is reachable from source (or the interval is non-empty).
bool has_path(const CitationGraph& g, NodeIndex source, NodeIndex target);

/// Members of the interval between source (newer) and target: nodes on some
/// directed path source -> target.
IntervalSummary interval(const CitationGraph& g, NodeIndex source,
                         NodeIndex target, const IntervalOptions& options = {});
IntervalSummary interval(const CitationGraph& g, std::string_view source,
                         std::string_view target,
                         const IntervalOptions& options = {});

/// Number of unordered pairs (a, b) of `members` such that b is reachable
/// from a in g; paths may leave the member set.
std::uint64_t count_relations(const CitationGraph& g,
                              std::span<const NodeIndex> members);

/// Member maximizing min(N1, N2); ties by smaller |N1 - N2|, then smaller
/// index. Throws EstimateError on an empty interval.
MidpointSplit find_midpoint(const CitationGraph& g, NodeIndex source,
                            NodeIndex target,
                            const IntervalOptions& options = {});
MidpointSplit find_midpoint(const CitationGraph& g, std::string_view source,
                            std::string_view target,
                            const IntervalOptions& options = {});

}  // namespace citenet

#endif  // CITENET_INTERVALS_HPP
