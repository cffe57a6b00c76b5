#include "citenet/intervals.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "citenet/error.hpp"

namespace citenet {

namespace {

void require_pair(const CitationGraph& g, NodeIndex source, NodeIndex target) {
  if (source >= g.size()) throw UnknownNodeError("#" + std::to_string(source));
  if (target >= g.size()) throw UnknownNodeError("#" + std::to_string(target));
  if (source == target) {
    throw UsageError("interval endpoints must differ (got '" + g.id(source) +
                     "' twice)");
  }
}

// Nodes on a path source -> target all have indices strictly between the
// two, so marks are kept for that window only. Bit 1: reached from source,
// bit 2: reaches target.
struct Window {
  Window(const CitationGraph& g, NodeIndex source, NodeIndex target)
      : lo(target), marks(source > target ? source - target + 1 : 0, 0) {
    if (marks.empty()) return;
    std::vector<NodeIndex> stack{source};
    while (!stack.empty()) {
      const NodeIndex x = stack.back();
      stack.pop_back();
      for (NodeIndex v : g.out_edges(x)) {
        if (v < target) continue;
        auto& m = marks[v - lo];
        if (!(m & 1)) {
          m |= 1;
          if (v != target) stack.push_back(v);
        }
      }
    }
    if (!(marks[0] & 1)) return;
    stack.push_back(target);
    while (!stack.empty()) {
      const NodeIndex x = stack.back();
      stack.pop_back();
      for (NodeIndex u : g.in_edges(x)) {
        if (u >= source) continue;
        auto& m = marks[u - lo];
        if ((m & 1) && !(m & 2)) {
          m |= 2;
          stack.push_back(u);
        }
      }
    }
  }

  bool connected() const { return !marks.empty() && (marks[0] & 1); }

  NodeIndex lo;
  std::vector<std::uint8_t> marks;
};

}  // namespace

std::vector<NodeIndex> interior_members(const CitationGraph& g,
                                        NodeIndex source, NodeIndex target) {
  require_pair(g, source, target);
  Window window(g, source, target);
  std::vector<NodeIndex> interior;
  for (std::size_t i = 1; i + 1 < window.marks.size(); ++i) {
    if (window.marks[i] == 3) interior.push_back(window.lo + i);
  }
  return interior;
}

bool has_path(const CitationGraph& g, NodeIndex source, NodeIndex target) {
  require_pair(g, source, target);
  return Window(g, source, target).connected();
}

IntervalAnalysis::IntervalAnalysis(const CitationGraph& g, NodeIndex source,
                                   NodeIndex target,
                                   const IntervalOptions& options)
    : IntervalAnalysis(g, source, target, interior_members(g, source, target),
                       options) {}

IntervalAnalysis::IntervalAnalysis(const CitationGraph& g, NodeIndex source,
                                   NodeIndex target,
                                   std::vector<NodeIndex> interior,
                                   const IntervalOptions& options)
    : source_(source),
      target_(target),
      include_endpoints_(options.include_endpoints),
      interior_(std::move(interior)) {
  const std::size_t n = interior_.size();
  if (n > options.max_members) {
    throw ResourceError("interval has " + std::to_string(n) +
                        " members, above the limit of " +
                        std::to_string(options.max_members));
  }
  connected_ = n > 0 || (include_endpoints_ && has_path(g, source, target));
  if (n == 0) return;

  words_ = (n + 63) / 64;
  reach_.assign(n * words_, 0);
  below_.assign(n, 0);
  above_.assign(n, 0);

  const NodeIndex lo = interior_.front();
  std::vector<std::int32_t> local(interior_.back() - lo + 1, -1);
  for (std::size_t i = 0; i < n; ++i) {
    local[interior_[i] - lo] = static_cast<std::int32_t>(i);
  }

  // Members ascending means every member's descendants are finished first.
  // Any path between two members stays inside the interval, so neighbours
  // outside it are ignored.
  for (std::size_t a = 0; a < n; ++a) {
    std::uint64_t* row = reach_.data() + a * words_;
    auto outs = g.out_edges(interior_[a]);
    for (std::size_t k = outs.size(); k-- > 0;) {
      const NodeIndex v = outs[k];
      if (v < lo) break;
      const std::int32_t b = local[v - lo];
      if (b < 0 || reaches(a, static_cast<std::size_t>(b))) continue;
      row[b / 64] |= std::uint64_t{1} << (b % 64);
      const std::uint64_t* src = reach_.data() + b * words_;
      for (std::size_t w = 0; w <= static_cast<std::size_t>(b) / 64; ++w) {
        row[w] |= src[w];
      }
    }
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = row[w];
      below_[a] += std::popcount(word);
      while (word != 0) {
        ++above_[w * 64 + std::countr_zero(word)];
        word &= word - 1;
      }
    }
    interior_relations_ += below_[a];
  }
}

std::uint64_t IntervalAnalysis::size() const {
  if (!connected_) return 0;
  return interior_.size() + (include_endpoints_ ? 2 : 0);
}

std::uint64_t IntervalAnalysis::relations() const {
  if (!include_endpoints_ || !connected_) return interior_relations_;
  // source precedes everything, target follows everything, source -> target
  return interior_relations_ + 2 * interior_.size() + 1;
}

IntervalSummary IntervalAnalysis::summary() const {
  IntervalSummary s;
  s.source = source_;
  s.target = target_;
  s.members = interior_;
  if (include_endpoints_ && connected_) {
    s.members.insert(s.members.begin(), target_);
    s.members.push_back(source_);
  }
  s.N = size();
  s.P = relations();
  return s;
}

std::pair<std::uint64_t, std::uint64_t> IntervalAnalysis::split_sizes(
    std::size_t i) const {
  const std::uint64_t extra = include_endpoints_ ? 2 : 0;
  return {above_.at(i) + extra, below_.at(i) + extra};
}

std::optional<MidpointSplit> IntervalAnalysis::midpoint() const {
  std::optional<MidpointSplit> best;
  auto spread = [](const MidpointSplit& s) {
    return s.N1 > s.N2 ? s.N1 - s.N2 : s.N2 - s.N1;
  };
  for (std::size_t i = 0; i < interior_.size(); ++i) {
    const auto [n1, n2] = split_sizes(i);
    MidpointSplit candidate{interior_[i], n1, n2};
    if (!best) {
      best = candidate;
      continue;
    }
    const auto cand_min = std::min(n1, n2);
    const auto best_min = std::min(best->N1, best->N2);
    // members are visited in ascending index, so equal keys keep the first
    if (cand_min > best_min ||
        (cand_min == best_min && spread(candidate) < spread(*best))) {
      best = candidate;
    }
  }
  return best;
}

IntervalSummary interval(const CitationGraph& g, NodeIndex source,
                         NodeIndex target, const IntervalOptions& options) {
  return IntervalAnalysis(g, source, target, options).summary();
}

IntervalSummary interval(const CitationGraph& g, std::string_view source,
                         std::string_view target,
                         const IntervalOptions& options) {
  return interval(g, g.at(source), g.at(target), options);
}

std::uint64_t count_relations(const CitationGraph& g,
                              std::span<const NodeIndex> members) {
  std::vector<NodeIndex> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 2) return 0;
  if (sorted.back() >= g.size()) {
    throw UnknownNodeError("#" + std::to_string(sorted.back()));
  }
  const NodeIndex lo = sorted.front();
  const NodeIndex hi = sorted.back();

  // Nodes in [lo, hi] reachable from some member, not counting the member
  // itself unless reached; only these can carry a path between members.
  std::vector<std::uint8_t> relevant(hi - lo + 1, 0);
  std::vector<NodeIndex> stack(sorted.begin(), sorted.end());
  for (NodeIndex m : sorted) relevant[m - lo] = 1;
  while (!stack.empty()) {
    const NodeIndex x = stack.back();
    stack.pop_back();
    for (NodeIndex v : g.out_edges(x)) {
      if (v < lo) continue;
      if (!relevant[v - lo]) {
        relevant[v - lo] = 1;
        stack.push_back(v);
      }
    }
  }

  const std::size_t k = sorted.size();
  const std::size_t words = (k + 63) / 64;
  std::vector<std::int64_t> slot(hi - lo + 1, -1);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < relevant.size(); ++i) {
    if (relevant[i]) slot[i] = static_cast<std::int64_t>(rows++);
  }
  std::vector<std::int64_t> member_bit(hi - lo + 1, -1);
  for (std::size_t i = 0; i < k; ++i) {
    member_bit[sorted[i] - lo] = static_cast<std::int64_t>(i);
  }

  std::vector<std::uint64_t> reach(rows * words, 0);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < relevant.size(); ++i) {
    if (!relevant[i]) continue;
    std::uint64_t* row = reach.data() + slot[i] * words;
    for (NodeIndex v : g.out_edges(lo + static_cast<NodeIndex>(i))) {
      if (v < lo || !relevant[v - lo]) continue;
      const std::uint64_t* src = reach.data() + slot[v - lo] * words;
      for (std::size_t w = 0; w < words; ++w) row[w] |= src[w];
      if (const auto b = member_bit[v - lo]; b >= 0) {
        row[b / 64] |= std::uint64_t{1} << (b % 64);
      }
    }
    if (member_bit[i] >= 0) {
      for (std::size_t w = 0; w < words; ++w) total += std::popcount(row[w]);
    }
  }
  return total;
}

MidpointSplit find_midpoint(const CitationGraph& g, NodeIndex source,
                            NodeIndex target, const IntervalOptions& options) {
  auto split = IntervalAnalysis(g, source, target, options).midpoint();
  if (!split) {
    throw EstimateError("interval between '" + g.id(source) + "' and '" +
                        g.id(target) +
                        "' is empty; no midpoint for box counting");
  }
  return *split;
}

MidpointSplit find_midpoint(const CitationGraph& g, std::string_view source,
                            std::string_view target,
                            const IntervalOptions& options) {
  return find_midpoint(g, g.at(source), g.at(target), options);
}

}  // namespace citenet
