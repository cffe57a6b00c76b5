#include "citenet/transitive.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>

#include "citenet/error.hpp"
#include "parallel.hpp"

namespace citenet {

namespace {

// Reduction state of each edge, written by the stripe that owns its target.
enum EdgeState : std::uint8_t { kUnresolved = 0, kKept = 1, kImplied = 2 };

// Storage reused across stripes by one worker. Between uses every word is
// zero and every row range is empty.
struct StripeScratch {
  std::vector<std::uint64_t> bits;
  std::vector<std::uint32_t> lo;
  std::vector<std::uint32_t> hi;
};

constexpr std::uint32_t kEmptyLo = std::numeric_limits<std::uint32_t>::max();

// Descendant bitsets of nodes [base, n) restricted to targets [base, base +
// width). Each row remembers the range of words it has touched, so empty and
// narrow rows are cheap to merge and to clear when the stripe is done.
class StripeRows {
 public:
  StripeRows(StripeScratch& scratch, NodeIndex base, std::size_t width,
             std::size_t nodes)
      : base_(base), rows_(nodes - base), words_((width + 63) / 64), s_(scratch) {
    if (s_.bits.size() < rows_ * words_) s_.bits.resize(rows_ * words_, 0);
    if (s_.lo.size() < rows_) {
      s_.lo.resize(rows_, kEmptyLo);
      s_.hi.resize(rows_, 0);
    }
  }

  ~StripeRows() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (s_.lo[r] < s_.hi[r]) {
        std::fill(s_.bits.begin() + r * words_ + s_.lo[r],
                  s_.bits.begin() + r * words_ + s_.hi[r], 0);
      }
      s_.lo[r] = kEmptyLo;
      s_.hi[r] = 0;
    }
  }

  StripeRows(const StripeRows&) = delete;
  StripeRows& operator=(const StripeRows&) = delete;

  bool test(NodeIndex row, NodeIndex target) const {
    const std::size_t bit = target - base_;
    return (s_.bits[offset(row) + bit / 64] >> (bit % 64)) & 1u;
  }

  void set(NodeIndex row, NodeIndex target) {
    const std::size_t bit = target - base_;
    const auto word = static_cast<std::uint32_t>(bit / 64);
    s_.bits[offset(row) + word] |= std::uint64_t{1} << (bit % 64);
    const std::size_t r = row - base_;
    s_.lo[r] = std::min(s_.lo[r], word);
    s_.hi[r] = std::max(s_.hi[r], word + 1);
  }

  void merge(NodeIndex row, NodeIndex from) {
    const std::size_t src = from - base_;
    const std::uint32_t lo = s_.lo[src];
    const std::uint32_t hi = s_.hi[src];
    if (lo >= hi) return;
    std::uint64_t* dst_bits = s_.bits.data() + offset(row);
    const std::uint64_t* src_bits = s_.bits.data() + offset(from);
    for (std::uint32_t w = lo; w < hi; ++w) dst_bits[w] |= src_bits[w];
    const std::size_t r = row - base_;
    s_.lo[r] = std::min(s_.lo[r], lo);
    s_.hi[r] = std::max(s_.hi[r], hi);
  }

  std::uint64_t count(NodeIndex row) const {
    const std::size_t r = row - base_;
    std::uint64_t total = 0;
    const std::uint64_t* b = s_.bits.data() + offset(row);
    for (std::uint32_t w = s_.lo[r]; w < s_.hi[r]; ++w) total += std::popcount(b[w]);
    return total;
  }

  template <typename Fn>
  void for_each(NodeIndex row, Fn&& fn) const {
    const std::size_t r = row - base_;
    const std::uint64_t* b = s_.bits.data() + offset(row);
    for (std::uint32_t w = s_.lo[r]; w < s_.hi[r]; ++w) {
      std::uint64_t word = b[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        fn(static_cast<NodeIndex>(base_ + w * 64 + bit));
        word &= word - 1;
      }
    }
  }

 private:
  std::size_t offset(NodeIndex row) const {
    return static_cast<std::size_t>(row - base_) * words_;
  }

  NodeIndex base_;
  std::size_t rows_;
  std::size_t words_;
  StripeScratch& s_;
};

// Sweeps the graph one target stripe at a time, highest stripe first.
//
// For stripe S = [c0, c1), nodes u >= c0 are visited in ascending index order
// (sinks first). Each u walks its out-neighbours from nearest (highest index)
// to farthest. A neighbour v inside S already present in u's row is implied by
// a longer path, so u->v is not part of the reduction and v's row is not
// merged. Otherwise the edge is kept and v's row is merged. Neighbours above
// the stripe are merged unless their edge is already known to be implied;
// those states come from stripes processed earlier, and a state that is not
// yet known only costs an extra merge. Every edge's state is therefore
// decided by the stripe containing its target, independent of scheduling.
class Sweep {
 public:
  Sweep(const CitationGraph& g, const SweepOptions& options)
      : g_(g),
        chunk_(std::max<std::size_t>(64, options.chunk_size)),
        states_(g.edge_count()) {
    const std::size_t n = g.size();
    stripes_ = (n + chunk_ - 1) / chunk_;
    const std::size_t stripe_bytes =
        std::max<std::size_t>(1, n * (chunk_ / 8 + 8));
    const std::size_t by_memory =
        std::max<std::size_t>(1, options.memory_budget / stripe_bytes);
    threads_ = static_cast<unsigned>(std::min<std::size_t>(
        {detail::worker_count(options.threads), by_memory,
         std::max<std::size_t>(1, stripes_)}));
  }

  std::size_t stripes() const { return stripes_; }

  // Runs every stripe. `visit(stripe, rows, first_row)` is called once per
  // stripe after its rows are complete, from the worker that computed it.
  template <typename Visit>
  void run(Visit&& visit) {
    detail::parallel_for(0, stripes_, threads_, [&](std::size_t k) {
      const std::size_t stripe = stripes_ - 1 - k;
      std::unique_ptr<StripeScratch> scratch = acquire();
      {
        const auto c0 = static_cast<NodeIndex>(stripe * chunk_);
        const std::size_t c1 = std::min(g_.size(), (stripe + 1) * chunk_);
        StripeRows rows(*scratch, c0, c1 - c0, g_.size());
        compute(c0, static_cast<NodeIndex>(c1), rows);
        visit(stripe, rows, c0);
      }
      release(std::move(scratch));
    });
  }

  bool kept(std::uint64_t edge) const {
    return states_[edge].load(std::memory_order_relaxed) == kKept;
  }

 private:
  std::unique_ptr<StripeScratch> acquire() {
    std::lock_guard lock(pool_mutex_);
    if (pool_.empty()) return std::make_unique<StripeScratch>();
    auto scratch = std::move(pool_.back());
    pool_.pop_back();
    return scratch;
  }

  void release(std::unique_ptr<StripeScratch> scratch) {
    std::lock_guard lock(pool_mutex_);
    pool_.push_back(std::move(scratch));
  }

  void compute(NodeIndex c0, NodeIndex c1, StripeRows& rows) {
    const std::size_t n = g_.size();
    for (NodeIndex u = c0; u < n; ++u) {
      auto outs = g_.out_edges(u);
      const std::uint64_t first = g_.edge_offset(u);
      for (std::size_t i = outs.size(); i-- > 0;) {
        const NodeIndex v = outs[i];
        if (v < c0) break;
        auto& state = states_[first + i];
        if (v >= c1) {
          if (state.load(std::memory_order_acquire) != kImplied) rows.merge(u, v);
        } else if (rows.test(u, v)) {
          state.store(kImplied, std::memory_order_release);
        } else {
          state.store(kKept, std::memory_order_release);
          rows.set(u, v);
          rows.merge(u, v);
        }
      }
    }
  }

  const CitationGraph& g_;
  std::size_t chunk_;
  std::size_t stripes_ = 0;
  unsigned threads_ = 1;
  std::vector<std::atomic<std::uint8_t>> states_;
  std::mutex pool_mutex_;
  std::vector<std::unique_ptr<StripeScratch>> pool_;
};

}  // namespace

CitationGraph transitive_reduction(const CitationGraph& g,
                                   const SweepOptions& options) {
  Sweep sweep(g, options);
  sweep.run([](std::size_t, const StripeRows&, NodeIndex) {});
  std::vector<std::uint64_t> offsets(g.size() + 1, 0);
  std::vector<NodeIndex> targets;
  for (NodeIndex u = 0; u < g.size(); ++u) {
    auto outs = g.out_edges(u);
    const std::uint64_t first = g.edge_offset(u);
    for (std::size_t i = 0; i < outs.size(); ++i) {
      if (sweep.kept(first + i)) targets.push_back(outs[i]);
    }
    offsets[u + 1] = targets.size();
  }
  return CitationGraph::from_out_csr(g.nodes(), std::move(offsets),
                                     std::move(targets));
}

CitationGraph transitive_closure(const CitationGraph& g,
                                 const ClosureOptions& options) {
  Sweep sweep(g, options.sweep);
  std::vector<std::vector<std::pair<NodeIndex, NodeIndex>>> per_stripe(
      sweep.stripes());
  std::atomic<std::uint64_t> total{0};
  sweep.run([&](std::size_t stripe, const StripeRows& rows, NodeIndex first) {
    auto& out = per_stripe[stripe];
    for (NodeIndex u = first; u < g.size(); ++u) {
      const std::uint64_t c = rows.count(u);
      if (c == 0) continue;
      if (total.fetch_add(c) + c > options.edge_budget) {
        throw ResourceError("transitive closure exceeds the edge budget of " +
                            std::to_string(options.edge_budget) + " edges");
      }
      rows.for_each(u, [&](NodeIndex v) { out.emplace_back(u, v); });
    }
  });

  const std::size_t n = g.size();
  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (const auto& part : per_stripe) {
    for (auto [u, v] : part) ++offsets[u + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<NodeIndex> targets(offsets.back());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  // Stripes cover ascending target ranges, so each out-list stays sorted.
  for (auto& part : per_stripe) {
    for (auto [u, v] : part) targets[cursor[u]++] = v;
    part = {};
  }
  return CitationGraph::from_out_csr(g.nodes(), std::move(offsets),
                                     std::move(targets));
}

std::uint64_t count_reachable_pairs(const CitationGraph& g,
                                    const SweepOptions& options) {
  Sweep sweep(g, options);
  std::atomic<std::uint64_t> total{0};
  sweep.run([&](std::size_t, const StripeRows& rows, NodeIndex first) {
    std::uint64_t local = 0;
    for (NodeIndex u = first; u < g.size(); ++u) local += rows.count(u);
    total += local;
  });
  return total;
}

TrReport tr_report(const CitationGraph& g, const CitationGraph& reduced) {
  if (g.nodes() != reduced.nodes()) {
    throw UsageError("tr_report: graphs do not share a node table");
  }
  TrReport report;
  report.edges_before = g.edge_count();
  report.edges_after = reduced.edge_count();
  if (report.edges_before > 0) {
    report.edge_loss_fraction =
        1.0 - static_cast<double>(report.edges_after) /
                  static_cast<double>(report.edges_before);
  }
  report.per_node_citations.reserve(g.size());
  for (NodeIndex v = 0; v < g.size(); ++v) {
    report.per_node_citations.push_back(
        {v, g.id(v), g.in_degree(v), reduced.in_degree(v)});
  }
  return report;
}

TrReport tr_report(const CitationGraph& g, const SweepOptions& options) {
  return tr_report(g, transitive_reduction(g, options));
}

std::vector<NodeCitations> post_tr_ranking(const TrReport& report,
                                           std::size_t top_k) {
  if (top_k == 0) throw UsageError("post_tr_ranking: top_k must be >= 1");
  std::vector<NodeCitations> ranked = report.per_node_citations;
  auto before = [](const NodeCitations& a, const NodeCitations& b) {
    if (a.count_after != b.count_after) return a.count_after > b.count_after;
    if (a.count_before != b.count_before) return a.count_before > b.count_before;
    return a.id < b.id;
  };
  const std::size_t k = std::min(top_k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end(), before);
  ranked.resize(k);
  return ranked;
}

std::vector<NodeCitations> post_tr_ranking(const CitationGraph& g,
                                           std::size_t top_k,
                                           const SweepOptions& options) {
  return post_tr_ranking(tr_report(g, options), top_k);
}

std::vector<DegreeBin> citation_histogram(const CitationGraph& g,
                                          const CitationGraph& reduced) {
  const auto before = degree_distribution(g, Direction::in);
  const auto after = degree_distribution(reduced, Direction::in);
  std::map<std::size_t, DegreeBin> bins;
  for (auto [d, c] : before) {
    bins[d].degree = d;
    bins[d].count_before = c;
  }
  for (auto [d, c] : after) {
    bins[d].degree = d;
    bins[d].count_after = c;
  }
  std::vector<DegreeBin> result;
  result.reserve(bins.size());
  for (const auto& [d, bin] : bins) result.push_back(bin);
  return result;
}

}  // namespace citenet
