#include "citenet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "citenet/error.hpp"

namespace citenet {

NodeTable::NodeTable(std::vector<std::string> ids, std::vector<double> times)
    : ids_(std::move(ids)), times_(std::move(times)) {
  if (ids_.size() != times_.size()) {
    throw UsageError("node table: id and time counts differ");
  }
  if (ids_.size() > std::numeric_limits<NodeIndex>::max()) {
    throw ResourceError("node table: too many nodes for 32-bit indices");
  }
  index_.reserve(ids_.size());
  for (NodeIndex i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw DataError("duplicate node id '" + ids_[i] + "'");
    }
  }
}

NodeIndex NodeTable::at(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownNodeError(std::string(id));
  return it->second;
}

bool NodeTable::contains(std::string_view id) const {
  return index_.find(id) != index_.end();
}

CitationGraph::CitationGraph()
    : CitationGraph(std::make_shared<const NodeTable>(
                        std::vector<std::string>{}, std::vector<double>{}),
                    std::vector<std::uint64_t>{0}, {}) {}

CitationGraph::CitationGraph(std::shared_ptr<const NodeTable> nodes,
                             std::vector<std::uint64_t> out_offsets,
                             std::vector<NodeIndex> out_targets)
    : nodes_(std::move(nodes)),
      out_offsets_(std::move(out_offsets)),
      out_targets_(std::move(out_targets)) {
  build_transpose();
}

void CitationGraph::build_transpose() {
  const std::size_t n = size();
  in_offsets_.assign(n + 1, 0);
  for (NodeIndex v : out_targets_) ++in_offsets_[v + 1];
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
  in_sources_.resize(out_targets_.size());
  std::vector<std::uint64_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  // Sources are visited in ascending order, so every in-list comes out sorted.
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v : out_edges(u)) in_sources_[cursor[v]++] = u;
  }
}

namespace {

void require_canonical(const NodeTable& nodes,
                       std::span<const std::uint64_t> offsets,
                       std::span<const NodeIndex> targets) {
  const std::size_t n = nodes.size();
  if (offsets.size() != n + 1 || offsets.front() != 0 ||
      offsets.back() != targets.size()) {
    throw DataError("adjacency offsets do not match the node table");
  }
  for (NodeIndex u = 0; u < n; ++u) {
    if (offsets[u] > offsets[u + 1]) {
      throw DataError("adjacency offsets are not monotone");
    }
    for (std::uint64_t e = offsets[u]; e < offsets[u + 1]; ++e) {
      const NodeIndex v = targets[e];
      if (v >= u) {
        throw DataError("edge " + nodes.id(u) + " -> " + nodes.id(v) +
                        " does not point to a lower canonical index");
      }
      if (e > offsets[u] && targets[e - 1] >= v) {
        throw DataError("out-edges of " + nodes.id(u) +
                        " are unsorted or duplicated");
      }
      if (nodes.time(v) > nodes.time(u)) {
        throw DataError("edge " + nodes.id(u) + " -> " + nodes.id(v) +
                        " points forward in time");
      }
    }
  }
}

}  // namespace

CitationGraph CitationGraph::from_out_csr(
    std::shared_ptr<const NodeTable> nodes, std::vector<std::uint64_t> offsets,
    std::vector<NodeIndex> targets) {
  require_canonical(*nodes, offsets, targets);
  return CitationGraph(std::move(nodes), std::move(offsets),
                       std::move(targets));
}

CitationGraph CitationGraph::from_sorted_edges(
    std::shared_ptr<const NodeTable> nodes,
    std::span<const std::pair<NodeIndex, NodeIndex>> edges) {
  const std::size_t n = nodes->size();
  std::vector<std::uint64_t> offsets(n + 1, 0);
  std::vector<NodeIndex> targets;
  targets.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u >= n || v >= n) throw DataError("edge endpoint out of range");
    if (i > 0 && edges[i - 1].first > u) {
      throw DataError("edge list is not sorted by citing node");
    }
    ++offsets[u + 1];
    targets.push_back(v);
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return from_out_csr(std::move(nodes), std::move(offsets),
                      std::move(targets));
}

std::vector<std::pair<NodeIndex, NodeIndex>> CitationGraph::edges() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> result;
  result.reserve(edge_count());
  for (NodeIndex u = 0; u < size(); ++u) {
    for (NodeIndex v : out_edges(u)) result.emplace_back(u, v);
  }
  return result;
}

namespace {

constexpr std::size_t kUnknown = static_cast<std::size_t>(-1);

// Reorders every run of equal-time nodes in `order` so that kept equal-time
// edges point to earlier positions. Returns false on a cycle.
bool order_equal_time_groups(std::span<const NodeRecord> nodes,
                             std::vector<std::size_t>& order,
                             std::span<const PositionEdge> equal_edges) {
  const std::size_t n = nodes.size();
  // cited-by lists restricted to equal-time edges, keyed by input position
  std::vector<std::vector<std::size_t>> citers(n);
  std::vector<std::size_t> pending(n, 0);
  {
    std::vector<PositionEdge> unique(equal_edges.begin(), equal_edges.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto [citing, cited] : unique) {
      citers[cited].push_back(citing);
      ++pending[citing];
    }
  }
  auto by_id = [&](std::size_t a, std::size_t b) {
    return nodes[a].id > nodes[b].id;
  };
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && nodes[order[end]].time == nodes[order[begin]].time) {
      ++end;
    }
    bool touched = false;
    for (std::size_t i = begin; i < end && !touched; ++i) {
      touched = pending[order[i]] > 0 || !citers[order[i]].empty();
    }
    if (touched) {
      std::priority_queue<std::size_t, std::vector<std::size_t>,
                          decltype(by_id)>
          ready(by_id);
      for (std::size_t i = begin; i < end; ++i) {
        if (pending[order[i]] == 0) ready.push(order[i]);
      }
      std::size_t placed = begin;
      while (!ready.empty()) {
        const std::size_t p = ready.top();
        ready.pop();
        order[placed++] = p;
        for (std::size_t c : citers[p]) {
          if (--pending[c] == 0) ready.push(c);
        }
      }
      if (placed != end) return false;
    }
    begin = end;
  }
  return true;
}

BuildResult build_from_positions(std::span<const NodeRecord> nodes,
                                 std::span<const PositionEdge> edges,
                                 const BuildOptions& options) {
  const std::size_t n = nodes.size();
  for (const auto& node : nodes) {
    if (!std::isfinite(node.time)) {
      throw DataError("node '" + node.id + "' has a non-finite time");
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (nodes[a].time != nodes[b].time) return nodes[a].time < nodes[b].time;
    return nodes[a].id < nodes[b].id;
  });

  IngestReport report;
  report.edges_total = edges.size();
  std::vector<PositionEdge> causal;
  std::vector<PositionEdge> equal_time;
  causal.reserve(edges.size());
  for (auto [citing, cited] : edges) {
    if (citing >= n || cited >= n) {
      ++report.edges_unknown_node_dropped;
    } else if (citing == cited) {
      ++report.self_loops_dropped;
    } else if (nodes[citing].time < nodes[cited].time) {
      ++report.edges_acausal_dropped;
    } else if (nodes[citing].time == nodes[cited].time) {
      equal_time.emplace_back(citing, cited);
    } else {
      causal.emplace_back(citing, cited);
    }
  }

  if (options.keep_equal_time && !equal_time.empty()) {
    std::vector<std::size_t> reordered = order;
    if (order_equal_time_groups(nodes, reordered, equal_time)) {
      order = std::move(reordered);
      causal.insert(causal.end(), equal_time.begin(), equal_time.end());
    } else {
      report.equal_time_cycle = true;
      report.edges_equal_time_dropped = equal_time.size();
    }
  } else {
    report.edges_equal_time_dropped = equal_time.size();
  }

  std::vector<NodeIndex> rank(n);
  std::vector<std::string> ids(n);
  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) {
    rank[order[i]] = static_cast<NodeIndex>(i);
    ids[i] = nodes[order[i]].id;
    times[i] = nodes[order[i]].time;
  }
  auto table = std::make_shared<const NodeTable>(std::move(ids),
                                                 std::move(times));

  std::vector<std::pair<NodeIndex, NodeIndex>> ranked(causal.size());
  for (std::size_t i = 0; i < causal.size(); ++i) {
    ranked[i] = {rank[causal[i].first], rank[causal[i].second]};
  }
  causal.clear();
  causal.shrink_to_fit();
  std::sort(ranked.begin(), ranked.end());
  const std::size_t before = ranked.size();
  ranked.erase(std::unique(ranked.begin(), ranked.end()), ranked.end());
  report.edges_duplicate_dropped = before - ranked.size();
  report.edges_accepted = ranked.size();
  if (report.edges_total > 0) {
    report.acausal_fraction =
        static_cast<double>(report.edges_acausal_dropped +
                            report.edges_equal_time_dropped) /
        static_cast<double>(report.edges_total);
  }

  return {CitationGraph::from_sorted_edges(std::move(table), ranked), report};
}

}  // namespace

BuildResult build_graph(std::span<const NodeRecord> nodes,
                        std::span<const PositionEdge> edges,
                        const BuildOptions& options) {
  return build_from_positions(nodes, edges, options);
}

BuildResult build_graph(std::span<const NodeRecord> nodes,
                        std::span<const EdgeRecord> edges,
                        const BuildOptions& options) {
  std::unordered_map<std::string_view, std::size_t> position;
  position.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!position.emplace(nodes[i].id, i).second) {
      throw DataError("duplicate node id '" + nodes[i].id + "'");
    }
  }
  std::vector<PositionEdge> resolved;
  resolved.reserve(edges.size());
  for (const auto& e : edges) {
    auto a = position.find(e.citing);
    auto b = position.find(e.cited);
    resolved.emplace_back(a == position.end() ? kUnknown : a->second,
                          b == position.end() ? kUnknown : b->second);
  }
  return build_from_positions(nodes, resolved, options);
}

std::vector<NodeIndex> topological_order(const CitationGraph& g) {
  std::vector<NodeIndex> order(g.size());
  std::iota(order.rbegin(), order.rend(), NodeIndex{0});
  return order;
}

namespace {

template <typename Neighbours>
std::vector<NodeIndex> reachable(const CitationGraph& g, NodeIndex start,
                                 Neighbours neighbours) {
  std::vector<char> seen(g.size(), 0);
  std::vector<NodeIndex> stack{start};
  std::vector<NodeIndex> result;
  seen[start] = 1;
  while (!stack.empty()) {
    const NodeIndex x = stack.back();
    stack.pop_back();
    for (NodeIndex y : neighbours(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        result.push_back(y);
        stack.push_back(y);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

void require_node(const CitationGraph& g, NodeIndex v) {
  if (v >= g.size()) throw UnknownNodeError("#" + std::to_string(v));
}

}  // namespace

std::vector<NodeIndex> descendants(const CitationGraph& g, NodeIndex v) {
  require_node(g, v);
  return reachable(g, v, [&](NodeIndex x) { return g.out_edges(x); });
}

std::vector<NodeIndex> descendants(const CitationGraph& g,
                                   std::string_view id) {
  return descendants(g, g.at(id));
}

std::vector<NodeIndex> ancestors(const CitationGraph& g, NodeIndex v) {
  require_node(g, v);
  return reachable(g, v, [&](NodeIndex x) { return g.in_edges(x); });
}

std::vector<NodeIndex> ancestors(const CitationGraph& g, std::string_view id) {
  return ancestors(g, g.at(id));
}

std::size_t citation_count(const CitationGraph& g, std::string_view id) {
  return g.in_degree(g.at(id));
}

std::map<std::size_t, std::size_t> degree_distribution(const CitationGraph& g,
                                                       Direction direction) {
  std::map<std::size_t, std::size_t> histogram;
  for (NodeIndex v = 0; v < g.size(); ++v) {
    ++histogram[direction == Direction::in ? g.in_degree(v) : g.out_degree(v)];
  }
  return histogram;
}

std::string check_invariants(const CitationGraph& g, bool allow_equal_time) {
  std::ostringstream out;
  const std::size_t n = g.size();
  std::size_t in_total = 0;
  for (NodeIndex u = 0; u < n; ++u) {
    auto outs = g.out_edges(u);
    for (std::size_t i = 0; i < outs.size(); ++i) {
      const NodeIndex v = outs[i];
      if (v == u) {
        out << "self-loop at " << g.id(u);
        return out.str();
      }
      if (i > 0 && outs[i - 1] >= v) {
        out << "out-edges of " << g.id(u) << " unsorted or duplicated";
        return out.str();
      }
      const bool ok = allow_equal_time ? g.time(u) >= g.time(v)
                                       : g.time(u) > g.time(v);
      if (!ok) {
        out << "edge " << g.id(u) << " -> " << g.id(v)
            << " does not point to an older node";
        return out.str();
      }
      auto ins = g.in_edges(v);
      if (!std::binary_search(ins.begin(), ins.end(), u)) {
        out << "edge " << g.id(u) << " -> " << g.id(v)
            << " missing from in-adjacency";
        return out.str();
      }
    }
    in_total += g.in_degree(u);
    auto ins = g.in_edges(u);
    if (!std::is_sorted(ins.begin(), ins.end()) ||
        std::adjacent_find(ins.begin(), ins.end()) != ins.end()) {
      out << "in-edges of " << g.id(u) << " unsorted or duplicated";
      return out.str();
    }
  }
  if (in_total != g.edge_count()) return "in-adjacency size mismatch";

  // Kahn's algorithm, independent of the index order.
  std::vector<std::size_t> remaining(n);
  std::vector<NodeIndex> ready;
  for (NodeIndex v = 0; v < n; ++v) {
    remaining[v] = g.in_degree(v);
    if (remaining[v] == 0) ready.push_back(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const NodeIndex u = ready.back();
    ready.pop_back();
    ++visited;
    for (NodeIndex v : g.out_edges(u)) {
      if (--remaining[v] == 0) ready.push_back(v);
    }
  }
  if (visited != n) return "graph contains a cycle";
  return {};
}

}  // namespace citenet
