#ifndef CITENET_TESTS_ORACLES_HPP
#define CITENET_TESTS_ORACLES_HPP

// Reference implementations used only by tests. They deliberately share no
// code with the library's sweep: plain DFS per node, boolean matrices, and
// the textbook definition of a redundant edge.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "citenet/graph.hpp"

namespace citenet::testing {

using Matrix = std::vector<std::vector<bool>>;

/// reach[u][v]: v reachable from u by a non-empty path, by DFS from each u.
inline Matrix reachability(const CitationGraph& g) {
  const std::size_t n = g.size();
  Matrix reach(n, std::vector<bool>(n, false));
  for (NodeIndex u = 0; u < n; ++u) {
    std::vector<NodeIndex> stack(g.out_edges(u).begin(), g.out_edges(u).end());
    while (!stack.empty()) {
      const NodeIndex x = stack.back();
      stack.pop_back();
      if (reach[u][x]) continue;
      reach[u][x] = true;
      for (NodeIndex y : g.out_edges(x)) stack.push_back(y);
    }
  }
  return reach;
}

/// Edge u->v is redundant iff v is reachable from some other out-neighbour
/// of u. O(n^3) overall.
inline std::vector<std::pair<NodeIndex, NodeIndex>> naive_reduction(
    const CitationGraph& g) {
  const Matrix reach = reachability(g);
  std::vector<std::pair<NodeIndex, NodeIndex>> kept;
  for (NodeIndex u = 0; u < g.size(); ++u) {
    for (NodeIndex v : g.out_edges(u)) {
      bool implied = false;
      for (NodeIndex w : g.out_edges(u)) {
        if (w != v && reach[w][v]) {
          implied = true;
          break;
        }
      }
      if (!implied) kept.emplace_back(u, v);
    }
  }
  return kept;
}

inline std::vector<std::pair<NodeIndex, NodeIndex>> closure_pairs(
    const Matrix& reach) {
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  for (NodeIndex u = 0; u < reach.size(); ++u) {
    for (NodeIndex v = 0; v < reach.size(); ++v) {
      if (reach[u][v]) pairs.emplace_back(u, v);
    }
  }
  return pairs;
}

inline std::string label(std::size_t i) {
  std::string digits = std::to_string(i);
  return "n" + std::string(digits.size() < 5 ? 5 - digits.size() : 0, '0') +
         digits;
}

/// Random DAG on n nodes: node i has time i, each pair (i > j) becomes the
/// edge i -> j with probability `density`. Input order is shuffled so the
/// builder's canonical sort is exercised.
inline BuildResult random_dag(std::size_t n, double density,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<NodeRecord> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({label(i), static_cast<double>(i)});
  }
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (coin(rng)) edges.push_back({label(i), label(j)});
    }
  }
  std::shuffle(nodes.begin(), nodes.end(), rng);
  std::shuffle(edges.begin(), edges.end(), rng);
  return build_graph(std::span<const NodeRecord>(nodes),
                     std::span<const EdgeRecord>(edges));
}

/// Price-style growing DAG: node t cites min(t, m) distinct earlier nodes,
/// each chosen with probability proportional to (in-degree + 1).
inline CitationGraph price_dag(std::size_t n, std::size_t m,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NodeRecord> nodes;
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({label(i), static_cast<double>(i)});
  }
  std::vector<PositionEdge> edges;
  edges.reserve(n * m);
  std::vector<std::size_t> cited;  // one entry per citation received
  cited.reserve(n * m);
  std::vector<std::size_t> picks;
  for (std::size_t t = 1; t < n; ++t) {
    const std::size_t k = std::min(t, m);
    picks.clear();
    while (picks.size() < k) {
      const double uniform_weight = static_cast<double>(t);
      const double total = uniform_weight + static_cast<double>(cited.size());
      std::size_t target;
      if (std::uniform_real_distribution<double>(0.0, total)(rng) < uniform_weight) {
        target = std::uniform_int_distribution<std::size_t>(0, t - 1)(rng);
      } else {
        target = cited[std::uniform_int_distribution<std::size_t>(
            0, cited.size() - 1)(rng)];
      }
      if (std::find(picks.begin(), picks.end(), target) == picks.end()) {
        picks.push_back(target);
      }
    }
    for (std::size_t target : picks) {
      edges.emplace_back(t, target);
      cited.push_back(target);
    }
  }
  return build_graph(std::span<const NodeRecord>(nodes),
                     std::span<const PositionEdge>(edges))
      .graph;
}

/// Graph with the given node times (ids label(i)) and edges by position.
inline CitationGraph graph_of(const std::vector<double>& times,
                              const std::vector<PositionEdge>& edges) {
  std::vector<NodeRecord> nodes;
  for (std::size_t i = 0; i < times.size(); ++i) {
    nodes.push_back({label(i), times[i]});
  }
  return build_graph(std::span<const NodeRecord>(nodes),
                     std::span<const PositionEdge>(edges))
      .graph;
}

}  // namespace citenet::testing

#endif  // CITENET_TESTS_ORACLES_HPP
