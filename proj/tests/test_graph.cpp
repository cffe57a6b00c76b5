#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "support/oracles.hpp"

using namespace citenet;
using citenet::testing::label;

namespace {

BuildResult build(std::vector<NodeRecord> nodes, std::vector<EdgeRecord> edges,
                  BuildOptions options = {}) {
  return build_graph(std::span<const NodeRecord>(nodes),
                     std::span<const EdgeRecord>(edges), options);
}

std::vector<std::string> ids(const CitationGraph& g,
                             const std::vector<NodeIndex>& nodes) {
  std::vector<std::string> out;
  for (NodeIndex v : nodes) out.push_back(g.id(v));
  std::sort(out.begin(), out.end());
  return out;
}

CitationGraph chain_cba() {
  return build({{"A", 0}, {"B", 1}, {"C", 2}}, {{"C", "B"}, {"B", "A"}}).graph;
}

}  // namespace

TEST_CASE("single causal edge is accepted") {
  auto [g, report] = build({{"A", 0}, {"B", 1}}, {{"B", "A"}});
  CHECK(g.edge_count() == 1);
  CHECK(report.edges_accepted == 1);
  CHECK(report.acausal_fraction == 0.0);
  CHECK(check_invariants(g).empty());
}

TEST_CASE("reversed edge is dropped as acausal") {
  auto [g, report] = build({{"A", 0}, {"B", 1}}, {{"B", "A"}, {"A", "B"}});
  CHECK(g.edge_count() == 1);
  CHECK(report.edges_acausal_dropped == 1);
  CHECK(report.acausal_fraction == doctest::Approx(0.5));
}

TEST_CASE("every input edge lands in exactly one counter") {
  auto [g, r] = build({{"A", 0}, {"B", 1}, {"C", 1}, {"D", 2}},
                      {{"B", "A"},
                       {"B", "A"},   // duplicate
                       {"A", "B"},   // acausal
                       {"B", "C"},   // equal time
                       {"D", "D"},   // self loop
                       {"D", "Z"},   // unknown
                       {"D", "C"}});
  CHECK(r.edges_total == 7);
  CHECK(r.edges_accepted == 2);
  CHECK(r.edges_duplicate_dropped == 1);
  CHECK(r.edges_acausal_dropped == 1);
  CHECK(r.edges_equal_time_dropped == 1);
  CHECK(r.self_loops_dropped == 1);
  CHECK(r.edges_unknown_node_dropped == 1);
  CHECK(r.edges_accepted + r.edges_duplicate_dropped + r.edges_acausal_dropped +
            r.edges_equal_time_dropped + r.self_loops_dropped +
            r.edges_unknown_node_dropped ==
        r.edges_total);
  CHECK(r.acausal_fraction == doctest::Approx(2.0 / 7.0));
}

TEST_CASE("non-finite time is rejected naming the node") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    build({{"A", 0}, {"bad", nan}}, {});
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("bad") != std::string::npos);
  }
  CHECK_THROWS_AS(build({{"A", std::numeric_limits<double>::infinity()}}, {}),
                  DataError);
}

TEST_CASE("duplicate node ids are rejected") {
  CHECK_THROWS_AS(build({{"A", 0}, {"A", 1}}, {}), DataError);
}

TEST_CASE("canonical indices follow (time, id)") {
  auto g = build({{"z", 1}, {"b", 0}, {"a", 1}}, {}).graph;
  CHECK(g.id(0) == "b");
  CHECK(g.id(1) == "a");
  CHECK(g.id(2) == "z");
}

TEST_CASE("equal-time edges can be kept when acyclic") {
  BuildOptions keep;
  keep.keep_equal_time = true;
  // a cites b at the same time, so b must get the lower index even though
  // id order alone would put a first
  auto [g, r] = build({{"a", 1}, {"b", 1}, {"old", 0}},
                      {{"a", "b"}, {"b", "old"}}, keep);
  CHECK(r.edges_accepted == 2);
  CHECK(r.edges_equal_time_dropped == 0);
  CHECK_FALSE(r.equal_time_cycle);
  CHECK(check_invariants(g, true).empty());
  CHECK(g.at("b") < g.at("a"));
  CHECK(r.acausal_fraction == 0.0);

  auto [g2, r2] = build({{"a", 1}, {"b", 1}}, {{"a", "b"}, {"b", "a"}}, keep);
  CHECK(r2.equal_time_cycle);
  CHECK(r2.edges_equal_time_dropped == 2);
  CHECK(g2.edge_count() == 0);
}

TEST_CASE("build is invariant under input permutation") {
  auto base = testing::random_dag(60, 0.2, 11).graph;
  std::vector<NodeRecord> nodes;
  for (NodeIndex v = 0; v < base.size(); ++v) nodes.push_back({base.id(v), base.time(v)});
  std::vector<EdgeRecord> edges;
  for (auto [u, v] : base.edges()) edges.push_back({base.id(u), base.id(v)});
  std::mt19937_64 rng(3);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(nodes.begin(), nodes.end(), rng);
    std::shuffle(edges.begin(), edges.end(), rng);
    auto again = build(nodes, edges).graph;
    CHECK(again.same_edges(base));
    for (NodeIndex v = 0; v < base.size(); ++v) CHECK(again.id(v) == base.id(v));
  }
}

TEST_CASE("topological order") {
  auto g = chain_cba();
  auto order = topological_order(g);
  REQUIRE(order.size() == 3);
  CHECK(g.id(order[0]) == "C");
  CHECK(g.id(order[1]) == "B");
  CHECK(g.id(order[2]) == "A");

  auto iso = build({{"x", 5}, {"y", 3}}, {}).graph;
  auto o2 = topological_order(iso);
  CHECK(iso.time(o2[0]) == 5);
  CHECK(iso.time(o2[1]) == 3);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto r = testing::random_dag(100, 0.1, seed).graph;
    auto order_r = topological_order(r);
    std::vector<std::size_t> position(r.size());
    for (std::size_t i = 0; i < order_r.size(); ++i) position[order_r[i]] = i;
    for (auto [u, v] : r.edges()) CHECK(position[u] < position[v]);
  }
}

TEST_CASE("descendants and ancestors") {
  auto g = chain_cba();
  CHECK(ids(g, descendants(g, "C")) == std::vector<std::string>{"A", "B"});
  CHECK(ids(g, ancestors(g, "A")) == std::vector<std::string>{"B", "C"});
  CHECK(ancestors(g, "C").empty());

  auto anti = build({{"a", 0}, {"b", 1}, {"c", 2}}, {}).graph;
  CHECK(descendants(anti, "b").empty());

  CHECK_THROWS_AS(descendants(g, "missing"), UnknownNodeError);
  CHECK_THROWS_AS(ancestors(g, "missing"), UnknownNodeError);
}

TEST_CASE("reachability matches the DFS oracle on random DAGs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = testing::random_dag(50, 0.08, 100 + seed).graph;
    auto reach = testing::reachability(g);
    for (NodeIndex u = 0; u < g.size(); ++u) {
      auto d = descendants(g, u);
      std::vector<NodeIndex> expected;
      for (NodeIndex v = 0; v < g.size(); ++v) {
        if (reach[u][v]) expected.push_back(v);
      }
      CHECK(d == expected);
      // transpose consistency
      for (NodeIndex a : ancestors(g, u)) CHECK(reach[a][u]);
      CHECK(ancestors(g, u).size() ==
            static_cast<std::size_t>(std::count_if(
                reach.begin(), reach.end(), [&](auto& row) { return row[u]; })));
    }
  }
}

TEST_CASE("citation counts") {
  auto g = chain_cba();
  CHECK(citation_count(g, "A") == 1);
  CHECK(citation_count(g, "B") == 1);
  CHECK(citation_count(g, "C") == 0);
  CHECK_THROWS_AS(citation_count(g, "Q"), UnknownNodeError);
}

TEST_CASE("degree distribution") {
  CHECK(degree_distribution(CitationGraph{}, Direction::in).empty());

  const int k = 7;
  std::vector<NodeRecord> nodes{{"hub", 0}};
  std::vector<EdgeRecord> edges;
  for (int i = 0; i < k; ++i) {
    nodes.push_back({label(i), 1.0 + i});
    edges.push_back({label(i), "hub"});
  }
  auto star = build(nodes, edges).graph;
  auto hist = degree_distribution(star, Direction::in);
  CHECK(hist == std::map<std::size_t, std::size_t>{{0, k}, {k, 1}});

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = testing::random_dag(80, 0.15, seed).graph;
    for (auto dir : {Direction::in, Direction::out}) {
      std::size_t nodes_total = 0;
      std::size_t handshake = 0;
      for (auto [d, c] : degree_distribution(g, dir)) {
        nodes_total += c;
        handshake += d * c;
      }
      CHECK(nodes_total == g.size());
      CHECK(handshake == g.edge_count());
    }
  }
}

TEST_CASE("invariant checker detects broken graphs") {
  auto g = testing::random_dag(40, 0.2, 5).graph;
  CHECK(check_invariants(g).empty());
  auto table = std::make_shared<const NodeTable>(
      std::vector<std::string>{"a", "b"}, std::vector<double>{0, 0});
  std::vector<std::pair<NodeIndex, NodeIndex>> e{{1, 0}};
  auto same_time = CitationGraph::from_sorted_edges(table, e);
  CHECK_FALSE(check_invariants(same_time).empty());
  CHECK(check_invariants(same_time, true).empty());
  std::vector<std::pair<NodeIndex, NodeIndex>> up{{0, 1}};
  CHECK_THROWS_AS(CitationGraph::from_sorted_edges(table, up), DataError);
}
