#include <doctest.h>

#include <cmath>

#include "citenet/error.hpp"
#include "citenet/sprinkle.hpp"
#include "citenet/transitive.hpp"

using namespace citenet;

namespace {

SprinkleSpec spec_of(Geometry geometry, int D, std::uint64_t n,
                     std::uint64_t seed) {
  SprinkleSpec spec;
  spec.geometry = geometry;
  spec.D = D;
  spec.n = n;
  spec.seed = seed;
  return spec;
}

// Brute-force relation count straight from the coordinates.
std::uint64_t related_pairs(const Sprinkling& s, Geometry geometry) {
  std::uint64_t count = 0;
  for (NodeIndex u = 0; u < s.size(); ++u) {
    for (NodeIndex v = 0; v < s.size(); ++v) {
      if (u == v) continue;
      bool related = true;
      if (geometry == Geometry::unit_cube) {
        for (int a = 0; a < s.D; ++a) related &= s.coord(v, a) < s.coord(u, a);
      } else {
        const double dt = s.coord(u, 0) - s.coord(v, 0);
        double dx2 = 0;
        for (int a = 1; a < s.D; ++a) {
          const double dx = s.coord(u, a) - s.coord(v, a);
          dx2 += dx * dx;
        }
        related = dt > 0 && dt * dt > dx2;
      }
      count += related;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("one dimension gives a total order") {
  for (auto geometry : {Geometry::minkowski_diamond, Geometry::unit_cube}) {
    auto s = sprinkle(spec_of(geometry, 1, 50, 3));
    CHECK(s.graph.edge_count() == 50 * 49 / 2);
    CHECK(transitive_reduction(s.graph).edge_count() == 49);
  }
}

TEST_CASE("points lie inside the geometry") {
  auto diamond = sprinkle_minkowski(spec_of(Geometry::minkowski_diamond, 3, 500, 4));
  for (NodeIndex v = 0; v < diamond.size(); ++v) {
    const double t = diamond.coord(v, 0);
    const double r = std::hypot(diamond.coord(v, 1), diamond.coord(v, 2));
    CHECK(r < std::min(t, 1 - t));
    CHECK(diamond.graph.time(v) == t);
  }
  auto cube = sprinkle_box_space(spec_of(Geometry::unit_cube, 4, 500, 4));
  for (double x : cube.coords) {
    CHECK(x >= 0);
    CHECK(x < 1);
  }
}

TEST_CASE("edges are exactly the coordinate relation") {
  for (auto geometry : {Geometry::minkowski_diamond, Geometry::unit_cube}) {
    for (int D : {2, 3, 4}) {
      auto s = sprinkle(spec_of(geometry, D, 300, 10 + D));
      CHECK(s.graph.edge_count() == related_pairs(s, geometry));
      CHECK(check_invariants(s.graph).empty());
    }
  }
}

TEST_CASE("sprinkled graphs are transitively closed") {
  for (auto geometry : {Geometry::minkowski_diamond, Geometry::unit_cube}) {
    auto g = sprinkle(spec_of(geometry, 3, 400, 21)).graph;
    CHECK(transitive_closure(g).same_edges(g));
  }
}

TEST_CASE("same spec gives the same graph") {
  auto spec = spec_of(Geometry::minkowski_diamond, 2, 800, 99);
  auto a = sprinkle(spec);
  spec.threads = 3;
  auto b = sprinkle(spec);
  CHECK(a.coords == b.coords);
  CHECK(a.graph.same_edges(b.graph));
  spec.seed = 100;
  CHECK_FALSE(sprinkle(spec).coords == a.coords);
}

TEST_CASE("invalid dimension is rejected") {
  CHECK_THROWS_AS(sprinkle(spec_of(Geometry::unit_cube, 0, 10, 1)), UsageError);
  CHECK_THROWS_AS(sprinkle(spec_of(Geometry::minkowski_diamond, -1, 10, 1)),
                  UsageError);
  CHECK(sprinkle(spec_of(Geometry::unit_cube, 2, 0, 1)).size() == 0);
}

TEST_CASE("geometry names") {
  CHECK(parse_geometry("minkowski") == Geometry::minkowski_diamond);
  CHECK(parse_geometry("cube") == Geometry::unit_cube);
  CHECK(parse_geometry(to_string(Geometry::unit_cube)) == Geometry::unit_cube);
  CHECK_THROWS_AS(parse_geometry("sphere"), UsageError);
}

TEST_CASE("Minkowski density law in two dimensions") {
  const std::uint64_t n = 2000;
  double sum = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = sprinkle_minkowski(spec_of(Geometry::minkowski_diamond, 2, n, seed)).graph;
    const double ratio = static_cast<double>(g.edge_count()) / (double(n) * n);
    CHECK(ratio >= 0.23);
    CHECK(ratio <= 0.27);
    sum += ratio;
  }
  CHECK(sum / 20 >= 0.24);
  CHECK(sum / 20 <= 0.26);
}

TEST_CASE("box space density law at D = 2") {
  const std::uint64_t n = 5000;
  auto g = sprinkle_box_space(spec_of(Geometry::unit_cube, 2, n, 77)).graph;
  const double expected = double(n) * (n - 1) / 4;
  // one draw: the pair count has standard deviation below 0.01 * expected
  CHECK(std::abs(g.edge_count() - expected) < 0.03 * expected);
}
