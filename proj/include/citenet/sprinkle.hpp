#ifndef CITENET_SPRINKLE_HPP
#define CITENET_SPRINKLE_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "citenet/graph.hpp"

namespace citenet {

enum class Geometry { minkowski_diamond, unit_cube };

std::string_view to_string(Geometry geometry);
/// Accepts "minkowski_diamond" / "minkowski" and "unit_cube" / "cube".
Geometry parse_geometry(std::string_view name);

struct SprinkleSpec {
  Geometry geometry = Geometry::minkowski_diamond;
  /// Total dimension; for the diamond this is 1 time + (D - 1) space.
  int D = 2;
  std::uint64_t n = 0;
  std::uint64_t seed = 2015;
  /// Worker threads for relation testing; 0 means all hardware threads.
  unsigned threads = 0;
};

/// Sampled points, one row of D coordinates per node. Row i belongs to the
/// node with canonical index i. Coordinate 0 is the time.
struct Sprinkling {
  int D = 0;
  std::vector<double> coords;  // n * D, row-major
  CitationGraph graph;

  std::size_t size() const { return graph.size(); }
  double coord(NodeIndex v, int axis) const {
    return coords[static_cast<std::size_t>(v) * D + axis];
  }
};

/// n points uniform in the causal diamond between tips (t=0, x=0) and
/// (t=1, x=0). Edge u -> v iff t_u - t_v > |x_u - x_v| (Euclidean). The
/// graph is the full causal relation, so it is transitively closed.
Sprinkling sprinkle_minkowski(const SprinkleSpec& spec);

/// n points uniform in [0, 1]^D. Edge u -> v iff every coordinate of v is
/// strictly below the matching coordinate of u. Node time is coordinate 0.
Sprinkling sprinkle_box_space(const SprinkleSpec& spec);

/// Dispatches on spec.geometry.
Sprinkling sprinkle(const SprinkleSpec& spec);

}  // namespace citenet

#endif  // CITENET_SPRINKLE_HPP
