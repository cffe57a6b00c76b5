#include "citenet/sprinkle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "citenet/error.hpp"
#include "citenet/rng.hpp"
#include "parallel.hpp"

namespace citenet {

std::string_view to_string(Geometry geometry) {
  return geometry == Geometry::minkowski_diamond ? "minkowski_diamond"
                                                 : "unit_cube";
}

Geometry parse_geometry(std::string_view name) {
  if (name == "minkowski_diamond" || name == "minkowski") {
    return Geometry::minkowski_diamond;
  }
  if (name == "unit_cube" || name == "cube") return Geometry::unit_cube;
  throw UsageError("unknown geometry '" + std::string(name) + "'");
}

namespace {

void require_spec(const SprinkleSpec& spec, Geometry expected) {
  if (spec.geometry != expected) {
    throw UsageError("sprinkle: spec geometry does not match the generator");
  }
  if (spec.D < 1) throw UsageError("sprinkle: dimension must be >= 1");
  if (spec.n > std::numeric_limits<NodeIndex>::max()) {
    throw ResourceError("sprinkle: too many points");
  }
}

// Sorts sampled rows by time, names them in that order, and materializes
// every related pair as an edge from the newer to the older point.
template <typename Related>
Sprinkling assemble(int D, std::vector<double> raw, unsigned threads,
                    Related related) {
  const std::size_t n = raw.size() / D;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw[a * D] < raw[b * D];
  });

  Sprinkling out;
  out.D = D;
  out.coords.resize(raw.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(raw.begin() + order[i] * D, D, out.coords.begin() + i * D);
  }

  const std::size_t width = std::to_string(n == 0 ? 0 : n - 1).size();
  std::vector<std::string> ids(n);
  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    ids[i] = "p" + std::string(width - digits.size(), '0') + digits;
    times[i] = out.coords[i * D];
  }

  std::vector<std::vector<NodeIndex>> outs(n);
  detail::parallel_for(0, n, detail::worker_count(threads), [&](std::size_t i) {
    const double* p = out.coords.data() + i * D;
    for (std::size_t j = 0; j < i; ++j) {
      if (related(p, out.coords.data() + j * D)) {
        outs[i].push_back(static_cast<NodeIndex>(j));
      }
    }
  });

  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + outs[i].size();
  std::vector<NodeIndex> targets;
  targets.reserve(offsets.back());
  for (auto& list : outs) {
    targets.insert(targets.end(), list.begin(), list.end());
    list = {};
  }
  out.graph = CitationGraph::from_out_csr(
      std::make_shared<const NodeTable>(std::move(ids), std::move(times)),
      std::move(offsets), std::move(targets));
  return out;
}

}  // namespace

Sprinkling sprinkle_minkowski(const SprinkleSpec& spec) {
  require_spec(spec, Geometry::minkowski_diamond);
  const int D = spec.D;
  Rng rng(spec.seed);
  std::vector<double> raw;
  raw.reserve(spec.n * D);
  std::vector<double> point(D);
  // Rejection from the box [0,1) x [-1/2,1/2)^(D-1) around the diamond.
  for (std::uint64_t k = 0; k < spec.n;) {
    point[0] = rng.uniform();
    double r2 = 0.0;
    for (int a = 1; a < D; ++a) {
      point[a] = rng.uniform() - 0.5;
      r2 += point[a] * point[a];
    }
    const double reach = std::min(point[0], 1.0 - point[0]);
    if (D > 1 && !(std::sqrt(r2) < reach)) continue;
    raw.insert(raw.end(), point.begin(), point.end());
    ++k;
  }
  return assemble(D, std::move(raw), spec.threads,
                  [D](const double* newer, const double* older) {
                    const double dt = newer[0] - older[0];
                    if (!(dt > 0.0)) return false;
                    double r2 = 0.0;
                    for (int a = 1; a < D; ++a) {
                      const double dx = newer[a] - older[a];
                      r2 += dx * dx;
                    }
                    return dt * dt > r2;
                  });
}

Sprinkling sprinkle_box_space(const SprinkleSpec& spec) {
  require_spec(spec, Geometry::unit_cube);
  const int D = spec.D;
  Rng rng(spec.seed);
  std::vector<double> raw(spec.n * D);
  for (double& x : raw) x = rng.uniform();
  return assemble(D, std::move(raw), spec.threads,
                  [D](const double* newer, const double* older) {
                    for (int a = 0; a < D; ++a) {
                      if (!(older[a] < newer[a])) return false;
                    }
                    return true;
                  });
}

Sprinkling sprinkle(const SprinkleSpec& spec) {
  return spec.geometry == Geometry::minkowski_diamond
             ? sprinkle_minkowski(spec)
             : sprinkle_box_space(spec);
}

}  // namespace citenet
