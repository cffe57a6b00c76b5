#ifndef CITENET_DIMENSION_HPP
#define CITENET_DIMENSION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citenet/graph.hpp"
#include "citenet/intervals.hpp"

namespace citenet {

enum class DimensionMethod { box_counting, myrheim_meyer, box_space };

std::string_view to_string(DimensionMethod method);
/// Accepts the canonical names plus "mm" and "box" shorthands.
DimensionMethod parse_method(std::string_view name);

/// Expected fraction P / N^2 of related pairs for a uniform sprinkling of a
/// d-dimensional Minkowski interval:
///   Gamma(d + 1) Gamma(d / 2) / (4 Gamma(3d / 2)).
double mm_ordering_fraction(double d);

struct MmSolution {
  double dimension = 0.0;
  /// Ratio exceeded the value at d = 1 and the result was pinned to 1.
  bool clamped = false;
};

/// Lower and upper end of the dimension search range.
inline constexpr double kMmMinDimension = 1.0;
inline constexpr double kMmMaxDimension = 10.0;

/// Solves mm_ordering_fraction(d) == P / N^2 by bisection on [1, 10] to an
/// absolute tolerance of 1e-6. Throws EstimateError for N < 2, P == 0,
/// P > N(N-1)/2, or a ratio below the value at d = 10.
MmSolution mm_dimension(std::uint64_t N, std::uint64_t P);

/// The same solve applied to a relation fraction P / N^2 directly. Fractions
/// at or above the value at d = 1 give d = 1 (clamped when strictly above).
MmSolution mm_dimension_from_fraction(double fraction);

/// log2(N / N_sub). Throws EstimateError unless N > N_sub >= 1.
double box_counting_dimension(std::uint64_t N, std::uint64_t N_sub);

/// log2(N (N - 1) / P), the inversion of P = N (N - 1) / 2^d. Throws
/// EstimateError for N < 2, P == 0, or P > N(N-1)/2.
double box_space_dimension(std::uint64_t N, std::uint64_t P);

struct DimensionEstimate {
  double D = 0.0;
  DimensionMethod method = DimensionMethod::myrheim_meyer;
  NodeIndex source = 0;
  NodeIndex target = 0;
  std::uint64_t N = 0;
  /// Relation count for myrheim_meyer / box_space.
  std::uint64_t P = 0;
  /// Midpoint split for box_counting.
  std::uint64_t N1 = 0;
  std::uint64_t N2 = 0;
  /// Which sub-interval a box-counting estimate used (1 or 2); 0 otherwise.
  int sub_interval = 0;
  bool clamped = false;
};

struct DimensionSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double iqr() const { return q3 - q1; }
};

struct FieldDimensionReport {
  DimensionMethod method = DimensionMethod::myrheim_meyer;
  std::vector<DimensionEstimate> estimates;
  /// Pairs drawn, accepted or not.
  std::uint64_t num_pairs_sampled = 0;
  std::uint64_t num_pairs_accepted = 0;
  std::uint64_t num_rejected_small = 0;
  /// Intervals large enough but with no defined estimate (e.g. P = 0).
  std::uint64_t num_rejected_undefined = 0;
  std::uint64_t min_interval_size = 0;
  std::uint64_t seed = 0;
  /// Empty when no interval survived.
  std::optional<DimensionSummary> summary;
};

struct FieldOptions {
  DimensionMethod method = DimensionMethod::myrheim_meyer;
  std::uint64_t num_pairs = 200;
  std::uint64_t min_interval_size = 32;
  std::uint64_t seed = 2015;
  /// Attempts are capped at attempt_factor * num_pairs.
  std::uint64_t attempt_factor = 100;
  IntervalOptions interval;
  /// Worker threads; 0 means all hardware threads. Results do not depend on
  /// this value.
  unsigned threads = 0;
  /// Run interval queries on the transitive reduction, which has the same
  /// intervals and relations but far fewer edges on dense graphs.
  bool reduce_first = true;
};

/// Median and quartiles (linear interpolation between order statistics).
/// Requires a non-empty input.
DimensionSummary summarize(std::vector<double> values);

/// Samples node pairs and applies the chosen estimator to every interval of
/// at least min_interval_size members. Attempt i draws its pair from RNG
/// stream (seed, i); the newer node of the pair is the source. Deterministic
/// for a given seed regardless of thread count.
FieldDimensionReport estimate_field_dimension(const CitationGraph& g,
                                              const FieldOptions& options = {});

/// Estimates for one interval (two for box counting, one otherwise); empty
/// when the interval admits no estimate.
std::vector<DimensionEstimate> estimate_interval(const IntervalAnalysis& interval,
                                                 DimensionMethod method);

}  // namespace citenet

#endif  // CITENET_DIMENSION_HPP
