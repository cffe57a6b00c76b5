#include "citenet/dimension.hpp"

#include <algorithm>
#include <cmath>

#include "citenet/error.hpp"
#include "citenet/rng.hpp"
#include "citenet/transitive.hpp"
#include "parallel.hpp"

namespace citenet {

std::string_view to_string(DimensionMethod method) {
  switch (method) {
    case DimensionMethod::box_counting:
      return "box_counting";
    case DimensionMethod::myrheim_meyer:
      return "myrheim_meyer";
    case DimensionMethod::box_space:
      return "box_space";
  }
  return "unknown";
}

DimensionMethod parse_method(std::string_view name) {
  if (name == "box_counting" || name == "box") return DimensionMethod::box_counting;
  if (name == "myrheim_meyer" || name == "mm") return DimensionMethod::myrheim_meyer;
  if (name == "box_space") return DimensionMethod::box_space;
  throw UsageError("unknown dimension method '" + std::string(name) + "'");
}

double mm_ordering_fraction(double d) {
  // log-Gamma keeps the large-d terms finite
  return 0.25 * std::exp(std::lgamma(d + 1.0) + std::lgamma(d / 2.0) -
                         std::lgamma(1.5 * d));
}

namespace {

MmSolution solve_mm(double ratio) {
  const double at_min = mm_ordering_fraction(kMmMinDimension);
  if (ratio >= at_min) {
    return {kMmMinDimension, ratio > at_min * (1.0 + 1e-12)};
  }
  if (ratio < mm_ordering_fraction(kMmMaxDimension)) {
    throw EstimateError("relation fraction " + std::to_string(ratio) +
                        " is below the Myrheim-Meyer range (d > 10)");
  }
  double lo = kMmMinDimension;
  double hi = kMmMaxDimension;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    // decreasing in d: a larger fraction means a smaller dimension
    if (mm_ordering_fraction(mid) > ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), false};
}

void require_relations(std::uint64_t N, std::uint64_t P) {
  if (N < 2) throw EstimateError("interval needs at least 2 members");
  if (P == 0) throw EstimateError("interval has no related pairs");
  if (P > N * (N - 1) / 2) {
    throw EstimateError("relation count " + std::to_string(P) +
                        " exceeds N(N-1)/2 for N = " + std::to_string(N));
  }
}

}  // namespace

MmSolution mm_dimension_from_fraction(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw EstimateError("relation fraction must be positive and finite");
  }
  return solve_mm(ratio);
}

MmSolution mm_dimension(std::uint64_t N, std::uint64_t P) {
  require_relations(N, P);
  const double n = static_cast<double>(N);
  return solve_mm(static_cast<double>(P) / (n * n));
}

double box_counting_dimension(std::uint64_t N, std::uint64_t N_sub) {
  if (N_sub == 0) {
    throw EstimateError("empty sub-interval; box-counting estimate undefined");
  }
  if (N_sub >= N) {
    throw EstimateError("sub-interval must be smaller than the interval");
  }
  return std::log2(static_cast<double>(N) / static_cast<double>(N_sub));
}

double box_space_dimension(std::uint64_t N, std::uint64_t P) {
  require_relations(N, P);
  const double n = static_cast<double>(N);
  return std::log2(n * (n - 1.0)) - std::log2(static_cast<double>(P));
}

DimensionSummary summarize(std::vector<double> values) {
  if (values.empty()) throw UsageError("summarize: no values");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double p) {
    const double h = p * static_cast<double>(values.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(h));
    const std::size_t j = std::min(i + 1, values.size() - 1);
    return values[i] + (h - static_cast<double>(i)) * (values[j] - values[i]);
  };
  return {quantile(0.5), quantile(0.25), quantile(0.75)};
}

std::vector<DimensionEstimate> estimate_interval(
    const IntervalAnalysis& interval, DimensionMethod method) {
  std::vector<DimensionEstimate> out;
  DimensionEstimate base;
  base.method = method;
  base.source = interval.source();
  base.target = interval.target();
  base.N = interval.size();

  switch (method) {
    case DimensionMethod::myrheim_meyer:
    case DimensionMethod::box_space: {
      base.P = interval.relations();
      if (base.N < 2 || base.P == 0) return out;
      try {
        if (method == DimensionMethod::box_space) {
          base.D = box_space_dimension(base.N, base.P);
        } else {
          const MmSolution s = mm_dimension(base.N, base.P);
          base.D = s.dimension;
          base.clamped = s.clamped;
        }
      } catch (const EstimateError&) {
        return out;
      }
      out.push_back(base);
      break;
    }
    case DimensionMethod::box_counting: {
      const auto split = interval.midpoint();
      if (!split) return out;
      base.N1 = split->N1;
      base.N2 = split->N2;
      int which = 1;
      for (std::uint64_t sub : {split->N1, split->N2}) {
        if (sub >= 1 && sub < base.N) {
          DimensionEstimate e = base;
          e.sub_interval = which;
          e.D = box_counting_dimension(base.N, sub);
          out.push_back(e);
        }
        ++which;
      }
      break;
    }
  }
  return out;
}

namespace {

enum class Outcome { small, undefined, accepted };

struct Attempt {
  Outcome outcome = Outcome::small;
  std::vector<DimensionEstimate> estimates;
};

Attempt run_attempt(const CitationGraph& g, const FieldOptions& options,
                    std::uint64_t index) {
  Attempt result;
  Rng rng(options.seed, index);
  const std::uint64_t n = g.size();
  auto a = rng.below(n);
  auto b = rng.below(n - 1);
  if (b >= a) ++b;
  const auto source = static_cast<NodeIndex>(std::max(a, b));
  const auto target = static_cast<NodeIndex>(std::min(a, b));

  std::vector<NodeIndex> interior = interior_members(g, source, target);
  const std::uint64_t extra = options.interval.include_endpoints ? 2 : 0;
  if (interior.size() + extra < options.min_interval_size) return result;
  IntervalAnalysis analysis(g, source, target, std::move(interior),
                            options.interval);
  if (analysis.size() < options.min_interval_size) return result;
  result.estimates = estimate_interval(analysis, options.method);
  result.outcome =
      result.estimates.empty() ? Outcome::undefined : Outcome::accepted;
  return result;
}

}  // namespace

FieldDimensionReport estimate_field_dimension(const CitationGraph& g,
                                              const FieldOptions& options) {
  if (options.num_pairs < 1) throw UsageError("num_pairs must be >= 1");
  if (options.min_interval_size < 2) {
    throw UsageError("min_interval_size must be >= 2");
  }
  FieldDimensionReport report;
  report.method = options.method;
  report.min_interval_size = options.min_interval_size;
  report.seed = options.seed;
  if (g.size() < 2) return report;

  const unsigned threads = detail::worker_count(options.threads);
  CitationGraph reduced;
  const CitationGraph* work = &g;
  if (options.reduce_first) {
    SweepOptions sweep;
    sweep.threads = threads;
    reduced = transitive_reduction(g, sweep);
    work = &reduced;
  }

  const std::uint64_t max_attempts = options.attempt_factor * options.num_pairs;
  const std::uint64_t batch = std::max<std::uint64_t>(16, 4ull * threads);
  std::vector<double> values;
  std::uint64_t next = 0;
  while (report.num_pairs_accepted < options.num_pairs && next < max_attempts) {
    const std::uint64_t end = std::min(max_attempts, next + batch);
    std::vector<Attempt> attempts(end - next);
    detail::parallel_for(next, end, threads, [&](std::size_t i) {
      attempts[i - next] = run_attempt(*work, options, i);
    });
    next = end;
    for (auto& attempt : attempts) {
      ++report.num_pairs_sampled;
      switch (attempt.outcome) {
        case Outcome::small:
          ++report.num_rejected_small;
          break;
        case Outcome::undefined:
          ++report.num_rejected_undefined;
          break;
        case Outcome::accepted:
          ++report.num_pairs_accepted;
          for (auto& e : attempt.estimates) {
            values.push_back(e.D);
            report.estimates.push_back(std::move(e));
          }
          break;
      }
      if (report.num_pairs_accepted == options.num_pairs) break;
    }
  }
  if (!values.empty()) report.summary = summarize(std::move(values));
  return report;
}

}  // namespace citenet
