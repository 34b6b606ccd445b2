#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "kregret/contour2d.hpp"
#include "kregret/dataset.hpp"
#include "kregret/dualgeom.hpp"
#include "kregret/errors.hpp"
#include "kregret/report.hpp"

namespace kregret {

/// Deterministic set of unit, nonnegative directions used to approximate the
/// supremum over the utility family in d >= 3. Always contains every axis
/// direction and the uniform direction.
struct DirectionSample {
  enum class Strategy { kGrid, kLowDiscrepancy };

  std::vector<UtilityDirection> directions;
  Strategy strategy = Strategy::kLowDiscrepancy;
};

namespace detail {

inline double halton(std::size_t index, std::size_t base) {
  double f = 1.0, r = 0.0;
  for (std::size_t i = index; i > 0; i /= base) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
  }
  return r;
}

}  // namespace detail

inline DirectionSample make_direction_sample(
    std::size_t dim, std::size_t count,
    DirectionSample::Strategy strategy = DirectionSample::Strategy::kLowDiscrepancy) {
  if (dim < 2) throw domain_error("direction sample needs d >= 2");
  DirectionSample sample;
  sample.strategy = strategy;
  for (std::size_t a = 0; a < dim; ++a)
    sample.directions.push_back(UtilityDirection::axis(dim, a));
  sample.directions.push_back(UtilityDirection::uniform(dim));

  if (strategy == DirectionSample::Strategy::kGrid) {
    if (dim != 2) throw domain_error("grid sampling is only defined for d = 2");
    for (std::size_t i = 1; i + 1 < count; ++i) {
      const double theta = std::numbers::pi / 2.0 * static_cast<double>(i) /
                           static_cast<double>(count - 1);
      sample.directions.push_back(UtilityDirection::from_angle(theta));
    }
    return sample;
  }

  // Halton points mapped onto the positive simplex through the exponential
  // transform, then scaled to unit norm.
  static constexpr std::size_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (dim > std::size(primes)) throw domain_error("direction sample supports up to d = 8");
  for (std::size_t i = 1; sample.directions.size() < count + dim + 1; ++i) {
    UtilityDirection w{std::vector<double>(dim, 0.0)};
    for (std::size_t a = 0; a < dim; ++a) {
      const double u = detail::halton(i, primes[a]);
      w.weights[a] = -std::log(std::max(1.0 - u, 1e-16));
    }
    sample.directions.push_back(w.unit());
  }
  return sample;
}

/// Metric value of a subset at a single direction: the regret ratio, the raw
/// dual-space gap beyond the contour, or the gap normalized by the contour
/// distance.
inline double subset_metric_value(const Dataset& ds, std::span<const std::size_t> subset,
                                  const UtilityDirection& w, std::size_t k, Metric metric,
                                  double tau = 1.0) {
  const double kg = kgain(ds, w, k);
  if (!(kg > 0.0)) throw domain_error("k-gain is not positive");
  const double g = gain(ds, subset, w);
  switch (metric) {
    case Metric::kRegretRatio:
      return std::max(kg - g, 0.0) / kg;
    case Metric::kDualDistance:
      return std::max(tau / g - tau / kg, 0.0);
    case Metric::kContourRatio:
      return std::max(tau / g - tau / kg, 0.0) / (tau / kg);
  }
  throw internal_error("unknown metric");
}

/// Exact maximum over the utility family in 2D: by convexity the maximum
/// lies at a vertex of the subset's lower envelope, a vertex of the k-th
/// contour, or one of the two axes.
inline RegretReport max_ratio_exact_2d(const Dataset& ds, std::span<const std::size_t> subset,
                                       std::size_t k, Metric metric = Metric::kRegretRatio,
                                       double tau = 1.0,
                                       const Contour* contour = nullptr) {
  if (ds.dim() != 2) throw unsupported_dimension_error(ds.dim());
  if (subset.empty()) throw domain_error("evaluating an empty subset");

  std::vector<DualLine> sub_lines;
  for (std::size_t i : subset) {
    const DualLine l = to_dual_line(ds[i], tau);
    if (std::none_of(sub_lines.begin(), sub_lines.end(),
                     [&](const DualLine& o) { return o.coeffs == l.coeffs; }))
      sub_lines.push_back(l);
  }
  const EnvelopeChain env = lower_envelope(sub_lines);

  std::vector<double> angles{0.0, std::numbers::pi / 2.0};
  for (const auto& v : env.vertices) angles.push_back(v.angle.theta);
  Contour local = contour ? *contour : compute_contour(ds, k, tau);
  for (const auto& v : local.vertices()) angles.push_back(v.angle.theta);
  std::sort(angles.begin(), angles.end(), std::greater<double>{});
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

  RegretReport report;
  for (std::size_t i : subset) report.subset_ids.push_back(ds[i].id);
  std::sort(report.subset_ids.begin(), report.subset_ids.end());
  report.metric = metric;
  report.exactness = Exactness::exact_2d();
  report.max_value = -1.0;
  for (double theta : angles) {
    const UtilityDirection w = UtilityDirection::from_angle(theta);
    const double v = subset_metric_value(ds, subset, w, k, metric, tau);
    if (v > report.max_value) {
      report.max_value = v;
      report.argmax_direction = w;
    }
  }
  return report;
}

/// Sampled lower bound of the maximum over the utility family; exact given
/// the sample, deterministic in the sample order.
inline RegretReport max_ratio_sampled(const Dataset& ds, std::span<const std::size_t> subset,
                                      std::size_t k, const DirectionSample& sample,
                                      Metric metric = Metric::kRegretRatio,
                                      double tau = 1.0) {
  if (subset.empty()) throw domain_error("evaluating an empty subset");
  if (sample.directions.empty()) throw domain_error("empty direction sample");
  RegretReport report;
  for (std::size_t i : subset) report.subset_ids.push_back(ds[i].id);
  std::sort(report.subset_ids.begin(), report.subset_ids.end());
  report.metric = metric;
  report.exactness = Exactness::sampled(sample.directions.size());
  report.max_value = -1.0;
  for (const UtilityDirection& w : sample.directions) {
    const double v = subset_metric_value(ds, subset, w, k, metric, tau);
    if (v > report.max_value) {
      report.max_value = v;
      report.argmax_direction = w;
    }
  }
  return report;
}

struct BruteForceOptions {
  std::size_t max_n = 20;
  std::size_t max_m = 4;
  bool override_guard = false;
  Metric metric = Metric::kRegretRatio;
  double tau = 1.0;
  std::size_t sample_count = 10000;  // used when d >= 3
};

/// Ground-truth oracle: enumerates every subset of size min(m, n) and keeps
/// the one with the smallest maximum metric value; ties broken by the
/// lexicographically smallest sorted id set.
inline Solution brute_force_optimal(const Dataset& ds, std::size_t k, std::size_t m,
                                    const BruteForceOptions& opts = {}) {
  if (m < 1) throw domain_error("cardinality budget must be at least 1");
  if (!opts.override_guard && (ds.size() > opts.max_n || m > opts.max_m))
    throw guard_error("brute-force enumeration refused for n=" + std::to_string(ds.size()) +
                      ", m=" + std::to_string(m) + "; raise the guard to override");

  const std::size_t pick = std::min(m, ds.size());
  const bool exact2d = ds.dim() == 2;
  Contour contour = exact2d ? compute_contour(ds, k, opts.tau)
                            : Contour(1, opts.tau, {to_dual_line(ds[0], opts.tau)},
                                      {{0, 0.0, std::numbers::pi / 2.0}}, {});
  DirectionSample sample;
  if (!exact2d) sample = make_direction_sample(ds.dim(), opts.sample_count);

  std::vector<std::size_t> comb(pick);
  for (std::size_t i = 0; i < pick; ++i) comb[i] = i;
  Solution best;
  best.cost = std::numeric_limits<double>::infinity();
  best.metric = opts.metric;
  best.algorithm = "oracle";
  bool more = true;
  while (more) {
    const RegretReport r =
        exact2d ? max_ratio_exact_2d(ds, comb, k, opts.metric, opts.tau, &contour)
                : max_ratio_sampled(ds, comb, k, sample, opts.metric, opts.tau);
    if (r.max_value < best.cost ||
        (r.max_value == best.cost && r.subset_ids < best.ids)) {
      best.cost = r.max_value;
      best.ids = r.subset_ids;
      best.worst_direction = r.argmax_direction;
      best.exactness = r.exactness;
    }
    // next combination
    more = false;
    for (std::size_t i = pick; i-- > 0;) {
      if (comb[i] + (pick - i) < ds.size()) {
        ++comb[i];
        for (std::size_t j = i + 1; j < pick; ++j) comb[j] = comb[j - 1] + 1;
        more = true;
        break;
      }
    }
  }
  return best;
}

}  // namespace kregret
