#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "kregret/contour2d.hpp"
#include "kregret/dataset.hpp"
#include "kregret/dualgeom.hpp"
#include "kregret/errors.hpp"
#include "kregret/evaluator.hpp"
#include "kregret/report.hpp"

namespace kregret {

struct GreedyConfig {
  enum class Seed { kTopUniform, kExplicit, kRandom };

  Seed seed = Seed::kTopUniform;
  std::vector<std::string> seed_ids;  // used with Seed::kExplicit
  std::uint64_t rng_seed = 0;         // used with Seed::kRandom
  double eps = 1e-9;                  // relative improvement threshold
  std::size_t max_passes = 10000;     // accepted-swap guard
  std::size_t sample_count = 10000;   // direction sample size for d >= 3
  Metric metric = Metric::kRegretRatio;
  double tau = 1.0;
};

/// Direction of maximum shortfall plus the dual point realizing it: the
/// point on the subset's lower envelope along that direction.
struct WorstPoint {
  UtilityDirection direction;
  std::vector<double> point;  // dual coordinates, at distance tau / gain
  double value = 0.0;
};

inline WorstPoint worst_point(const Dataset& ds, std::span<const std::size_t> subset,
                              std::size_t k, Metric metric, double tau,
                              const DirectionSample* sample,
                              const Contour* contour = nullptr) {
  const RegretReport r =
      ds.dim() == 2 ? max_ratio_exact_2d(ds, subset, k, metric, tau, contour)
                    : max_ratio_sampled(ds, subset, k, *sample, metric, tau);
  WorstPoint wp;
  wp.direction = r.argmax_direction;
  wp.value = r.max_value;
  const double dist = tau / gain(ds, subset, wp.direction);
  wp.point.resize(ds.dim());
  for (std::size_t a = 0; a < ds.dim(); ++a)
    wp.point[a] = dist * wp.direction.weights[a];
  return wp;
}

namespace detail {

inline std::vector<std::size_t> greedy_seed(const Dataset& ds, std::size_t m,
                                            const GreedyConfig& cfg) {
  const std::size_t pick = std::min(m, ds.size());
  switch (cfg.seed) {
    case GreedyConfig::Seed::kTopUniform: {
      const UtilityDirection u = UtilityDirection::uniform(ds.dim());
      std::vector<std::size_t> idx = ds.all_indices();
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const double sa = score(ds[a], u), sb = score(ds[b], u);
        if (sa != sb) return sa > sb;
        return ds[a].id < ds[b].id;
      });
      idx.resize(pick);
      return idx;
    }
    case GreedyConfig::Seed::kExplicit: {
      if (cfg.seed_ids.size() != pick)
        throw domain_error("explicit seed must name exactly " + std::to_string(pick) +
                           " points");
      return ds.indices_of(cfg.seed_ids);
    }
    case GreedyConfig::Seed::kRandom: {
      std::vector<std::size_t> idx = ds.all_indices();
      std::mt19937_64 rng(cfg.rng_seed);
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(pick);
      return idx;
    }
  }
  throw internal_error("unknown seed strategy");
}

}  // namespace detail

/// Iterative single-swap descent: repeatedly pick a non-member whose dual
/// line cuts the segment from the origin to the current worst point, and
/// accept the first of its m possible swaps that improves the maximum by
/// more than eps (relative). Non-members re-enter the queue after every
/// accepted swap; the queue emptying certifies a local optimum.
inline Solution solve_greedy(const Dataset& ds, std::size_t k, std::size_t m,
                             const GreedyConfig& cfg = {}) {
  if (m < 1) throw domain_error("cardinality budget must be at least 1");
  if (k < 1 || k > ds.size())
    throw domain_error("k out of range [1, " + std::to_string(ds.size()) + "]");
  if (!(cfg.eps > 0.0)) throw domain_error("improvement tolerance must be positive");

  const bool exact2d = ds.dim() == 2;
  DirectionSample sample;
  if (!exact2d) sample = make_direction_sample(ds.dim(), cfg.sample_count);

  Solution sol;
  sol.metric = cfg.metric;
  sol.algorithm = "greedy";
  sol.exactness = exact2d ? Exactness::exact_2d() : Exactness::sampled(sample.directions.size());

  // Early exit: if the points that ever hold rank k fit the budget, they are
  // a zero-cost answer. Exact in 2D via the contour; witnessed over the
  // sample otherwise.
  std::vector<std::string> core;
  Contour contour = exact2d ? compute_contour(ds, k, cfg.tau)
                            : Contour(1, cfg.tau, {to_dual_line(ds[0], cfg.tau)},
                                      {{0, 0.0, std::numbers::pi / 2.0}}, {});
  if (exact2d) {
    core = contour.contributor_ids();
  } else {
    std::vector<double> scores(ds.size());
    for (const UtilityDirection& w : sample.directions) {
      for (std::size_t i = 0; i < ds.size(); ++i) scores[i] = score(ds[i], w);
      std::vector<double> tmp = scores;
      std::nth_element(tmp.begin(), tmp.end() - static_cast<std::ptrdiff_t>(k), tmp.end());
      const double kth = tmp[tmp.size() - k];
      std::string witness;
      for (std::size_t i = 0; i < ds.size(); ++i)
        if (scores[i] == kth && (witness.empty() || ds[i].id < witness)) witness = ds[i].id;
      if (std::find(core.begin(), core.end(), witness) == core.end())
        core.push_back(witness);
      if (core.size() > m) break;
    }
    std::sort(core.begin(), core.end());
  }
  if (core.size() <= m) {
    sol.ids = core;
    sol.cost = 0.0;
    sol.worst_direction = UtilityDirection::uniform(ds.dim());
    return sol;
  }

  std::vector<DualLine> all_lines;
  all_lines.reserve(ds.size());
  for (const Point& p : ds.points()) all_lines.push_back(to_dual_line(p, cfg.tau));

  std::vector<std::size_t> subset = detail::greedy_seed(ds, m, cfg);
  auto evaluate = [&](std::span<const std::size_t> s) {
    return worst_point(ds, s, k, cfg.metric, cfg.tau, exact2d ? nullptr : &sample,
                       exact2d ? &contour : nullptr);
  };
  WorstPoint wp = evaluate(subset);
  sol.accepted_trace.push_back(wp.value);

  auto refill = [&]() {
    std::deque<std::size_t> q;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ds.size(); ++i)
      if (std::find(subset.begin(), subset.end(), i) == subset.end()) out.push_back(i);
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
      return ds[a].id < ds[b].id;
    });
    for (std::size_t i : out) q.push_back(i);
    return q;
  };

  std::deque<std::size_t> queue = refill();
  std::size_t accepted = 0;
  while (!queue.empty()) {
    const std::size_t cand = queue.front();
    queue.pop_front();
    const double delta = cfg.tau / gain(ds, subset, wp.direction);
    if (!line_cuts_origin_segment(all_lines[cand], wp.direction, delta)) continue;

    bool swapped = false;
    std::vector<std::size_t> scan = subset;
    std::sort(scan.begin(), scan.end(), [&](std::size_t a, std::size_t b) {
      return ds[a].id < ds[b].id;
    });
    for (std::size_t out : scan) {
      std::vector<std::size_t> trial = subset;
      *std::find(trial.begin(), trial.end(), out) = cand;
      const WorstPoint wt = evaluate(trial);
      if (wt.value < wp.value * (1.0 - cfg.eps)) {
        subset = std::move(trial);
        wp = wt;
        sol.accepted_trace.push_back(wp.value);
        queue = refill();
        swapped = true;
        ++accepted;
        break;
      }
    }
    if (swapped && accepted >= cfg.max_passes) {
      sol.guard_tripped = true;
      break;
    }
  }

  for (std::size_t i : subset) sol.ids.push_back(ds[i].id);
  std::sort(sol.ids.begin(), sol.ids.end());
  sol.cost = wp.value;
  sol.worst_direction = wp.direction;
  return sol;
}

}  // namespace kregret
