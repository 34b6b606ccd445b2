#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "kregret/arrangement.hpp"
#include "kregret/contour2d.hpp"
#include "kregret/dataset.hpp"
#include "kregret/dualgeom.hpp"
#include "kregret/errors.hpp"
#include "kregret/report.hpp"

namespace kregret {

/// One DP cell: the cheapest convex chain from the y-axis to the current
/// sweep angle that ends on a given line using at most a given number of
/// line segments.
struct DPCell {
  double cost = 0.0;
  std::size_t node = 0;      // index into the path arena
  double theta_max = 0.0;    // angle where cost was last raised
};

/// Radial plane-sweep dynamic program over the dual arrangement. A solution
/// of order m is a convex chain with at most m - 1 turns; the DP table holds
/// the best chain ending on each line for every budget, updated at line
/// crossings, contour vertices, and the two axes.
///
/// O(n^2 m) time, O(n m) table plus O(n m) path arena.
class SweepSolver {
 public:
  SweepSolver(const Dataset& ds, std::size_t k, std::size_t m, double tau = 1.0,
              Metric metric = Metric::kRegretRatio)
      : ds_(ds), k_(k), m_(m), tau_(tau), metric_(metric) {
    if (ds.dim() != 2) throw unsupported_dimension_error(ds.dim());
    if (m < 1) throw domain_error("cardinality budget must be at least 1");
    lines_ = to_dual_lines(ds, tau);
    if (k < 1 || k > lines_.size())
      throw domain_error("k out of range [1, " + std::to_string(lines_.size()) + "]");
  }

  const std::vector<DualLine>& lines() const { return lines_; }
  double cost(std::size_t line, std::size_t budget) const {
    return table_[line * m_ + (budget - 1)].cost;
  }

  /// Seeds the table at theta = pi/2: every chain starts as a single line,
  /// so each budget column holds the line's own clamped value at the y-axis.
  void init_structures() {
    const std::size_t n = lines_.size();
    table_.assign(n * m_, DPCell{});
    arena_.clear();
    const double theta0 = std::numbers::pi / 2.0;
    const UtilityDirection w = UtilityDirection::from_angle(theta0);
    const double cdist = contour_dist_at(w);
    for (std::size_t i = 0; i < n; ++i) {
      arena_.push_back({i, kNoParent});
      const double c = metric_value(lines_[i], w, cdist);
      for (std::size_t h = 0; h < m_; ++h)
        table_[i * m_ + h] = {c, arena_.size() - 1, theta0};
    }
  }

  /// Crossing of two lines. The line emerging farther only accumulates the
  /// event value; the line emerging closer may also be reached by a turn
  /// from the other line at one extra segment of budget.
  void process_swap_event(const SwapEvent& ev, double contour_distance) {
    const double c = clamp_value(ev.distance, contour_distance);
    const std::size_t a = ev.above, b = ev.below;
    std::vector<DPCell> a_before(m_);
    for (std::size_t h = 0; h < m_; ++h) a_before[h] = table_[a * m_ + h];

    for (std::size_t h = 0; h < m_; ++h) raise(table_[a * m_ + h], c, ev.theta);
    raise(table_[b * m_ + 0], c, ev.theta);
    for (std::size_t h = 1; h < m_; ++h) {
      DPCell& cell = table_[b * m_ + h];
      raise(cell, c, ev.theta);
      const DPCell& from = a_before[h - 1];
      const double turn_cost = std::max(from.cost, c);
      if (turn_cost < cell.cost) {
        arena_.push_back({b, from.node});
        cell.cost = turn_cost;
        cell.node = arena_.size() - 1;
        cell.theta_max = from.cost >= c ? from.theta_max : ev.theta;
      }
    }
  }

  /// Contour vertex or axis terminal: the reference distance changed shape,
  /// so every cell of every line takes the value at this angle.
  void process_contour_vertex(double theta, double contour_distance) {
    const UtilityDirection w = UtilityDirection::from_angle(theta);
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const double c = metric_value(lines_[i], w, contour_distance);
      for (std::size_t h = 0; h < m_; ++h) raise(table_[i * m_ + h], c, theta);
    }
  }

  /// Scans the full table for the minimum; ties go to the smaller budget,
  /// then the lexicographically smallest sorted id set.
  Solution extract_solution() const {
    std::size_t best_i = 0, best_h = 0;
    std::vector<std::string> best_ids;
    bool have = false;
    for (std::size_t h = 0; h < m_; ++h) {
      for (std::size_t i = 0; i < lines_.size(); ++i) {
        const DPCell& cell = table_[i * m_ + h];
        if (have && cell.cost > table_[best_i * m_ + best_h].cost) continue;
        std::vector<std::string> ids = sorted_ids(cell.node);
        if (!have || cell.cost < table_[best_i * m_ + best_h].cost ||
            (h == best_h && ids < best_ids)) {
          best_i = i;
          best_h = h;
          best_ids = std::move(ids);
          have = true;
        }
      }
    }
    const DPCell& cell = table_[best_i * m_ + best_h];
    Solution sol;
    sol.ids = chain_ids(cell.node);
    sol.cost = cell.cost;
    sol.metric = metric_;
    sol.worst_direction = UtilityDirection::from_angle(cell.theta_max);
    sol.exactness = Exactness::exact_2d();
    sol.algorithm = "sweep";
    return sol;
  }

  /// Full run: early exit when the contour itself fits the budget, else
  /// init, sweep all crossings, close at the x-axis, extract.
  Solution solve() {
    const Contour contour = compute_contour(ds_, k_, tau_);
    if (contour.contributor_ids().size() <= m_) {
      Solution sol;
      for (const auto& seg : contour.segments()) {
        const std::string& id = contour.lines()[seg.line].source_id;
        if (std::find(sol.ids.begin(), sol.ids.end(), id) == sol.ids.end())
          sol.ids.push_back(id);
      }
      sol.cost = 0.0;
      sol.metric = metric_;
      sol.worst_direction = UtilityDirection::from_angle(std::numbers::pi / 2.0);
      sol.exactness = Exactness::exact_2d();
      sol.algorithm = "sweep";
      return sol;
    }

    init_structures();
    const std::size_t ck = k_ - 1;
    RadialSweep sweep(lines_);
    sweep.run([&](const SwapEvent& ev) {
      const UtilityDirection w = UtilityDirection::from_angle(ev.theta);
      const double cdist = ray_distance(lines_[sweep.order()[ck]], w);
      process_swap_event(ev, cdist);
      if (ev.pos == ck || ev.pos + 1 == ck) process_contour_vertex(ev.theta, cdist);
    });
    {
      const UtilityDirection w = UtilityDirection::from_angle(0.0);
      const double cdist = ray_distance(lines_[sweep.order()[ck]], w);
      process_contour_vertex(0.0, cdist);
    }
    return extract_solution();
  }

 private:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);
  struct PathNode {
    std::size_t line;
    std::size_t parent;
  };

  static void raise(DPCell& cell, double c, double theta) {
    if (c > cell.cost) {
      cell.cost = c;
      cell.theta_max = theta;
    }
  }

  double contour_dist_at(const UtilityDirection& w) const {
    std::vector<double> d;
    d.reserve(lines_.size());
    for (const DualLine& l : lines_) d.push_back(ray_distance(l, w));
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k_ - 1), d.end());
    return d[k_ - 1];
  }

  /// Value of sitting on a line whose ray distance is `dist` while the
  /// contour sits at `cdist`; negative gaps clamp to zero.
  double clamp_value(double dist, double cdist) const {
    const double gap = std::max(dist - cdist, 0.0);
    switch (metric_) {
      case Metric::kRegretRatio: {
        // (kgain - score) / kgain with score = tau / dist, kgain = tau / cdist.
        return dist > 0.0 ? std::max(1.0 - cdist / dist, 0.0) : 1.0;
      }
      case Metric::kDualDistance:
        return gap;
      case Metric::kContourRatio:
        return gap / cdist;
    }
    throw internal_error("unknown metric");
  }

  double metric_value(const DualLine& l, const UtilityDirection& w, double cdist) const {
    return clamp_value(ray_distance(l, w), cdist);
  }

  std::vector<std::string> chain_ids(std::size_t node) const {
    std::vector<std::string> ids;
    for (std::size_t cur = node; cur != kNoParent; cur = arena_[cur].parent) {
      const std::string& id = lines_[arena_[cur].line].source_id;
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    std::reverse(ids.begin(), ids.end());  // y-axis end first
    return ids;
  }

  std::vector<std::string> sorted_ids(std::size_t node) const {
    std::vector<std::string> ids = chain_ids(node);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  const Dataset& ds_;
  std::size_t k_;
  std::size_t m_;
  double tau_;
  Metric metric_;
  std::vector<DualLine> lines_;
  std::vector<DPCell> table_;   // row = line, column = budget - 1
  std::vector<PathNode> arena_;
};

/// Optimal set of order m in two dimensions via the radial sweep.
inline Solution solve_2d(const Dataset& ds, std::size_t k, std::size_t m, double tau = 1.0,
                         Metric metric = Metric::kRegretRatio) {
  SweepSolver solver(ds, k, m, tau, metric);
  return solver.solve();
}

}  // namespace kregret
