#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "kregret/arrangement.hpp"
#include "kregret/dataset.hpp"
#include "kregret/dualgeom.hpp"
#include "kregret/errors.hpp"

namespace kregret {

/// The top-k depth contour (k-th level) of a 2D arrangement of dual lines:
/// at every angle, the supporting line is the k-th closest to the origin.
class Contour {
 public:
  struct Segment {
    std::size_t line;  // index into lines()
    double theta_lo;
    double theta_hi;
  };
  struct Vertex {
    SweepAngle angle;
    double x;
    double y;
    std::size_t line_before;  // support for larger angles (axis vertices repeat)
    std::size_t line_after;
  };

  Contour(std::size_t k, double tau, std::vector<DualLine> lines,
          std::vector<Segment> segments, std::vector<Vertex> vertices)
      : k_(k),
        tau_(tau),
        lines_(std::move(lines)),
        segments_(std::move(segments)),
        vertices_(std::move(vertices)) {
    for (const Segment& s : segments_) contributors_.push_back(lines_[s.line].source_id);
    std::sort(contributors_.begin(), contributors_.end());
    contributors_.erase(std::unique(contributors_.begin(), contributors_.end()),
                        contributors_.end());
  }

  std::size_t k() const { return k_; }
  double tau() const { return tau_; }
  const std::vector<DualLine>& lines() const { return lines_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<std::string>& contributor_ids() const { return contributors_; }

  /// Supporting line at the given angle; binary search over segments.
  std::size_t support_at(double theta) const {
    // Segments are stored in sweep order: theta_lo descending.
    auto it = std::partition_point(segments_.begin(), segments_.end(),
                                   [theta](const Segment& s) { return s.theta_lo > theta; });
    if (it == segments_.end()) it = std::prev(segments_.end());
    return it->line;
  }

  /// Distance from the origin to the contour along the ray at theta.
  double distance_at(double theta) const {
    return ray_distance(lines_[support_at(theta)], UtilityDirection::from_angle(theta));
  }

 private:
  std::size_t k_;
  double tau_;
  std::vector<DualLine> lines_;
  std::vector<Segment> segments_;
  std::vector<Vertex> vertices_;
  std::vector<std::string> contributors_;
};

/// Builds the exact k-th level by an angular sweep that keeps all lines
/// sorted by ray distance; every swap touching sorted position k yields a
/// contour vertex. O(n^2 log n) worst case.
///
/// Duplicate points are collapsed to a single line first, so ranks count
/// distinct tuples.
inline Contour compute_contour(const Dataset& ds, std::size_t k, double tau = 1.0) {
  if (ds.dim() != 2) throw unsupported_dimension_error(ds.dim());
  std::vector<DualLine> lines = to_dual_lines(ds, tau);
  if (k < 1 || k > lines.size())
    throw domain_error("k out of range [1, " + std::to_string(lines.size()) + "]");
  const std::size_t ck = k - 1;

  RadialSweep sweep(lines);
  // Raw support boundaries: support[i] holds on [boundary_theta[i+1], boundary_theta[i]].
  std::vector<double> boundary{std::numbers::pi / 2.0};
  std::vector<std::size_t> support{sweep.order()[ck]};
  sweep.run([&](const SwapEvent& ev) {
    if (ev.pos != ck && ev.pos + 1 != ck) return;
    boundary.push_back(ev.theta);
    support.push_back(sweep.order()[ck]);
  });
  boundary.push_back(0.0);

  // Drop zero-length pieces from coincident events, merge equal neighbours.
  std::vector<Contour::Segment> segments;
  std::vector<Contour::Vertex> vertices;
  auto point_at = [&](std::size_t line, double theta) {
    const UtilityDirection w = UtilityDirection::from_angle(theta);
    const double d = ray_distance(lines[line], w);
    return std::pair{d * w.weights[0], d * w.weights[1]};
  };
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double hi = boundary[i];
    const double lo = boundary[i + 1];
    if (!(lo < hi)) continue;
    if (!segments.empty() && segments.back().line == support[i]) {
      segments.back().theta_lo = lo;
      continue;
    }
    if (!segments.empty()) {
      const auto [x, y] = point_at(support[i], hi);
      vertices.push_back({SweepAngle{hi}, x, y, segments.back().line, support[i]});
    }
    segments.push_back({support[i], lo, hi});
  }
  // Explicit axis vertices: the sweep starts on the y-axis and finishes on
  // the x-axis.
  {
    const auto [x0, y0] = point_at(segments.front().line, std::numbers::pi / 2.0);
    vertices.insert(vertices.begin(), {SweepAngle::y_axis(), x0, y0,
                                       segments.front().line, segments.front().line});
    const auto [x1, y1] = point_at(segments.back().line, 0.0);
    vertices.push_back({SweepAngle::x_axis(), x1, y1, segments.back().line,
                        segments.back().line});
  }
  return Contour(k, tau, std::move(lines), std::move(segments), std::move(vertices));
}

/// Distance from the origin to the contour along the ray at theta.
inline double contour_distance(const Contour& c, SweepAngle theta) {
  return c.distance_at(theta.theta);
}

}  // namespace kregret
