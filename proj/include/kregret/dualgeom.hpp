#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "kregret/dataset.hpp"
#include "kregret/errors.hpp"

namespace kregret {

/// Dual image of a point p under the translated nullspace transform: the
/// hyperplane { x : p . x = tau }.
struct DualLine {
  std::string source_id;
  std::vector<double> coeffs;  // the point's coordinates, strictly positive
  double tau = 1.0;

  std::size_t dim() const { return coeffs.size(); }
};

/// Angle of a sweep ray in the positive quadrant; direction (cos t, sin t).
/// The radial sweep processes angles in descending order, from the y-axis
/// (pi/2) toward the x-axis (0).
struct SweepAngle {
  double theta = 0.0;

  double slope() const { return std::tan(theta); }
  UtilityDirection direction() const { return UtilityDirection::from_angle(theta); }

  static SweepAngle x_axis() { return {0.0}; }
  static SweepAngle y_axis() { return {std::numbers::pi / 2.0}; }
};

inline DualLine to_dual_line(const Point& p, double tau) {
  if (!(tau > 0.0)) throw domain_error("tau must be positive");
  for (double c : p.coords)
    if (!(c > 0.0)) throw domain_error("dual transform requires strictly positive coordinates");
  return DualLine{p.id, p.coords, tau};
}

/// Dual lines of a whole dataset. Coincident lines (duplicate points) are
/// deduplicated; the survivor keeps the lexicographically smallest id, and
/// dropped ids are reported through `dropped` when given.
inline std::vector<DualLine> to_dual_lines(const Dataset& ds, double tau,
                                           std::vector<std::string>* dropped = nullptr) {
  std::vector<DualLine> lines;
  lines.reserve(ds.size());
  for (const Point& p : ds.points()) {
    auto dup = std::find_if(lines.begin(), lines.end(), [&](const DualLine& l) {
      return l.coeffs == p.coords;
    });
    if (dup == lines.end()) {
      lines.push_back(to_dual_line(p, tau));
    } else if (p.id < dup->source_id) {
      if (dropped) dropped->push_back(dup->source_id);
      dup->source_id = p.id;
    } else {
      if (dropped) dropped->push_back(p.id);
    }
  }
  return lines;
}

/// Euclidean distance from the origin to the line along the unit ray w:
/// tau / (coeffs . w). Infinite when the ray never reaches the line.
inline double ray_distance(const DualLine& l, const UtilityDirection& w) {
  if (l.coeffs.size() != w.weights.size())
    throw domain_error("dimension mismatch between line and direction");
  double s = 0.0;
  for (std::size_t a = 0; a < l.coeffs.size(); ++a) s += l.coeffs[a] * w.weights[a];
  if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
  return l.tau / s;
}

/// Angle of the ray through the intersection of two 2D lines with a common
/// tau, if it lies in the closed positive quadrant. Two lines meet where
/// their source points score equally: (p1 - p2) . w = 0.
inline std::optional<SweepAngle> intersection_angle(const DualLine& l1, const DualLine& l2) {
  if (l1.dim() != 2 || l2.dim() != 2)
    throw unsupported_dimension_error(std::max(l1.dim(), l2.dim()));
  if (l1.tau != l2.tau) throw domain_error("intersection requires a common tau");
  const double dx = l1.coeffs[0] - l2.coeffs[0];
  const double dy = l1.coeffs[1] - l2.coeffs[1];
  if (dx == 0.0 && dy == 0.0) throw domain_error("coincident dual lines");
  // Same sign: one point dominates the other, no crossing in the quadrant.
  if (dx * dy > 0.0) return std::nullopt;
  return SweepAngle{std::atan2(std::abs(dx), std::abs(dy))};
}

/// Lower envelope of a set of 2D lines, as angularly ordered segments.
struct EnvelopeChain {
  struct Segment {
    std::size_t line;  // index into the input line set
    double theta_lo;
    double theta_hi;
  };
  struct Vertex {
    SweepAngle angle;
    double x;
    double y;
    std::size_t line_before;  // supporting line for larger angles
    std::size_t line_after;
  };

  std::vector<Segment> segments;  // sweep order: segments[0].theta_hi == pi/2
  std::vector<Vertex> vertices;   // angles strictly decreasing

  std::size_t support_at(double theta) const {
    for (const Segment& s : segments)
      if (theta >= s.theta_lo) return s.line;
    return segments.back().line;
  }
};

/// Computes the lower envelope in O(n log n) via the convex hull of the
/// source points: the nearest line along w is the one whose point maximizes
/// the score w . p.
inline EnvelopeChain lower_envelope(const std::vector<DualLine>& lines) {
  if (lines.empty()) throw domain_error("lower envelope of an empty line set");
  const double tau = lines.front().tau;
  for (const DualLine& l : lines) {
    if (l.dim() != 2) throw unsupported_dimension_error(l.dim());
    if (l.tau != tau) throw domain_error("lower envelope requires a common tau");
  }

  std::vector<std::size_t> idx(lines.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (lines[a].coeffs[0] != lines[b].coeffs[0])
      return lines[a].coeffs[0] < lines[b].coeffs[0];
    return lines[a].coeffs[1] < lines[b].coeffs[1];
  });

  // Upper hull, left to right; strict turns drop collinear and dominated points.
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    const auto& po = lines[o].coeffs;
    const auto& pa = lines[a].coeffs;
    const auto& pb = lines[b].coeffs;
    return (pa[0] - po[0]) * (pb[1] - po[1]) - (pa[1] - po[1]) * (pb[0] - po[0]);
  };
  std::vector<std::size_t> hull;
  for (std::size_t i : idx) {
    if (!hull.empty() && lines[hull.back()].coeffs == lines[i].coeffs) continue;
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), i) >= 0.0)
      hull.pop_back();
    hull.push_back(i);
  }

  // Support chain: from the best point on the y-axis (max y, then max x) to
  // the rightmost point. Angles along it are strictly decreasing.
  std::size_t start = 0;
  for (std::size_t h = 1; h < hull.size(); ++h) {
    const auto& best = lines[hull[start]].coeffs;
    const auto& cand = lines[hull[h]].coeffs;
    if (cand[1] > best[1] || (cand[1] == best[1] && cand[0] > best[0])) start = h;
  }

  EnvelopeChain chain;
  double hi = std::numbers::pi / 2.0;
  for (std::size_t h = start; h + 1 < hull.size(); ++h) {
    const auto& p = lines[hull[h]].coeffs;
    const auto& q = lines[hull[h + 1]].coeffs;
    const double theta = std::atan2(q[0] - p[0], p[1] - q[1]);
    if (!(theta < hi)) continue;  // degenerate tie at the boundary
    chain.segments.push_back({hull[h], theta, hi});
    const UtilityDirection w = UtilityDirection::from_angle(theta);
    const double dist = ray_distance(lines[hull[h]], w);
    chain.vertices.push_back({SweepAngle{theta}, dist * w.weights[0], dist * w.weights[1],
                              hull[h], hull[h + 1]});
    hi = theta;
  }
  chain.segments.push_back({hull.back(), 0.0, hi});
  return chain;
}

/// Does line l pass through (or under) the segment from the origin to the
/// point at distance `delta` along the unit ray w? Candidates failing this
/// test cannot improve a set whose worst gap sits at that point.
inline bool line_cuts_origin_segment(const DualLine& l, const UtilityDirection& w,
                                     double delta) {
  return ray_distance(l, w) <= delta;
}

}  // namespace kregret
