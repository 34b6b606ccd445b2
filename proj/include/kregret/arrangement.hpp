#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "kregret/dualgeom.hpp"
#include "kregret/errors.hpp"

namespace kregret {

/// One processed crossing: the two lines have just swapped places in the
/// distance order. `below` is the line emerging closer to the origin,
/// `above` the one that arrived from the envelope side.
struct SwapEvent {
  double theta;
  std::size_t pos;    // below sits at order[pos], above at order[pos + 1]
  std::size_t below;  // line index, closer after the event
  std::size_t above;  // line index, farther after the event
  double distance;    // common ray distance of the pair at theta
};

/// Radial plane sweep over an arrangement of 2D dual lines, from the y-axis
/// (theta = pi/2) down to the x-axis (theta = 0).
///
/// Maintains the lines sorted by ray distance and a queue of the pending
/// crossings of pairs that have been adjacent; every pair of crossing lines
/// is reported exactly once, in deterministic order. Coincident event angles
/// are grouped within an absolute tolerance of 1e-12 and resolved as
/// sequential pairwise swaps, ascending position first, then by source id.
class RadialSweep {
 public:
  explicit RadialSweep(const std::vector<DualLine>& lines) : lines_(lines) {
    if (lines_.empty()) throw domain_error("radial sweep over an empty line set");
    const double tau = lines_.front().tau;
    for (const DualLine& l : lines_) {
      if (l.dim() != 2) throw unsupported_dimension_error(l.dim());
      if (l.tau != tau) throw domain_error("radial sweep requires a common tau");
    }
    order_.resize(lines_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    // Closest on the y-axis first; ties resolved by which line is closer
    // just after pi/2 (larger x coefficient), then by id.
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      if (lines_[a].coeffs[1] != lines_[b].coeffs[1])
        return lines_[a].coeffs[1] > lines_[b].coeffs[1];
      if (lines_[a].coeffs[0] != lines_[b].coeffs[0])
        return lines_[a].coeffs[0] > lines_[b].coeffs[0];
      return lines_[a].source_id < lines_[b].source_id;
    });
    pos_.resize(lines_.size());
    for (std::size_t p = 0; p < order_.size(); ++p) pos_[order_[p]] = p;
  }

  const std::vector<std::size_t>& order() const { return order_; }

  /// Sweeps all crossings; calls visit(const SwapEvent&) after each swap.
  template <class Visit>
  void run(Visit&& visit) {
    constexpr double kAngleTol = 1e-12;
    for (std::size_t p = 0; p + 1 < order_.size(); ++p)
      try_push(order_[p], order_[p + 1], std::numbers::pi / 2.0 + kAngleTol);

    std::size_t processed = 0;
    const std::size_t max_events = lines_.size() * (lines_.size() - 1) / 2;
    while (!queue_.empty()) {
      const double t0 = queue_.top().theta;
      std::vector<QEvent> batch;
      while (!queue_.empty() && queue_.top().theta >= t0 - kAngleTol) {
        batch.push_back(queue_.top());
        queue_.pop();
      }
      while (!batch.empty()) {
        // Deterministic pick: adjacent pair at the smallest position, ids as
        // the final tie-break.
        std::size_t pick = batch.size();
        for (std::size_t e = 0; e < batch.size(); ++e) {
          const auto [pa, pb] = std::minmax(pos_[batch[e].a], pos_[batch[e].b]);
          if (pb != pa + 1) continue;
          if (pick == batch.size() || better_pick(batch[e], batch[pick])) pick = e;
        }
        if (pick == batch.size())
          throw internal_error("popped crossing whose lines are no longer adjacent");
        const QEvent ev = batch[pick];
        batch.erase(batch.begin() + static_cast<std::ptrdiff_t>(pick));

        const std::size_t p = std::min(pos_[ev.a], pos_[ev.b]);
        std::swap(order_[p], order_[p + 1]);
        pos_[order_[p]] = p;
        pos_[order_[p + 1]] = p + 1;
        if (++processed > max_events)
          throw internal_error("more swap events than line pairs");

        const UtilityDirection w = UtilityDirection::from_angle(ev.theta);
        visit(SwapEvent{ev.theta, p, order_[p], order_[p + 1],
                        ray_distance(lines_[order_[p]], w)});

        // Newly adjacent pairs; crossings at (numerically) this very angle
        // join the current batch.
        if (p > 0)
          push_or_batch(order_[p - 1], order_[p], ev.theta, kAngleTol, batch);
        if (p + 2 < order_.size())
          push_or_batch(order_[p + 1], order_[p + 2], ev.theta, kAngleTol, batch);
      }
    }
  }

 private:
  struct QEvent {
    double theta;
    std::size_t a, b;  // canonical a < b
  };
  struct ThetaLess {
    bool operator()(const QEvent& l, const QEvent& r) const { return l.theta < r.theta; }
  };

  bool better_pick(const QEvent& l, const QEvent& r) const {
    const std::size_t pl = std::min(pos_[l.a], pos_[l.b]);
    const std::size_t pr = std::min(pos_[r.a], pos_[r.b]);
    if (pl != pr) return pl < pr;
    const std::string& il = std::min(lines_[l.a].source_id, lines_[l.b].source_id);
    const std::string& ir = std::min(lines_[r.a].source_id, lines_[r.b].source_id);
    return il < ir;
  }

  bool try_push(std::size_t i, std::size_t j, double theta_limit) {
    const auto ev = make_event(i, j, theta_limit);
    if (ev) queue_.push(*ev);
    return ev.has_value();
  }

  std::optional<QEvent> make_event(std::size_t i, std::size_t j, double theta_limit) {
    const auto [a, b] = std::minmax(i, j);
    if (pushed_.empty()) pushed_.resize(lines_.size() * lines_.size(), false);
    std::vector<bool>::reference seen = pushed_[a * lines_.size() + b];
    if (seen) return std::nullopt;
    seen = true;
    const auto angle = intersection_angle(lines_[a], lines_[b]);
    if (!angle || !(angle->theta > 0.0) || !(angle->theta < std::numbers::pi / 2.0)) {
      return std::nullopt;  // touch on an axis or no crossing; order never inverts
    }
    if (angle->theta > theta_limit)
      throw internal_error("crossing discovered above the sweep ray");
    return QEvent{angle->theta, a, b};
  }

  void push_or_batch(std::size_t i, std::size_t j, double now, double tol,
                     std::vector<QEvent>& batch) {
    const auto ev = make_event(i, j, now + tol);
    if (!ev) return;
    if (ev->theta >= now - tol)
      batch.push_back(*ev);
    else
      queue_.push(*ev);
  }

  const std::vector<DualLine>& lines_;
  std::vector<std::size_t> order_;  // line indices, ascending ray distance
  std::vector<std::size_t> pos_;    // inverse of order_
  std::priority_queue<QEvent, std::vector<QEvent>, ThetaLess> queue_;
  std::vector<bool> pushed_;  // pair (a, b) flattened; lazily sized
};

}  // namespace kregret
