#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kregret/dataset.hpp"

namespace kregret {

/// Cost metric for comparing a set against the top-k contour.
///
/// kRegretRatio is the defining objective (shortfall over k-gain);
/// kDualDistance is the plain dual-space gap used by the worked tables;
/// kContourRatio normalizes the gap by the contour distance instead.
enum class Metric { kRegretRatio, kDualDistance, kContourRatio };

inline std::string to_string(Metric m) {
  switch (m) {
    case Metric::kRegretRatio: return "regret-ratio";
    case Metric::kDualDistance: return "dual-distance";
    case Metric::kContourRatio: return "contour-ratio";
  }
  return "?";
}

struct Exactness {
  bool exact = true;
  std::size_t sample_count = 0;  // meaningful when !exact

  static Exactness exact_2d() { return {true, 0}; }
  static Exactness sampled(std::size_t count) { return {false, count}; }
};

/// Result of evaluating one subset against the whole dataset.
struct RegretReport {
  std::vector<std::string> subset_ids;
  double max_value = 0.0;  // max ratio, or max dual distance, per metric
  UtilityDirection argmax_direction;
  Metric metric = Metric::kRegretRatio;
  Exactness exactness;
};

/// A chosen representative set together with its achieved cost.
struct Solution {
  std::vector<std::string> ids;  // chain order for the 2D sweep, sorted otherwise
  double cost = 0.0;
  Metric metric = Metric::kRegretRatio;
  UtilityDirection worst_direction;
  Exactness exactness;
  std::string algorithm;
  std::vector<double> accepted_trace;  // greedy: cost after each accepted swap
  bool guard_tripped = false;
};

}  // namespace kregret
