#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kregret/errors.hpp"

namespace kregret {

/// One tuple: an opaque id plus d strictly positive coordinates.
struct Point {
  std::string id;
  std::vector<double> coords;
};

/// A nonnegative linear utility, represented by its weight vector.
struct UtilityDirection {
  std::vector<double> weights;

  std::size_t dim() const { return weights.size(); }

  double norm() const {
    double s = 0.0;
    for (double w : weights) s += w * w;
    return std::sqrt(s);
  }

  /// Rescaled copy with unit Euclidean norm.
  UtilityDirection unit() const {
    const double n = norm();
    if (n <= 0.0) throw domain_error("utility direction must be nonzero");
    UtilityDirection u{weights};
    for (double& w : u.weights) w /= n;
    return u;
  }

  bool is_unit(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }

  static UtilityDirection axis(std::size_t dim, std::size_t i) {
    UtilityDirection u{std::vector<double>(dim, 0.0)};
    u.weights.at(i) = 1.0;
    return u;
  }

  static UtilityDirection uniform(std::size_t dim) {
    return UtilityDirection{std::vector<double>(dim, 1.0)}.unit();
  }

  /// 2D direction (cos theta, sin theta) for theta in [0, pi/2].
  static UtilityDirection from_angle(double theta) {
    return UtilityDirection{{std::cos(theta), std::sin(theta)}};
  }

  void validate() const {
    if (weights.empty()) throw domain_error("utility direction is empty");
    bool positive = false;
    for (double w : weights) {
      if (w < 0.0) throw domain_error("utility weights must be nonnegative");
      if (w > 0.0) positive = true;
    }
    if (!positive) throw domain_error("utility direction must have a positive weight");
  }
};

/// Immutable collection of positive d-dimensional points.
///
/// norm_factors() holds the per-attribute divisors applied so far; a freshly
/// loaded dataset has all factors equal to 1.
class Dataset {
 public:
  Dataset(std::vector<Point> points, std::vector<double> norm_factors = {})
      : points_(std::move(points)) {
    if (points_.empty()) throw input_error("dataset must contain at least one point");
    dim_ = points_.front().coords.size();
    if (dim_ == 0) throw domain_error("points must have at least one coordinate");
    norm_factors_ = norm_factors.empty() ? std::vector<double>(dim_, 1.0)
                                         : std::move(norm_factors);
    if (norm_factors_.size() != dim_)
      throw domain_error("norm_factors size does not match dimension");
    std::unordered_set<std::string> seen;
    for (const Point& p : points_) {
      if (p.coords.size() != dim_)
        throw domain_error("point '" + p.id + "' has mismatched dimension");
      for (double c : p.coords)
        if (!(c > 0.0) || !std::isfinite(c))
          throw domain_error("point '" + p.id + "' has a non-positive coordinate");
      if (!seen.insert(p.id).second)
        throw domain_error("duplicate point id '" + p.id + "'");
    }
  }

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& norm_factors() const { return norm_factors_; }

  /// Index of the point with the given id.
  std::size_t index_of(const std::string& id) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (points_[i].id == id) return i;
    throw input_error("unknown point id '" + id + "'");
  }

  std::vector<std::size_t> indices_of(std::span<const std::string> ids) const {
    std::vector<std::size_t> out;
    std::vector<std::string> missing;
    out.reserve(ids.size());
    for (const auto& id : ids) {
      bool found = false;
      for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].id == id) {
          out.push_back(i);
          found = true;
          break;
        }
      if (!found) missing.push_back(id);
    }
    if (!missing.empty()) {
      std::string msg = "unknown point ids:";
      for (const auto& id : missing) msg += " '" + id + "'";
      throw input_error(msg);
    }
    return out;
  }

  std::vector<std::size_t> all_indices() const {
    std::vector<std::size_t> out(points_.size());
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }

 private:
  std::vector<Point> points_;
  std::size_t dim_ = 0;
  std::vector<double> norm_factors_;
};

struct CsvOptions {
  /// Header name of the id column; empty means no id column (ids default to
  /// the 1-based row index).
  std::string id_column;
  /// Attribute columns to keep, in the order given; empty means every
  /// non-id column in file order.
  std::vector<std::string> columns;
  /// Reject zero or negative cells (required by the duality transform).
  bool strict_positive = true;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  for (auto& f : fields) {
    const auto a = f.find_first_not_of(" \t");
    const auto b = f.find_last_not_of(" \t");
    f = (a == std::string::npos) ? std::string{} : f.substr(a, b - a + 1);
  }
  return fields;
}

}  // namespace detail

/// Reads a header-first CSV stream into a Dataset (un-normalized).
inline Dataset load_csv(std::istream& in, const CsvOptions& options = {}) {
  std::string line;
  if (!std::getline(in, line)) throw input_error("empty CSV input");
  const auto header = detail::split_csv_line(line);

  auto column_index = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw input_error("CSV has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };

  std::size_t id_col = std::numeric_limits<std::size_t>::max();
  if (!options.id_column.empty()) id_col = column_index(options.id_column);

  std::vector<std::size_t> attr_cols;
  if (options.columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (c != id_col) attr_cols.push_back(c);
  } else {
    for (const auto& name : options.columns) attr_cols.push_back(column_index(name));
  }
  if (attr_cols.empty()) throw input_error("no attribute columns selected");

  std::vector<Point> points;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != header.size())
      throw parse_error("row has " + std::to_string(fields.size()) +
                            " fields, header has " + std::to_string(header.size()),
                        row, 1);
    Point p;
    p.id = (id_col != std::numeric_limits<std::size_t>::max())
               ? fields[id_col]
               : std::to_string(points.size() + 1);
    for (std::size_t c : attr_cols) {
      double v = 0.0;
      std::size_t consumed = 0;
      try {
        v = std::stod(fields[c], &consumed);
      } catch (const std::exception&) {
        throw parse_error("non-numeric cell '" + fields[c] + "'", row, c + 1);
      }
      if (consumed != fields[c].size())
        throw parse_error("non-numeric cell '" + fields[c] + "'", row, c + 1);
      if (options.strict_positive && !(v > 0.0))
        throw domain_error("non-positive value " + fields[c] + " at row " +
                           std::to_string(row) + "; strictly positive data required");
      p.coords.push_back(v);
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw input_error("CSV has a header but no data rows");
  return Dataset(std::move(points));
}

/// Divides every attribute by its column maximum, so all coordinates land in
/// (0, 1]. Idempotent.
inline Dataset normalize(const Dataset& ds) {
  std::vector<double> maxima(ds.dim(), 0.0);
  for (const Point& p : ds.points())
    for (std::size_t a = 0; a < ds.dim(); ++a) maxima[a] = std::max(maxima[a], p.coords[a]);
  for (double mx : maxima)
    if (!(mx > 0.0)) throw domain_error("attribute with non-positive maximum");

  std::vector<Point> scaled = ds.points();
  for (Point& p : scaled)
    for (std::size_t a = 0; a < ds.dim(); ++a) p.coords[a] /= maxima[a];
  std::vector<double> factors = ds.norm_factors();
  for (std::size_t a = 0; a < ds.dim(); ++a) factors[a] *= maxima[a];
  return Dataset(std::move(scaled), std::move(factors));
}

/// Dot product of a point with a utility direction.
inline double score(const Point& p, const UtilityDirection& w) {
  if (p.coords.size() != w.weights.size())
    throw domain_error("dimension mismatch between point and utility direction");
  double s = 0.0;
  for (std::size_t a = 0; a < p.coords.size(); ++a) s += p.coords[a] * w.weights[a];
  return s;
}

/// Best score achievable within the subset.
inline double gain(const Dataset& ds, std::span<const std::size_t> subset,
                   const UtilityDirection& w) {
  if (subset.empty()) throw domain_error("gain of an empty subset");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i : subset) best = std::max(best, score(ds[i], w));
  return best;
}

/// k-th largest score over the whole dataset (equal scores occupy
/// consecutive ranks).
inline double kgain(const Dataset& ds, const UtilityDirection& w, std::size_t k) {
  if (k < 1 || k > ds.size()) throw domain_error("k out of range [1, n]");
  std::vector<double> scores;
  scores.reserve(ds.size());
  for (const Point& p : ds.points()) scores.push_back(score(p, w));
  std::nth_element(scores.begin(), scores.begin() + (k - 1), scores.end(),
                   std::greater<double>{});
  return scores[k - 1];
}

/// max(kgain(D,w) - gain(S,w), 0) / kgain(D,w); always in [0, 1].
inline double kregret_ratio(const Dataset& ds, std::span<const std::size_t> subset,
                            const UtilityDirection& w, std::size_t k) {
  const double kg = kgain(ds, w, k);
  if (!(kg > 0.0)) throw domain_error("k-gain is not positive");
  const double g = gain(ds, subset, w);
  return std::max(kg - g, 0.0) / kg;
}

}  // namespace kregret
