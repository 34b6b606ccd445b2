#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "kregret/dualgeom.hpp"
#include "nba_fixture.hpp"

using namespace kregret;
namespace fx = fixtures;

namespace {

std::optional<SweepAngle> pair_angle(const Dataset& ds, const char* a, const char* b,
                                     double tau = 0.5) {
  return intersection_angle(to_dual_line(ds[ds.index_of(a)], tau),
                            to_dual_line(ds[ds.index_of(b)], tau));
}

}  // namespace

TEST_SUITE("dualgeom") {

TEST_CASE("dual transform validates positivity") {
  CHECK_THROWS_AS(to_dual_line(Point{"a", {1.0, 2.0}}, 0.0), domain_error);
  CHECK_THROWS_AS(to_dual_line(Point{"a", {1.0, 2.0}}, -1.0), domain_error);
  const DualLine l = to_dual_line(Point{"a", {2.0, 4.0}}, 0.5);
  CHECK(l.source_id == "a");
  CHECK(l.tau == 0.5);
  CHECK(l.dim() == 2);
}

TEST_CASE("duplicate points collapse to the smallest id") {
  const Dataset ds({{"b", {1.0, 2.0}}, {"a", {1.0, 2.0}}, {"c", {3.0, 1.0}}});
  std::vector<std::string> dropped;
  const auto lines = to_dual_lines(ds, 1.0, &dropped);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].source_id == "a");
  REQUIRE(dropped.size() == 1);
  CHECK(dropped[0] == "b");
}

TEST_CASE("ray distance is tau over the score, infinite off the reachable cone") {
  const DualLine l = to_dual_line(Point{"a", {2.0, 4.0}}, 1.0);
  CHECK(ray_distance(l, UtilityDirection::axis(2, 0)) == doctest::Approx(0.5));
  CHECK(ray_distance(l, UtilityDirection::axis(2, 1)) == doctest::Approx(0.25));
  CHECK(std::isinf(ray_distance(l, UtilityDirection{{0.0, 0.0}})));
  CHECK_THROWS_AS(ray_distance(l, UtilityDirection::axis(3, 0)), domain_error);
}

TEST_CASE("intersection slopes match the worked arrangement") {
  const Dataset ds = fx::nba_geom();
  struct Golden {
    const char* a;
    const char* b;
    double slope;
  };
  // tan of the crossing angle; larger slope = closer to the points axis
  const Golden goldens[] = {
      {fx::kStoudemire, fx::kRandolph, 2.6384}, {fx::kAnthony, fx::kStoudemire, 15.3912},
      {fx::kBryant, fx::kAnthony, 6.0716},      {fx::kWade, fx::kNowitzki, 21.2505},
      {fx::kWade, fx::kAnthony, 2.0664},        {fx::kWade, fx::kBryant, 0.6245},
      {fx::kJames, fx::kRandolph, 1.7858},      {fx::kDurant, fx::kRandolph, 1.0757},
      {fx::kDurant, fx::kStoudemire, 0.4924},   {fx::kNowitzki, fx::kStoudemire, 4.2110},
      {fx::kNowitzki, fx::kRandolph, 3.2338},
  };
  for (const Golden& g : goldens) {
    const auto angle = pair_angle(ds, g.a, g.b);
    REQUIRE(angle.has_value());
    CHECK(angle->slope() == doctest::Approx(g.slope).epsilon(1e-3));
  }
}

TEST_CASE("dominated pairs have no crossing in the quadrant") {
  const Dataset ds = fx::nba_geom();
  CHECK_FALSE(pair_angle(ds, fx::kDurant, fx::kJames).has_value());   // Durant dominates
  CHECK_FALSE(pair_angle(ds, fx::kJames, fx::kBryant).has_value());
}

TEST_CASE("coincident lines are rejected") {
  const DualLine a = to_dual_line(Point{"a", {1.0, 2.0}}, 1.0);
  const DualLine b = to_dual_line(Point{"b", {1.0, 2.0}}, 1.0);
  CHECK_THROWS_AS(intersection_angle(a, b), domain_error);
}

TEST_CASE("mismatched tau is rejected") {
  const DualLine a = to_dual_line(Point{"a", {1.0, 2.0}}, 1.0);
  const DualLine b = to_dual_line(Point{"b", {2.0, 1.0}}, 0.5);
  CHECK_THROWS_AS(intersection_angle(a, b), domain_error);
}

TEST_CASE("crossing angle is where the two points score equally") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(0.05, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Point p{"p", {coord(rng), coord(rng)}};
    const Point q{"q", {coord(rng), coord(rng)}};
    if (p.coords == q.coords) continue;
    const auto angle = intersection_angle(to_dual_line(p, 1.0), to_dual_line(q, 1.0));
    const double dx = p.coords[0] - q.coords[0];
    const double dy = p.coords[1] - q.coords[1];
    if (dx * dy > 0.0) {
      CHECK_FALSE(angle.has_value());
      continue;
    }
    REQUIRE(angle.has_value());
    const UtilityDirection w = angle->direction();
    CHECK(score(p, w) == doctest::Approx(score(q, w)).epsilon(1e-12));
  }
}

TEST_CASE("lower envelope of the full NBA slice is Durant then Randolph") {
  const Dataset ds = fx::nba_geom();
  const auto lines = to_dual_lines(ds, 0.5);
  const EnvelopeChain env = lower_envelope(lines);
  REQUIRE(env.segments.size() == 2);
  CHECK(lines[env.segments[0].line].source_id == fx::kDurant);
  CHECK(lines[env.segments[1].line].source_id == fx::kRandolph);
  REQUIRE(env.vertices.size() == 1);
  CHECK(env.vertices[0].angle.slope() == doctest::Approx(1.0757).epsilon(1e-3));
  CHECK(env.segments[0].theta_hi == doctest::Approx(std::numbers::pi / 2.0));
  CHECK(env.segments[1].theta_lo == doctest::Approx(0.0));
}

TEST_CASE("lower envelope support matches brute force over dense angles") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> coord(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<DualLine> lines;
    const std::size_t n = 2 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i)
      lines.push_back(to_dual_line(Point{std::to_string(i), {coord(rng), coord(rng)}}, 1.0));
    const EnvelopeChain env = lower_envelope(lines);

    double prev = std::numbers::pi / 2.0;
    for (const auto& s : env.segments) {
      CHECK(s.theta_hi == doctest::Approx(prev));
      CHECK(s.theta_lo < s.theta_hi);
      prev = s.theta_lo;
    }
    CHECK(prev == doctest::Approx(0.0));

    for (int a = 0; a <= 1000; ++a) {
      const double theta = std::numbers::pi / 2.0 * a / 1000.0;
      const UtilityDirection w = UtilityDirection::from_angle(theta);
      double best = std::numeric_limits<double>::infinity();
      for (const DualLine& l : lines) best = std::min(best, ray_distance(l, w));
      const double got = ray_distance(lines[env.support_at(theta)], w);
      CHECK(got == doctest::Approx(best).epsilon(1e-9));
    }
  }
}

TEST_CASE("line cuts the origin segment exactly when it is at least as close") {
  const DualLine l = to_dual_line(Point{"a", {1.0, 1.0}}, 1.0);
  const UtilityDirection w = UtilityDirection::uniform(2);
  const double d = ray_distance(l, w);
  CHECK(line_cuts_origin_segment(l, w, d));
  CHECK(line_cuts_origin_segment(l, w, d + 0.01));
  CHECK_FALSE(line_cuts_origin_segment(l, w, d - 0.01));
}

}  // TEST_SUITE
