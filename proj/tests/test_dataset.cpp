#include <random>
#include <sstream>

#include "doctest.h"
#include "kregret/dataset.hpp"
#include "nba_fixture.hpp"

using namespace kregret;
namespace fx = fixtures;

TEST_SUITE("dataset") {

TEST_CASE("csv loads with id column and explicit column order") {
  std::istringstream in(fx::kNbaCsv);
  CsvOptions opt;
  opt.id_column = "player";
  opt.columns = {"rebs", "points"};
  const Dataset ds = load_csv(in, opt);
  REQUIRE(ds.size() == 8);
  REQUIRE(ds.dim() == 2);
  CHECK(ds[0].id == fx::kDurant);
  CHECK(ds[0].coords[0] == doctest::Approx(623.0));   // rebs first, as requested
  CHECK(ds[0].coords[1] == doctest::Approx(2472.0));
  CHECK(ds[7].id == fx::kRandolph);
}

TEST_CASE("csv without id column numbers rows from 1") {
  std::istringstream in("a,b\n3,4\n5,6\n");
  const Dataset ds = load_csv(in);
  CHECK(ds[0].id == "1");
  CHECK(ds[1].id == "2");
}

TEST_CASE("csv rejects malformed input") {
  CsvOptions opt;
  SUBCASE("empty stream") {
    std::istringstream in("");
    CHECK_THROWS_AS(load_csv(in, opt), input_error);
  }
  SUBCASE("header only") {
    std::istringstream in("a,b\n");
    CHECK_THROWS_AS(load_csv(in, opt), input_error);
  }
  SUBCASE("unknown column") {
    std::istringstream in("a,b\n1,2\n");
    opt.columns = {"c"};
    CHECK_THROWS_AS(load_csv(in, opt), input_error);
  }
  SUBCASE("ragged row") {
    std::istringstream in("a,b\n1\n");
    CHECK_THROWS_AS(load_csv(in, opt), parse_error);
  }
  SUBCASE("non-numeric cell") {
    std::istringstream in("a,b\n1,zzz\n");
    CHECK_THROWS_AS(load_csv(in, opt), parse_error);
  }
  SUBCASE("parse error carries location") {
    std::istringstream in("a,b\n1,2\n1,zzz\n");
    try {
      load_csv(in, opt);
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.row == 3);
      CHECK(e.col == 2);
    }
  }
  SUBCASE("non-positive value") {
    std::istringstream in("a,b\n1,0\n");
    CHECK_THROWS_AS(load_csv(in, opt), domain_error);
  }
  SUBCASE("non-positive allowed when relaxed, but Dataset still refuses") {
    std::istringstream in("a,b\n1,-2\n");
    opt.strict_positive = false;
    CHECK_THROWS_AS(load_csv(in, opt), domain_error);
  }
}

TEST_CASE("dataset validation") {
  CHECK_THROWS_AS(Dataset({}), input_error);
  CHECK_THROWS_AS(Dataset({{"a", {1.0}}, {"a", {2.0}}}), domain_error);
  CHECK_THROWS_AS(Dataset({{"a", {1.0}}, {"b", {1.0, 2.0}}}), domain_error);
  CHECK_THROWS_AS(Dataset({{"a", {0.0}}}), domain_error);
  const Dataset ds({{"a", {1.0}}, {"b", {2.0}}});
  CHECK(ds.index_of("b") == 1);
  CHECK_THROWS_AS(ds.index_of("zzz"), input_error);
  CHECK_THROWS_AS(ds.indices_of(std::vector<std::string>{"a", "zzz"}), input_error);
}

TEST_CASE("normalization divides by column max and is idempotent") {
  const Dataset ds = fx::nba_geom();
  const std::size_t durant = ds.index_of(fx::kDurant);
  const std::size_t randolph = ds.index_of(fx::kRandolph);
  CHECK(ds[durant].coords[1] == doctest::Approx(1.0));           // best points
  CHECK(ds[durant].coords[0] == doctest::Approx(0.655789).epsilon(1e-6));
  CHECK(ds[randolph].coords[0] == doctest::Approx(1.0));         // best rebounds
  CHECK(ds[randolph].coords[1] == doctest::Approx(0.680016).epsilon(1e-6));
  CHECK(ds.norm_factors()[0] == doctest::Approx(950.0));
  CHECK(ds.norm_factors()[1] == doctest::Approx(2472.0));

  const Dataset again = normalize(ds);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(again[i].coords[0] == doctest::Approx(ds[i].coords[0]));
    CHECK(again[i].coords[1] == doctest::Approx(ds[i].coords[1]));
  }
  CHECK(again.norm_factors()[0] == doctest::Approx(950.0));
}

TEST_CASE("uniform-direction scores match the worked example") {
  const Dataset ds = fx::nba_geom();
  const UtilityDirection w{{0.5, 0.5}};
  CHECK(score(ds[ds.index_of(fx::kRandolph)], w) == doctest::Approx(0.840008).epsilon(1e-5));
  CHECK(score(ds[ds.index_of(fx::kDurant)], w) == doctest::Approx(0.827895).epsilon(1e-5));
  CHECK(score(ds[ds.index_of(fx::kBryant)], w) == doctest::Approx(0.604252).epsilon(1e-5));
}

TEST_CASE("gain and kgain on the worked example") {
  const Dataset ds = fx::nba_geom();
  const UtilityDirection w{{0.5, 0.5}};
  const auto bdw = ds.indices_of(std::vector<std::string>{fx::kBryant, fx::kDurant, fx::kWade});
  CHECK(gain(ds, bdw, w) == doctest::Approx(0.827895).epsilon(1e-5));
  CHECK(kgain(ds, w, 1) == doctest::Approx(0.840008).epsilon(1e-5));
  CHECK(kgain(ds, w, 2) == doctest::Approx(0.827895).epsilon(1e-5));
  // second best on the points axis is James
  CHECK(kgain(ds, UtilityDirection::axis(2, 1), 2) == doctest::Approx(0.913430).epsilon(1e-5));
}

TEST_CASE("kregret_ratio matches the worked example and clamps") {
  const Dataset ds = fx::nba_geom();
  const UtilityDirection w{{0.5, 0.5}};
  const auto bd = ds.indices_of(std::vector<std::string>{fx::kBryant, fx::kDurant});
  CHECK(kregret_ratio(ds, bd, w, 1) == doctest::Approx(0.014420).epsilon(1e-4));
  CHECK(kregret_ratio(ds, bd, w, 2) == doctest::Approx(0.0));
  const auto randolph = ds.indices_of(std::vector<std::string>{fx::kRandolph});
  CHECK(kregret_ratio(ds, randolph, w, 1) == doctest::Approx(0.0));  // best tuple, clamped
}

TEST_CASE("kgain is non-increasing in k and matches gain at k=1") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(0.05, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> pts;
    const std::size_t n = 2 + rng() % 10;
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back({std::to_string(i), {coord(rng), coord(rng), coord(rng)}});
    const Dataset ds(std::move(pts));
    std::uniform_real_distribution<double> wgt(0.0, 1.0);
    UtilityDirection w{{wgt(rng), wgt(rng), wgt(rng) + 0.01}};
    w = w.unit();
    CHECK(kgain(ds, w, 1) == doctest::Approx(gain(ds, ds.all_indices(), w)));
    for (std::size_t k = 2; k <= n; ++k) CHECK(kgain(ds, w, k) <= kgain(ds, w, k - 1) + 1e-15);
    const auto sub = std::vector<std::size_t>{0, n - 1};
    for (std::size_t k = 1; k <= n; ++k) {
      const double r = kregret_ratio(ds, sub, w, k);
      CHECK(r >= 0.0);
      CHECK(r <= 1.0);
    }
  }
}

TEST_CASE("utility direction helpers") {
  const UtilityDirection u = UtilityDirection::uniform(4);
  CHECK(u.is_unit());
  CHECK(u.weights[0] == doctest::Approx(0.5));
  const UtilityDirection a = UtilityDirection::axis(3, 2);
  CHECK(a.weights[2] == 1.0);
  CHECK(a.is_unit());
  CHECK(UtilityDirection::from_angle(0.3).is_unit());
  const UtilityDirection zero{{0.0, 0.0}};
  CHECK_THROWS_AS(zero.unit(), domain_error);
  const UtilityDirection negative{{1.0, -0.5}};
  CHECK_THROWS_AS(negative.validate(), domain_error);
  const UtilityDirection empty{};
  CHECK_THROWS_AS(empty.validate(), domain_error);
}

}  // TEST_SUITE
