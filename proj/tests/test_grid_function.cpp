#include "opcodec/grid_function.hpp"
#include "opcodec/compact_family.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace opcodec;

TEST_CASE("evaluate returns node values and interpolates") {
  GridFunction id = GridFunction::sample1d(11, [](double x) { return x; });
  CHECK(evaluate(id, 0.5) == doctest::Approx(0.5).epsilon(1e-15));

  GridFunction three = GridFunction::constant(Domain::unit_interval(), {11, 1}, 3.0,
                                              SpaceTag::ContinuousSup);
  CHECK(evaluate(three, 0.123) == doctest::Approx(3.0).epsilon(1e-15));

  // Oracle: max interpolation error of the 11-node x^2 interpolant over a
  // 1e4-point sweep bounds the error committed at any single query.
  GridFunction sq = GridFunction::sample1d(11, [](double x) { return x * x; });
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = static_cast<double>(i) / 10000.0;
    worst = std::max(worst, std::abs(evaluate(sq, x) - x * x));
  }
  CHECK(worst <= 0.005);
  CHECK(std::abs(evaluate(sq, 0.55) - 0.3025) <= worst + 1e-15);
  CHECK(evaluate(sq, 0.55) == doctest::Approx(0.3025).epsilon(0.02));
}

TEST_CASE("evaluate rejects points outside the domain") {
  GridFunction f = GridFunction::sample1d(11, [](double x) { return x; });
  CHECK_THROWS_AS(evaluate(f, 1.5), std::domain_error);
  CHECK_THROWS_AS(evaluate(f, -0.1), std::domain_error);
}

TEST_CASE("evaluate reproduces node values exactly on random functions") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    GridFunction f =
        testing::random_rough(rng, Domain::unit_interval(), {17, 1}, SpaceTag::ContinuousSup);
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      CHECK(evaluate(f, f.node_coord(0, i)) == doctest::Approx(f.values()[i]).epsilon(1e-14));
    }
  }
  for (int rep = 0; rep < 5; ++rep) {
    GridFunction f = testing::random_rough(rng, Domain::unit_square(), {9, 7},
                                           SpaceTag::ContinuousSup);
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      CHECK(evaluate(f, f.node_point(i)) == doctest::Approx(f.values()[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("sup_distance basics") {
  GridFunction f = GridFunction::sample1d(101, [](double x) { return x; });
  CHECK(sup_distance(f, f) == 0.0);

  GridFunction one = GridFunction::constant(Domain::unit_interval(), {101, 1}, 1.0,
                                            SpaceTag::ContinuousSup);
  GridFunction zero = GridFunction::constant(Domain::unit_interval(), {101, 1}, 0.0,
                                             SpaceTag::ContinuousSup);
  CHECK(sup_distance(one, zero) == doctest::Approx(1.0).epsilon(1e-15));

  // Calculus oracle: |x - x^2| is maximal at x = 1/2 with value 1/4; the
  // 101-node grid contains 0.5 so the node max hits it exactly.
  GridFunction sq = GridFunction::sample1d(101, [](double x) { return x * x; });
  CHECK(std::abs(sup_distance(f, sq) - 0.25) <= 1e-12);

  GridFunction short_grid = GridFunction::sample1d(51, [](double x) { return x; });
  CHECK_THROWS_AS(sup_distance(f, short_grid), std::invalid_argument);
}

TEST_CASE("sup_distance is a metric on seeded triples") {
  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    GridFunction f =
        testing::random_rough(rng, Domain::unit_interval(), {31, 1}, SpaceTag::ContinuousSup);
    GridFunction g =
        testing::random_rough(rng, Domain::unit_interval(), {31, 1}, SpaceTag::ContinuousSup);
    GridFunction h =
        testing::random_rough(rng, Domain::unit_interval(), {31, 1}, SpaceTag::ContinuousSup);
    const double fg = sup_distance(f, g);
    const double gh = sup_distance(g, h);
    const double fh = sup_distance(f, h);
    CHECK(fg >= 0.0);
    CHECK(fg == doctest::Approx(sup_distance(g, f)).epsilon(1e-15));
    CHECK(fh <= fg + gh + 1e-12);
  }
}

TEST_CASE("l2_inner quadrature") {
  GridFunction s1 = GridFunction::sample1d(
      1025, [](double x) { return std::numbers::sqrt2 * std::sin(std::numbers::pi * x); },
      SpaceTag::L2);
  GridFunction s2 = GridFunction::sample1d(
      1025, [](double x) { return std::numbers::sqrt2 * std::sin(2 * std::numbers::pi * x); },
      SpaceTag::L2);
  // Analytic: int_0^1 2 sin^2(pi x) dx = 1; trapezoid error O(h^2).
  CHECK(std::abs(l2_inner(s1, s1) - 1.0) <= 1e-5);
  CHECK(std::abs(l2_inner(s1, s2)) <= 1e-5);

  GridFunction one =
      GridFunction::constant(Domain::unit_interval(), {1025, 1}, 1.0, SpaceTag::L2);
  CHECK(l2_inner(one, one) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("l2_inner satisfies Cauchy-Schwarz on seeded pairs") {
  Rng rng(37);
  for (int rep = 0; rep < 100; ++rep) {
    GridFunction f = testing::random_rough(rng, Domain::unit_interval(), {41, 1}, SpaceTag::L2);
    GridFunction g = testing::random_rough(rng, Domain::unit_interval(), {41, 1}, SpaceTag::L2);
    const double ff = l2_inner(f, f);
    const double gg = l2_inner(g, g);
    const double fg = l2_inner(f, g);
    CHECK(ff >= 0.0);
    CHECK(fg * fg <= ff * gg + 1e-12);
    CHECK(fg == doctest::Approx(l2_inner(g, f)).epsilon(1e-15));
  }
}

TEST_CASE("l2_inner in two dimensions") {
  GridFunction one =
      GridFunction::constant(Domain::unit_square(), {33, 33}, 1.0, SpaceTag::L2);
  CHECK(l2_inner(one, one) == doctest::Approx(1.0).epsilon(1e-14));
  GridFunction xy = GridFunction::sample(
      Domain::unit_square(), {65, 65}, [](const Eigen::VectorXd& p) { return p[0] * p[1]; },
      SpaceTag::L2);
  // int xy over the unit square = 1/4; product trapezoid is exact for bilinear.
  GridFunction one65 =
      GridFunction::constant(Domain::unit_square(), {65, 65}, 1.0, SpaceTag::L2);
  CHECK(l2_inner(one65, xy) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("compact family enumeration") {
  auto constant_generator = [](const Eigen::VectorXd& theta) {
    return GridFunction::constant(Domain::unit_interval(), {11, 1}, theta[0],
                                  SpaceTag::ContinuousSup);
  };
  Eigen::VectorXd z(1);
  z[0] = 0.0;
  CompactFamily single({z}, constant_generator);
  REQUIRE(family_members(single).size() == 1);
  CHECK(sup_norm(family_members(single)[0]) == 0.0);

  std::vector<Eigen::VectorXd> three;
  for (double a : {-1.0, 0.0, 1.0}) {
    Eigen::VectorXd theta(1);
    theta[0] = a;
    three.push_back(theta);
  }
  CompactFamily sines(three, [](const Eigen::VectorXd& theta) {
    return GridFunction::sample1d(33, [a = theta[0]](double x) {
      return a * std::sin(std::numbers::pi * x);
    });
  });
  REQUIRE(sines.size() == 3);
  CHECK(sup_norm(sines.members()[1]) == 0.0);

  CHECK_THROWS_AS(CompactFamily({}, constant_generator), std::invalid_argument);
}

TEST_CASE("C1 grid functions carry derivatives") {
  GridFunction f = GridFunction::sample1d_c1(
      33, [](double x) { return x * x / 2; }, [](double x) { return x; });
  CHECK(f.space_tag() == SpaceTag::C1);
  CHECK(f.has_derivative());
  CHECK(f.derivative_values()[32] == doctest::Approx(1.0));
  CHECK_THROWS_AS(GridFunction(Domain::unit_interval(), {33, 1},
                               Eigen::VectorXd::Zero(33), SpaceTag::C1),
                  std::invalid_argument);
}

TEST_CASE("grid function CSV round shape") {
  GridFunction f = GridFunction::sample1d_c1(
      3, [](double x) { return x; }, [](double) { return 1.0; });
  std::ostringstream out;
  write_csv(f, out);
  CHECK(out.str().substr(0, 20) == "x,value,derivative\n0");

  GridFunction g = GridFunction::constant(Domain::unit_square(), {3, 3}, 1.0,
                                          SpaceTag::ContinuousSup);
  std::ostringstream out2;
  write_csv(g, out2);
  const std::string csv2 = out2.str();
  CHECK(csv2.substr(0, 10) == "x,y,value\n");
  CHECK(std::count(csv2.begin(), csv2.end(), '\n') == 10);
}
