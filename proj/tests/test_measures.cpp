#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rootbar/measure.hpp"

using namespace rootbar;

namespace {

// independent quadrature oracle: dense Simpson of |x - y| rho(y) over the
// panels plus the atom sum, bypassing Measure::potential entirely
double potential_oracle(const Measure& m, double x, int n = 200001) {
  double s = 0.0;
  for (const Atom& a : m.atoms()) s += a.mass * std::abs(x - a.pos);
  for (const Panel& p : m.panels()) {
    const double h = (p.right - p.left) / (n - 1);
    auto dens = [&](double y) { return m.density_at(y); };
    double acc = 0.0;
    for (int k = 0; k + 1 < n; k += 2) {
      const double y0 = p.left + h * k, y1 = y0 + h, y2 = y0 + 2 * h;
      acc += h / 3.0 *
             (std::abs(x - y0) * dens(y0) + 4.0 * std::abs(x - y1) * dens(y1) +
              std::abs(x - y2) * dens(y2));
    }
    s += acc;
  }
  return -s;
}

}  // namespace

TEST_CASE("potential closed forms") {
  const Measure delta0 = Measure::point_mass_at_zero();
  CHECK(delta0.potential(2.0) == -2.0);

  const Measure two = make_two_point(-1.0, 1.0);
  CHECK(two.potential(0.0) == -1.0);

  const Measure uni = make_uniform();
  CHECK(uni.potential(0.0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(uni.potential(0.0) == doctest::Approx(potential_oracle(uni, 0.0)).epsilon(1e-9));

  // mean-zero tail identity is exact outside the support
  CHECK(uni.potential(3.0) == -3.0);
  CHECK(two.potential(-2.5) == -2.5);
  CHECK(make_three_point(0.9, 0.35).potential(3.0) == -3.0);
}

TEST_CASE("potential agrees with the quadrature oracle on curved densities") {
  const Measure sq = make_sqrt_abs(801);
  const Measure ab = make_abs(801);
  for (double x : {-0.73, -0.2, 0.0, 0.31, 0.9, 0.999}) {
    CHECK(sq.potential(x) == doctest::Approx(potential_oracle(sq, x)).epsilon(1e-8));
    CHECK(ab.potential(x) == doctest::Approx(potential_oracle(ab, x)).epsilon(1e-8));
  }
}

TEST_CASE("builders satisfy mass and mean invariants") {
  // construction itself enforces both; spot-check the cached moments too
  const Measure uni = make_uniform();
  CHECK(uni.density_at(0.3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(uni.density_at(-0.99) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(uni.second_moment() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(uni.first_abs_moment() == doctest::Approx(0.5).epsilon(1e-6));

  const Measure g = make_gaussian_truncated(0.5, 6.0);
  CHECK(g.second_moment() == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(g.support_hi() == doctest::Approx(3.0));

  const Measure tp = make_three_point(0.9, 0.35);
  REQUIRE(tp.atoms().size() == 3);
  CHECK(tp.atoms()[0].pos == -0.9);
  CHECK(tp.atoms()[0].mass == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(tp.atoms()[1].pos == 0.0);
  CHECK(tp.atoms()[1].mass == doctest::Approx(0.30).epsilon(1e-12));
  CHECK(tp.atoms()[2].mass == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(tp.second_moment() == doctest::Approx(2 * 0.35 * 0.81).epsilon(1e-12));

  const Measure two = make_two_point(-1.0, 1.0);
  CHECK(two.atoms()[0].mass == 0.5);
  CHECK(two.atoms()[1].mass == 0.5);

  const Measure skew = make_two_point(-0.5, 2.0);
  CHECK(skew.atoms()[0].mass == doctest::Approx(0.8));
  CHECK(skew.atoms()[1].mass == doctest::Approx(0.2));
}

TEST_CASE("builder rejections") {
  CHECK_THROWS_AS(make_two_point(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_two_point(-1.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_three_point(0.9, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_three_point(0.9, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(make_three_point(-0.9, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(make_gaussian_truncated(0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_gaussian_truncated(-1.0), std::invalid_argument);
  // three_point(a, 1/2) is the two-atom edge case
  CHECK(make_three_point(1.0, 0.5).atoms().size() == 2);
}

TEST_CASE("measure constructor rejects invalid data") {
  CHECK_THROWS_AS(Measure({{0.0, 0.5}}, {}, 0.0, 0.0), std::invalid_argument);  // mass != 1
  CHECK_THROWS_AS(Measure({{1.0, 1.0}}, {}, -1.0, 1.0), std::invalid_argument);  // mean != 0
  CHECK_THROWS_AS(Measure({{2.0, 1.0}}, {}, -1.0, 1.0), std::invalid_argument);  // outside support
  CHECK_THROWS_AS(Measure({{0.5, 0.5}, {-0.5, 0.5}}, {}, -1.0, 1.0),
                  std::invalid_argument);  // atoms unsorted
  CHECK_THROWS_AS(Measure({}, {{-1.0, 1.0, {0.5, -0.5, 0.5}}}, -1.0, 1.0),
                  std::invalid_argument);  // negative density
}

TEST_CASE("scale_measure examples") {
  const Measure two = make_two_point(-1.0, 1.0);

  SUBCASE("lambda = 1 is the identity") {
    const Measure s = two.scaled(1.0);
    CHECK(s.atoms()[0].pos == -1.0);
    CHECK(s.atoms()[1].pos == 1.0);
    CHECK(s.atoms()[0].mass == 0.5);
  }
  SUBCASE("two-point scales to half positions at lambda = 0.25") {
    const Measure s = two.scaled(0.25);
    CHECK(s.atoms()[0].pos == -0.5);
    CHECK(s.atoms()[1].pos == 0.5);
    CHECK(s.atoms()[0].mass == 0.5);
    CHECK(s.atoms()[1].mass == 0.5);
  }
  SUBCASE("uniform at lambda = 4 has density 1/4 on [-2, 2]") {
    const Measure s = make_uniform(101).scaled(4.0);
    CHECK(s.support_lo() == -2.0);
    CHECK(s.support_hi() == 2.0);
    CHECK(s.density_at(0.3) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("lambda = 0 collapses to the point mass") {
    const Measure s = two.scaled(0.0);
    REQUIRE(s.atoms().size() == 1);
    CHECK(s.atoms()[0].pos == 0.0);
    CHECK(s.atoms()[0].mass == 1.0);
  }
  SUBCASE("negative lambda rejected") {
    CHECK_THROWS_AS(two.scaled(-0.5), std::invalid_argument);
  }
}

TEST_CASE("potential properties: concavity, tail, scaling law") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> ux(-1.6, 1.6);
  std::uniform_real_distribution<double> ul(0.1, 4.0);

  const Measure measures[] = {make_uniform(201), make_sqrt_abs(201),
                              make_three_point(0.9, 0.25)};
  for (const Measure& m : measures) {
    for (int rep = 0; rep < 200; ++rep) {
      double x1 = ux(gen), x2 = ux(gen), x3 = ux(gen);
      if (x1 > x2) std::swap(x1, x2);
      if (x2 > x3) std::swap(x2, x3);
      if (x1 > x2) std::swap(x1, x2);
      if (x3 - x1 < 1e-9) continue;
      const double w = (x2 - x1) / (x3 - x1);
      const double chord = (1.0 - w) * m.potential(x1) + w * m.potential(x3);
      CHECK(m.potential(x2) >= chord - 1e-12);
    }
    // v_{mu_lambda}(x) = sqrt(lambda) v_mu(x / sqrt(lambda))
    for (int rep = 0; rep < 100; ++rep) {
      const double lambda = ul(gen);
      const double x = ux(gen);
      const Measure s = m.scaled(lambda);
      const double root = std::sqrt(lambda);
      CHECK(s.potential(x) ==
            doctest::Approx(root * m.potential(x / root)).epsilon(1e-12));
    }
    // tail identity beyond the support, exact
    CHECK(m.potential(m.support_hi() + 0.7) == -(m.support_hi() + 0.7));
    CHECK(m.potential(m.support_lo() - 1.3) == std::abs(m.support_lo() - 1.3) * -1.0);
  }
}

TEST_CASE("text round trip is value-exact") {
  const Measure m = Measure({{-0.7, 0.1}, {0.7, 0.1}},
                            {{-0.3, 0.3, {4.0 / 3.0, 4.0 / 3.0}}}, -0.7, 0.7);
  const std::string doc = m.to_text();
  const Measure back = Measure::from_text(doc);
  REQUIRE(back.atoms().size() == 2);
  CHECK(back.atoms()[0].pos == -0.7);
  CHECK(back.atoms()[0].mass == 0.1);
  CHECK(back.atoms()[1].pos == 0.7);
  CHECK(back.atoms()[1].mass == 0.1);
  REQUIRE(back.panels().size() == 1);
  CHECK(back.panels()[0].left == -0.3);
  CHECK(back.panels()[0].right == 0.3);
  CHECK(back.panels()[0].values[0] == 4.0 / 3.0);
  CHECK(back.panels()[0].values[1] == 4.0 / 3.0);
  CHECK(back.to_text() == doc);

  // decimal literals that are not dyadic still round-trip exactly
  const Measure u = make_sqrt_abs(51);
  CHECK(Measure::from_text(u.to_text()).to_text() == u.to_text());
}

TEST_CASE("symmetry detector") {
  CHECK(make_uniform(101).is_symmetric());
  CHECK(make_abs(101).is_symmetric());
  CHECK(make_three_point(0.9, 0.35).is_symmetric());
  CHECK_FALSE(make_two_point(-0.5, 2.0).is_symmetric());
}
