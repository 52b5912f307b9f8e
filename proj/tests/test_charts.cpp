#include <cmath>

#include "doctest.h"
#include "gen.hpp"
#include "mirrorflux/charts.hpp"
#include "mirrorflux/errors.hpp"

using namespace mirrorflux;
using testgen::for_all;
using testgen::Gen;

namespace {

// p(ubar) = log(2 - e^{-ubar}), a = 1, without a registered inverse.
ChartMap mirror_p_numeric() {
  return ChartMap("p", {std::log(0.5), kInf}, {-kInf, std::log(2.0)},
                  [](const Jet4& x) { return log(2.0 - exp(-x)); });
}

// Bisection in long double, the oracle for invert_map.
long double bisect(const std::function<long double(long double)>& f, long double target,
                   long double lo, long double hi) {
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

}  // namespace

TEST_SUITE("charts") {
  TEST_CASE("conformal factor of the inertial and Rindler charts") {
    const BiJet m = conformal_factor(minkowski_chart(), 0.3, -2.0);
    CHECK(m[0][0] == 1.0);
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j)
        if (i + j > 0) CHECK(m[i][j] == 0.0);

    const ConformalChart r = rindler_chart();
    CHECK(conformal_factor(r, 0.0, 0.0)[0][0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(conformal_factor(r, 1.0, 0.0)[0][0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    const BiJet c = conformal_factor(r, 0.4, -0.7);
    CHECK(c[1][0] == doctest::Approx(-c[0][0]).epsilon(1e-14));
    CHECK(c[0][1] == doctest::Approx(c[0][0]).epsilon(1e-14));
    CHECK(c[1][1] == doctest::Approx(-c[0][0]).epsilon(1e-14));
  }

  TEST_CASE("conformal factor is positive on sampled grids") {
    const ConformalChart charts[] = {minkowski_chart(), rindler_chart()};
    for (const ConformalChart& c : charts) {
      for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
          const double c1 = -5.0 + 10.0 * i / 99.0;
          const double c2 = -5.0 + 10.0 * j / 99.0;
          CHECK_MESSAGE(conformal_factor(c, c1, c2)[0][0] > 0.0, c.name);
        }
    }
  }

  TEST_CASE("Ricci scalar") {
    CHECK(ricci_scalar(minkowski_chart(), 0.1, 0.2) == 0.0);
    for_all(200, 3, [](Gen& g, int) {
      const double u = g.uniform(-5, 5), v = g.uniform(-5, 5);
      CHECK(std::abs(ricci_scalar(rindler_chart(), u, v)) < 1e-10);
      // relabeled charts stay flat
      const ConformalChart s =
          compose_charts(rindler_chart(), ChartMap("sinh", Interval::all(), Interval::all(),
                                                   [](const Jet4& x) { return sinh(x) + x; }),
                         identity_map(), "sinh_rindler", ChartClass::full_plane);
      CHECK(std::abs(ricci_scalar(s, u / 3.0, v)) < 1e-10);
    });
    // C = (u+v)^2 against the symbolic 4/C^3 (C C_uv - C_u C_v)
    const ConformalChart curved = curved_test_chart();
    CHECK(ricci_scalar(curved, 0.3, 0.9) == doctest::Approx(-3.8580246913580246914).epsilon(1e-10));
    CHECK(ricci_scalar(curved, 1.5, 2.0) ==
          doctest::Approx(-0.053311120366513952520).epsilon(1e-10));
    CHECK_THROWS_AS(ricci_scalar(curved, -1.0, 0.5), CoverageError);
  }

  TEST_CASE("metric components") {
    const MetricComponents m = metric_components(rindler_chart(), 0.5, 1.5);
    const double c = std::exp(1.0);
    CHECK(m.g_uv == doctest::Approx(c / 2.0));
    CHECK(m.g_inv_uv == doctest::Approx(2.0 / c));
    CHECK(m.g_uv * m.g_inv_uv == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("Rindler chart maps") {
    const ConformalChart r = rindler_chart();
    CHECK(r.u_map(0.0) == -1.0);
    CHECK(r.v_map(0.0) == 1.0);
    for_all(200, 5, [&](Gen& g, int) {
      const double ub = g.uniform(-20, 20);
      CHECK(std::abs(r.u_map.inverse(r.u_map(ub)) - ub) <= 1e-12 * std::max(1.0, std::abs(ub)));
    });
  }

  TEST_CASE("point conversion") {
    const ConformalChart m = minkowski_chart(), r = rindler_chart();
    const RindlerCoords a = rindler_coords(convert_point(inertial_point(0.0, 1.0), m, r));
    CHECK(a.tau == doctest::Approx(0.0));
    CHECK(a.rho == doctest::Approx(1.0));
    const RindlerCoords b = rindler_coords(convert_point(inertial_point(0.0, 0.5), m, r));
    CHECK(b.rho == doctest::Approx(0.5));
    CHECK(b.tau == doctest::Approx(0.0));
    CHECK_THROWS_AS(convert_point(inertial_point(1.0, 1.0), m, r), CoverageError);
    CHECK_THROWS_AS(convert_point(inertial_point(2.0, 1.0), m, r), CoverageError);

    // tau = atanh(t/z), rho = sqrt(z^2 - t^2)
    for_all(300, 9, [&](Gen& g, int) {
      const double z = g.uniform(0.01, 10.0);
      const double t = g.uniform(-0.99, 0.99) * z;
      const RindlerCoords rc = rindler_coords(convert_point(inertial_point(t, z), m, r));
      CHECK(rc.tau == doctest::Approx(std::atanh(t / z)).epsilon(1e-12));
      CHECK(rc.rho == doctest::Approx(std::sqrt(z * z - t * t)).epsilon(1e-12));
      const Point rp{g.uniform(-5, 5), g.uniform(-5, 5), "rindler"};
      const Point back = from_base(to_base(rp, r), r);
      CHECK(testgen::rel_err(back.c1, rp.c1) < 1e-12);
      CHECK(testgen::rel_err(back.c2, rp.c2) < 1e-12);
    });
  }

  TEST_CASE("invert_map") {
    const ConformalChart r = rindler_chart();
    CHECK(invert_map(r.u_map, -1.0, {-5, 5}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(invert_map(mirror_p_numeric(), 0.0, {std::log(0.5) + 1e-9, 10.0})) < 1e-12);
    CHECK(std::abs(mirror_p_numeric().inverse(0.0)) < 1e-12);

    const ChartMap cubic("cubic", Interval::all(), Interval::all(),
                         [](const Jet4& x) { return x * x * x + 0.5 * x; });
    for_all(100, 13, [&](Gen& g, int) {
      const double y = g.uniform(-50, 50);
      const long double ref = bisect([](long double x) { return x * x * x + 0.5L * x; }, y, -10, 10);
      const double x = invert_map(cubic, y, {-10, 10});
      CHECK(std::abs(x - static_cast<double>(ref)) <= 1e-12 * std::max(1.0, std::abs(y)));
    });
    CHECK_THROWS_AS(invert_map(cubic, 2000.0, {-10, 10}), NoRootError);
    const ChartMap bump("bump", Interval::all(), Interval::all(),
                        [](const Jet4& x) { return x * x * x - 3.0 * x; });
    CHECK_THROWS_AS(invert_map(bump, 0.5, {-3, 3}), MonotonicityError);
  }

  TEST_CASE("composition of charts") {
    const ConformalChart r = rindler_chart();
    const ConformalChart same = compose_charts(r, identity_map(), identity_map(), "same",
                                               ChartClass::full_plane);
    for_all(50, 17, [&](Gen& g, int) {
      const double c1 = g.uniform(-3, 3), c2 = g.uniform(-3, 3);
      CHECK(conformal_factor(same, c1, c2)[0][0] == doctest::Approx(conformal_factor(r, c1, c2)[0][0]));
    });

    // C*(x, y) = f'(x) g'(y) C(f(x), g(y)) with f = sinh, g = 2y + 1.
    const ChartMap f("sinh", Interval::all(), Interval::all(), [](const Jet4& x) { return sinh(x); });
    const ChartMap g = affine_map(2.0, 1.0);
    const ConformalChart c = compose_charts(r, f, g, "composed", ChartClass::full_plane);
    for_all(50, 19, [&](Gen& gen, int) {
      const double x = gen.uniform(-2, 2), y = gen.uniform(-2, 2);
      const double direct = std::cosh(x) * 2.0 * conformal_factor(r, std::sinh(x), 2 * y + 1)[0][0];
      CHECK(std::abs(conformal_factor(c, x, y)[0][0] - direct) <= 1e-12 * direct);
    });
  }

  TEST_CASE("maps refuse points outside their domain") {
    const ChartMap p = mirror_p_numeric();
    CHECK_THROWS_AS(p.tower(std::log(0.5) - 0.1), CoverageError);
    CHECK_THROWS_AS(p.inverse(1.0), CoverageError);
  }
}
