#include <cmath>
#include <functional>

#include "doctest.h"
#include "gen.hpp"
#include "mirrorflux/errors.hpp"
#include "mirrorflux/jets.hpp"

using namespace mirrorflux;
using testgen::for_all;
using testgen::Gen;

namespace {

void check_jet(const Jet3& j, double d0, double d1, double d2, double d3, double tol = 1e-15) {
  CHECK(j[0] == doctest::Approx(d0).epsilon(tol));
  CHECK(j[1] == doctest::Approx(d1).epsilon(tol));
  CHECK(j[2] == doctest::Approx(d2).epsilon(tol));
  CHECK(j[3] == doctest::Approx(d3).epsilon(tol));
}

// Richardson-extrapolated central difference of g at x.
double richardson(const std::function<double(double)>& g, double x, double h) {
  auto d = [&](double s) { return (g(x + s) - g(x - s)) / (2.0 * s); };
  return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

// Each derivative of the jet against the finite-difference derivative of the
// order below it.
void check_against_fd(const std::function<Jet3(const Jet3&)>& f, double x, double h) {
  const Jet3 j = f(seed(x));
  for (int k = 0; k < 3; ++k) {
    const double fd = richardson([&](double y) { return f(seed(y))[k]; }, x, h);
    const double scale = std::max(1.0, std::abs(j[k + 1]));
    INFO("x = " << x << ", order " << k + 1);
    CHECK(std::abs(j[k + 1] - fd) / scale < 1e-8);
  }
}

}  // namespace

TEST_SUITE("jets") {
  TEST_CASE("seed") {
    check_jet(seed(0.0), 0, 1, 0, 0);
    check_jet(seed(2.5), 2.5, 1, 0, 0);
    const Jet3 id = compose(std::array<double, 4>{2.5, 1.0, 0.0, 0.0}, seed(2.5));
    check_jet(id, 2.5, 1, 0, 0);
  }

  TEST_CASE("arithmetic") {
    check_jet(seed(1.0) * seed(1.0), 1, 2, 2, 0);
    const Jet3 a = sinh(seed(0.4)) + 3.0;
    check_jet(a / a, 1, 0, 0, 0, 1e-15);
    CHECK_THROWS_AS(seed(1.0) / (seed(1.0) - 1.0), DomainError);
    CHECK_THROWS_AS(seed(1.0) / 0.0, DomainError);
  }

  TEST_CASE("random polynomials match their expansion") {
    for_all(200, 11, [](Gen& g, int) {
      double c[4];
      for (double& ci : c) ci = g.uniform(-2.0, 2.0);
      const double x = g.uniform(-3.0, 3.0);
      const Jet3 t = seed(x);
      const Jet3 p = c[0] + c[1] * t + c[2] * t * t + c[3] * t * t * t;
      const double ref[4] = {c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x,
                             c[1] + 2 * c[2] * x + 3 * c[3] * x * x, 2 * c[2] + 6 * c[3] * x,
                             6 * c[3]};
      for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(p[k] - ref[k]) <= 1e-12 * std::max(1.0, std::abs(ref[k])));
      }
    });
  }

  TEST_CASE("elementary functions at exact points") {
    check_jet(exp(seed(0.0)), 1, 1, 1, 1);
    check_jet(log(seed(1.0)), 0, 1, -1, 2);
    check_jet(sqrt(seed(4.0)), 2, 0.25, -1.0 / 32.0, 3.0 / 256.0, 1e-15);
  }

  TEST_CASE("domain errors name the function") {
    CHECK_THROWS_AS(log(seed(0.0)), DomainError);
    CHECK_THROWS_AS(sqrt(seed(-1.0)), DomainError);
    CHECK_THROWS_AS(atanh(seed(1.0)), DomainError);
    CHECK_THROWS_AS(pow(seed(-2.0), 1.5), DomainError);
    try {
      (void)log(seed(-3.0));
      FAIL("expected a domain error");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("log") != std::string::npos);
    }
  }

  TEST_CASE("composite expressions against symbolic differentiation") {
    // sinh(x) log(1+x^2) / (2 + cosh x) + sqrt(x) atanh(x/2) + x^(5/2) at 0.7
    const Jet3 x = seed(0.7);
    const Jet3 g = sinh(x) * log(1.0 + x * x) / (2.0 + cosh(x)) + sqrt(x) * atanh(x / 2.0) +
                   pow(x, 2.5);
    check_jet(g, 0.80864627294111318006, 2.5103508964244002993, 4.5778102960366016847,
              2.5887140698912104783, 1e-12);
    // tanh(e^x - 1) (1+x)^(-3/2) at 0.3
    const Jet3 y = seed(0.3);
    const Jet3 h = tanh(exp(y) - 1.0) * pow(1.0 + y, -1.5);
    check_jet(h, 0.22685464701700920052, 0.54597324152946495752, -1.2861253973907786363,
              0.42669085679967575078, 1e-12);
  }

  TEST_CASE("elementary functions against finite differences") {
    using F = std::function<Jet3(const Jet3&)>;
    const std::pair<F, std::pair<double, double>> cases[] = {
        {[](const Jet3& t) { return exp(t); }, {-3.0, 3.0}},
        {[](const Jet3& t) { return log(t); }, {0.2, 5.0}},
        {[](const Jet3& t) { return sinh(t); }, {-3.0, 3.0}},
        {[](const Jet3& t) { return cosh(t); }, {-3.0, 3.0}},
        {[](const Jet3& t) { return tanh(t); }, {-3.0, 3.0}},
        {[](const Jet3& t) { return atanh(t); }, {-0.8, 0.8}},
        {[](const Jet3& t) { return sqrt(t); }, {0.2, 5.0}},
        {[](const Jet3& t) { return pow(t, -0.7); }, {0.2, 5.0}},
        {[](const Jet3& t) { return exp(sinh(t) / (1.0 + t * t)); }, {-2.0, 2.0}},
    };
    int seed_no = 100;
    for (const auto& [f, range] : cases) {
      for_all(25, seed_no++, [&](Gen& g, int) {
        check_against_fd(f, g.uniform(range.first, range.second), 1e-3);
      });
    }
  }

  TEST_CASE("compose") {
    const Jet3 j = sinh(seed(0.3)) * 2.0;
    const Jet3 id = compose(std::array<double, 4>{j[0], 1.0, 0.0, 0.0}, j);
    for (int k = 0; k < 4; ++k) CHECK(id[k] == j[k]);

    const double x = 0.8;
    const double e = std::exp(x);
    const Jet3 via_tower = compose(std::array<double, 4>{e, e, e, e}, seed(x));
    const Jet3 direct = exp(seed(x));
    for (int k = 0; k < 4; ++k) CHECK(via_tower[k] == doctest::Approx(direct[k]).epsilon(1e-15));

    for_all(50, 7, [](Gen& g, int) {
      const double y = g.uniform(0.1, 10.0);
      const Jet3 r = exp(log(seed(y)));
      CHECK(std::abs(r[0] - y) <= 1e-12 * y);
      CHECK(std::abs(r[1] - 1.0) <= 1e-12);
      CHECK(std::abs(r[2]) <= 1e-12);
      CHECK(std::abs(r[3]) <= 1e-12);
    });
  }

  TEST_CASE("compose is associative") {
    // f = exp, g = sinh, h = log(x) + x^2 as an inner jet.
    for_all(100, 21, [](Gen& g, int) {
      const double x = g.uniform(0.3, 2.0);
      const Jet3 h = log(seed(x)) + seed(x) * seed(x);
      const auto tower_of = [](const Jet3& j) { return j.derivatives(); };
      const Jet3 gh = compose(tower_of(sinh(seed(h[0]))), h);
      const Jet3 left = compose(tower_of(exp(seed(gh[0]))), gh);
      const Jet3 fg = exp(sinh(seed(h[0])));
      const Jet3 right = compose(tower_of(fg), h);
      for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(left[k] - right[k]) <= 1e-12 * std::max(1.0, std::abs(right[k])));
      }
    });
  }

  TEST_CASE("tower inversion") {
    for_all(50, 31, [](Gen& g, int) {
      const double x = g.uniform(-1.0, 1.0);
      const Jet4 fwd = sinh(Jet4::seed(x)) + 2.0 * Jet4::seed(x);
      const Jet4 inv = invert_tower(fwd, x);
      const Jet4 round = compose(inv.derivatives(), fwd);  // f^{-1}(f(t)) = t
      CHECK(round[0] == doctest::Approx(x));
      CHECK(round[1] == doctest::Approx(1.0).epsilon(1e-13));
      for (int k = 2; k <= 4; ++k) CHECK(std::abs(round[k]) < 1e-11);
    });
  }

  TEST_CASE("mixed jets") {
    // f(u, v) = exp(u) * v^2: d_u^i d_v^j f at (0.2, 1.5).
    const BiJet u = embed_u(seed(0.2));
    const BiJet v = embed_v(seed(1.5));
    const BiJet f = exp(u) * v * v;
    const double e = std::exp(0.2);
    CHECK(f[0][0] == doctest::Approx(e * 2.25));
    CHECK(f[1][1] == doctest::Approx(e * 3.0));
    CHECK(f[3][2] == doctest::Approx(e * 2.0));
    CHECK(f[2][3] == doctest::Approx(0.0));
    const BiJet t = transpose(f);
    CHECK(t[2][1] == doctest::Approx(f[1][2]));
  }
}
