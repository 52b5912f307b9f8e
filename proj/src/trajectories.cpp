#include "mirrorflux/trajectories.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace mirrorflux {

namespace {

// Parameter interval on which an increasing map m stays inside target.
Interval preimage(const ChartMap& m, const Interval& target) {
  const Interval r = m.range();
  Interval out = m.domain();
  if (target.lo >= r.hi || target.hi <= r.lo) return {0.0, 0.0};
  if (target.lo > r.lo) out.lo = m.inverse(target.lo);
  if (target.hi < r.hi) out.hi = m.inverse(target.hi);
  return out;
}

// m restricted to sub, with range clamped to clamp (guards against rounding at
// clipped endpoints).
ChartMap clip(const ChartMap& m, const Interval& sub, const Interval& clamp) {
  const ChartMap base = m;
  const Interval d = intersect(m.domain(), sub);
  ChartMap::Inverse inv;
  if (m.has_closed_inverse()) inv = [base](double y) { return base.inverse(y); };
  return ChartMap(
      m.name(), d, intersect(image(m, d), clamp), [base](const Jet4& x) { return base(x); },
      std::move(inv));
}

}  // namespace

Trajectory stationary_mirror(double z0) {
  if (!(z0 > 0.0)) throw ConfigError("stationary mirror requires z0 > 0");
  Trajectory traj{"stationary:z0=" + std::to_string(z0), "minkowski", affine_map(1.0, -z0, "U"),
                  affine_map(1.0, z0, "V"), {}};

  traj.closed_reflection.emplace("minkowski", affine_map(1.0, 2.0 * z0, "p"));

  // In the Rindler chart: p(ubar) = log(2 - a e^{-ubar}) - log a on ubar > log(a/2).
  const double a = 1.0 / z0;
  const double log_a = std::log(a);
  ChartMap rindler_p(
      "p", {std::log(a / 2.0), kInf}, {-kInf, std::log(2.0 / a)},
      [a, log_a](const Jet4& ub) { return log(2.0 - a * exp(-ub)) - log_a; },
      [a](double uh) { return -std::log(2.0 / a - std::exp(uh)); });
  traj.closed_reflection.emplace("rindler", std::move(rindler_p));
  return traj;
}

Trajectory uniformly_accelerated_mirror(double a) {
  if (!(a > 0.0)) throw ConfigError("uniformly accelerated mirror requires a > 0");
  const double r2 = 1.0 / (a * a);
  // U = t - sqrt(t^2 + r2) solves to t = (U^2 - r2) / (2U); V likewise.
  ChartMap U(
      "U", Interval::all(), {-kInf, 0.0}, [r2](const Jet4& t) { return t - sqrt(t * t + r2); },
      [r2](double u) { return (u * u - r2) / (2.0 * u); });
  ChartMap V(
      "V", Interval::all(), {0.0, kInf}, [r2](const Jet4& t) { return t + sqrt(t * t + r2); },
      [r2](double v) { return (v * v - r2) / (2.0 * v); });
  Trajectory traj{"hyperbola:a=" + std::to_string(a), "minkowski", std::move(U), std::move(V), {}};

  // v = p(u) = -1/(a^2 u): a Moebius map.
  traj.closed_reflection.emplace(
      "minkowski", ChartMap(
                       "p", {-kInf, 0.0}, {0.0, kInf},
                       [r2](const Jet4& u) { return -r2 / u; }, [r2](double v) { return -r2 / v; }));
  // rho = 1/a: vbar - ubar = -2 log a.
  traj.closed_reflection.emplace("rindler", affine_map(1.0, -2.0 * std::log(a), "p"));
  return traj;
}

Trajectory to_chart(const Trajectory& traj, const ConformalChart& chart) {
  if (traj.chart != "minkowski") {
    throw ConfigError("to_chart expects an inertial-chart trajectory, got " + traj.chart);
  }
  if (chart.name == "minkowski") return traj;
  const Interval lam =
      intersect(preimage(traj.U, chart.u_map.range()), preimage(traj.V, chart.v_map.range()));
  if (lam.empty()) {
    throw CoverageError(traj.label + " never enters the coverage of chart " + chart.name);
  }
  const ChartMap u_clip = clip(traj.U, lam, chart.u_map.range());
  const ChartMap v_clip = clip(traj.V, lam, chart.v_map.range());
  Trajectory out{traj.label, chart.name,
                 compose_maps(inverse_map(chart.u_map), u_clip, "U"),
                 compose_maps(inverse_map(chart.v_map), v_clip, "V"), traj.closed_reflection};
  return out;
}

Asymptotes asymptotes(const Trajectory& traj) {
  const Interval dom = traj.parameter_domain();

  auto probe_end = [&](bool upper) -> std::optional<NullAsymptote> {
    const double end = upper ? dom.hi : dom.lo;
    std::vector<double> c1, c2;
    for (int k = 1; k <= 10; ++k) {
      double lam;
      if (std::isfinite(end)) {
        lam = upper ? end - std::pow(10.0, -k) : end + std::pow(10.0, -k);
      } else {
        lam = upper ? std::pow(10.0, k) : -std::pow(10.0, k);
      }
      if (!dom.contains(lam)) continue;
      try {
        const double x = traj.U(lam);
        const double y = traj.V(lam);
        c1.push_back(x);
        c2.push_back(y);
      } catch (const Error&) {
      }
    }
    if (c1.size() < 3) return std::nullopt;
    auto converges = [](const std::vector<double>& c) {
      const std::size_t n = c.size();
      return std::abs(c[n - 1] - c[n - 2]) < 1e-8;
    };
    auto diverges = [](const std::vector<double>& c) {
      const std::size_t n = c.size();
      const double last = std::abs(c[n - 1] - c[n - 2]);
      const double prev = std::abs(c[n - 2] - c[n - 3]);
      return last > 1e-6 && last >= 0.5 * prev;
    };
    if (converges(c1) && diverges(c2)) return NullAsymptote{1, c1.back()};
    if (converges(c2) && diverges(c1)) return NullAsymptote{2, c2.back()};
    return std::nullopt;
  };

  return {probe_end(false), probe_end(true)};
}

ReflectionMap reflection_map(const Trajectory& traj, bool prefer_closed_form) {
  if (traj.U.monotone_sign() <= 0 || traj.V.monotone_sign() <= 0) {
    throw MonotonicityError(traj.label + ": null coordinates must increase along the worldline");
  }
  const Interval valid = traj.U.range();
  if (prefer_closed_form) {
    if (auto it = traj.closed_reflection.find(traj.chart); it != traj.closed_reflection.end()) {
      const ChartMap& p = it->second;
      std::optional<ChartMap> base_p;
      if (traj.chart != "minkowski") {
        if (auto b = traj.closed_reflection.find("minkowski"); b != traj.closed_reflection.end()) {
          base_p = b->second;
        }
      }
      // The closed form's domain and the worldline's range are computed
      // separately; endpoints a few ulps apart are the same ray.
      auto close = [](double x, double y) {
        return x == y || std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x));
      };
      const Interval d = p.domain();
      if ((d.lo <= valid.lo || close(d.lo, valid.lo)) && (d.hi >= valid.hi || close(d.hi, valid.hi))) {
        return {p, identity_map(), valid, base_p};
      }
      return {restrict_map(p, valid), identity_map(), valid, base_p};
    }
  }
  ChartMap p = compose_maps(traj.V, inverse_map(traj.U), "p");
  return {std::move(p), identity_map(), valid, std::nullopt};
}

ConformalChart hatted_chart(const ConformalChart& outer, const ReflectionMap& reflection,
                            std::string name) {
  const ChartMap f = inverse_map(reflection.p, "f");
  ConformalChart c = compose_charts(outer, f, reflection.q, std::move(name), ChartClass::half_line);
  if (reflection.base_p) {
    c.u_map = restrict_map(compose_maps(inverse_map(*reflection.base_p), outer.v_map),
                           reflection.p.range());
  }
  return c;
}

}  // namespace mirrorflux
