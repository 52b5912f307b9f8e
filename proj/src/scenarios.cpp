#include "mirrorflux/scenarios.hpp"

#include <cmath>
#include <sstream>

namespace mirrorflux {

namespace {

constexpr double k48 = 1.0 / (48.0 * kPi);

StressSample sample(double tuu, double tvv, double tuv, const Scenario& s, const Point& p) {
  StressSample out{tuu, tvv, tuv, p.chart, s.state.label, p};
  return out;
}

void require_wedge(const Scenario& s, const Point& base) {
  if (!(base.c1 < 0.0 && base.c2 > 0.0)) {
    std::ostringstream os;
    os << s.name << ": point (u, v) = (" << base.c1 << ", " << base.c2
       << ") is outside the right Rindler wedge";
    throw CoverageError(os.str());
  }
}

[[noreturn]] void no_oracle(const Scenario& s, const std::string& chart) {
  throw OracleUnavailableError("no closed form registered for scenario " + s.name + " in chart " +
                               chart);
}

}  // namespace

const ConformalChart& Scenario::chart(const std::string& n) const {
  std::string key = n;
  if (n.rfind("hatted:", 0) == 0) {
    if (n.substr(7) != name) {
      throw ConfigError("chart " + n + " does not belong to scenario " + name);
    }
    key = "hatted";
  }
  auto it = charts.find(key);
  if (it == charts.end()) throw ConfigError("scenario " + name + " has no chart named " + n);
  return it->second;
}

const std::vector<ScenarioInfo>& list_scenarios() {
  static const std::vector<ScenarioInfo> infos = {
      {"rindler_vacuum", "Rindler vacuum in the right wedge", "rindler",
       {{"a", "unused: the Rindler chart is fixed", 1.0, false}}},
      {"mirror_in_rindler_vacuum",
       "stationary mirror at z = 1/a in a field initially in the Rindler vacuum", "rindler",
       {{"a", "inverse mirror position; the mirror sits at rho = 1/a", 1.0, true}}},
      {"accelerated_mirror_minkowski",
       "mirror on the hyperbola z^2 - t^2 = 1/a^2 in the Minkowski vacuum", "minkowski",
       {{"a", "proper acceleration of the mirror", 1.0, true}}},
      {"minkowski_vacuum_rindler_observer", "Minkowski vacuum seen from the Rindler chart",
       "rindler", {{"a", "unused: the Rindler chart is fixed", 1.0, false}}},
  };
  return infos;
}

Scenario build_scenario(const std::string& name, const ScenarioParams& params) {
  if (!(params.a > 0.0) || !std::isfinite(params.a)) {
    throw ConfigError("parameter a must be positive and finite");
  }
  const ConformalChart mink = minkowski_chart();
  const ConformalChart rind = rindler_chart();
  std::map<std::string, ConformalChart> charts{{"minkowski", mink}, {"rindler", rind}};

  // Rindler-vacuum right-movers diverge on the horizons u = 0 and v = 0.
  const std::vector<NullAsymptote> horizons{{1, 0.0}, {2, 0.0}};

  auto make = [&](VacuumSpec state, std::string observe, std::optional<Trajectory> traj,
                  std::vector<NullAsymptote> rays) {
    return Scenario{name,   std::move(state), std::move(observe), std::move(traj),
                    params, charts,           std::move(rays)};
  };
  if (name == "rindler_vacuum") {
    return make(chart_vacuum(rind, "rindler_vacuum"), "rindler", std::nullopt, horizons);
  }
  if (name == "mirror_in_rindler_vacuum") {
    const Trajectory traj = stationary_mirror(1.0 / params.a);
    const ConformalChart hat = hatted_chart(rind, reflection_map(to_chart(traj, rind)), "hatted");
    charts.emplace("hatted", hat);
    // The ray u = -2/a separates reflected from unreflected right-movers.
    std::vector<NullAsymptote> rays = horizons;
    rays.push_back({1, -2.0 / params.a});
    return make(mirror_vacuum(hat, rind, name), "rindler", traj, rays);
  }
  if (name == "accelerated_mirror_minkowski") {
    const Trajectory traj = uniformly_accelerated_mirror(params.a);
    const ConformalChart hat = hatted_chart(mink, reflection_map(traj), "hatted");
    charts.emplace("hatted", hat);
    return make(mirror_vacuum(hat, mink, name), "minkowski", traj, {});
  }
  if (name == "minkowski_vacuum_rindler_observer") {
    return make(chart_vacuum(mink, "minkowski_vacuum"), "rindler", std::nullopt, {});
  }
  std::string known;
  for (const auto& info : list_scenarios()) known += (known.empty() ? "" : ", ") + info.name;
  throw ConfigError("unknown scenario '" + name + "' (known: " + known + ")");
}

void require_physical_region(const Scenario& s, const Point& base) {
  if (!s.trajectory) return;
  const Trajectory& traj = *s.trajectory;
  bool right = false;
  if (traj.U.range().contains(base.c1)) {
    const double t = traj.U.inverse(base.c1);
    right = base.c2 > traj.V(t);
  }
  if (!right) {
    std::ostringstream os;
    os << s.name << ": point (u, v) = (" << base.c1 << ", " << base.c2
       << ") is not to the right of the mirror";
    throw CoverageError(os.str());
  }
}

bool near_singular_ray(const Scenario& s, const Point& p, double margin) {
  const ConformalChart& c = s.chart(p.chart);
  for (const NullAsymptote& ray : s.singular_rays) {
    const ChartMap& m = ray.coordinate == 1 ? c.u_map : c.v_map;
    const double x = ray.coordinate == 1 ? p.c1 : p.c2;
    if (!m.range().contains(ray.value)) continue;
    if (std::abs(x - m.inverse(ray.value)) < margin) return true;
  }
  return false;
}

StressSample evaluate(const Scenario& s, const Point& p) {
  const ConformalChart& c = s.chart(p.chart);
  const Point base = to_base(p, c);
  require_physical_region(s, base);
  return expectation_stress(s.state, c, p);
}

StressSample closed_form_reference(const Scenario& s, const Point& p) {
  const ConformalChart& c = s.chart(p.chart);
  const Point base = to_base(p, c);
  require_physical_region(s, base);
  const std::string& chart = c.name;
  const double a = s.params.a;
  const double u = base.c1;
  const double v = base.c2;

  if (s.name == "rindler_vacuum") {
    require_wedge(s, base);
    if (chart == "rindler") return sample(-k48, -k48, 0.0, s, p);
    if (chart == "minkowski") return sample(-k48 / (u * u), -k48 / (v * v), 0.0, s, p);
    no_oracle(s, p.chart);
  }
  if (s.name == "mirror_in_rindler_vacuum") {
    require_wedge(s, base);
    const bool reflected = u > -2.0 / a;
    if (chart == "hatted") return sample(-k48, -k48, 0.0, s, p);
    if (chart == "rindler") {
      const double ub = p.c1;
      double tuu = -k48;
      if (reflected) {
        const double e = std::exp(-ub);
        const double den = 2.0 - a * e;
        tuu = -k48 * a * a * e * e / (den * den);
      }
      return sample(tuu, -k48, 0.0, s, p);
    }
    if (chart == "minkowski") {
      const double tuu = reflected ? -k48 * a * a / ((2.0 + a * u) * (2.0 + a * u)) : -k48 / (u * u);
      return sample(tuu, -k48 / (v * v), 0.0, s, p);
    }
    no_oracle(s, p.chart);
  }
  if (s.name == "accelerated_mirror_minkowski" || s.name == "minkowski_vacuum_rindler_observer") {
    if (chart == "minkowski" || chart == "rindler" || chart == "hatted") {
      return sample(0.0, 0.0, 0.0, s, p);
    }
  }
  no_oracle(s, p.chart);
}

}  // namespace mirrorflux
