#include "mirrorflux/vacuum_stress.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace mirrorflux {

namespace {

constexpr double k24Pi = 24.0 * kPi;

template <class J>
J F_of(const J& f0, const J& f1, const J& f2) {
  const J r = f1 / f0;
  return f2 / f0 - 1.5 * (r * r);
}

// Chart whose vacuum governs the right-movers at base u.
const ConformalChart& sector_chart(const VacuumSpec& state, double base_u) {
  if (state.chart.u_map.range().contains(base_u)) return state.chart;
  if (state.unreflected && state.unreflected->u_map.range().contains(base_u)) {
    return *state.unreflected;
  }
  std::ostringstream os;
  os << state.label << ": base u = " << base_u << " outside the state's coverage";
  throw CoverageError(os.str());
}

void require_quantizable(const VacuumSpec& state, const ConformalChart& chart) {
  if (chart.global_class == ChartClass::unquantizable) {
    throw StateError(state.label + ": chart " + chart.name + " admits no Fock vacuum");
  }
}

void require_right_of_mirror(const VacuumSpec& state, const ConformalChart& chart,
                             const Point& p) {
  if (state.boundary == Boundary::dirichlet_half_line && chart.name == state.chart.name &&
      !(p.c2 > p.c1)) {
    std::ostringstream os;
    os << state.label << ": point (" << p.c1 << ", " << p.c2
       << ") is not to the right of the mirror";
    throw CoverageError(os.str());
  }
}

StressSample theta_in(const VacuumSpec& state, const ConformalChart& chart, const Point& p) {
  require_quantizable(state, chart);
  require_right_of_mirror(state, chart, p);
  const BiJet c = conformal_factor(chart, p.c1, p.c2);
  const BiJet l = log(c);
  StressSample s;
  s.T_uu = F_of(c[0][0], c[1][0], c[2][0]) / k24Pi;
  s.T_vv = F_of(c[0][0], c[0][1], c[0][2]) / k24Pi;
  s.T_uv = -l[1][1] / k24Pi;
  s.chart = chart.name;
  s.state = state.label;
  s.point = p;
  s.point.chart = chart.name;
  return s;
}

}  // namespace

VacuumSpec chart_vacuum(const ConformalChart& chart, std::string label) {
  if (label.empty()) label = chart.name + "_vacuum";
  const Boundary b = chart.global_class == ChartClass::half_line ? Boundary::dirichlet_half_line
                                                                 : Boundary::full_line;
  return {std::move(label), chart, b, std::nullopt};
}

VacuumSpec mirror_vacuum(const ConformalChart& hatted, const ConformalChart& unreflected,
                         std::string label) {
  if (hatted.global_class != ChartClass::half_line) {
    throw StateError("half-line vacuum requires a chart built from a reflection map, got " +
                     hatted.name);
  }
  return {std::move(label), hatted, Boundary::dirichlet_half_line, unreflected};
}

double F_functional(const Jet3& f) {
  if (f[0] == 0.0) throw SingularityError("F functional: f vanishes");
  return F_of(f[0], f[1], f[2]);
}

double schwarzian(const ChartMap& p, double x) {
  const Jet4 t = p.tower(x);
  if (t[1] == 0.0) {
    std::ostringstream os;
    os << p.name() << ": vanishing derivative at " << x;
    throw SingularityError(os.str());
  }
  return F_functional(Jet3{{t[1], t[2], t[3], t[4]}});
}

double F_composition(const ChartMap& p, double base_F, double x_bar) {
  const double d1 = p.tower(x_bar)[1];
  if (d1 == 0.0) {
    std::ostringstream os;
    os << p.name() << ": vanishing derivative at " << x_bar;
    throw SingularityError(os.str());
  }
  return (base_F - schwarzian(p, x_bar)) / (d1 * d1);
}

StressSample theta_components(const VacuumSpec& state, const Point& p) {
  return theta_in(state, state.chart, p);
}

StressSample transform_stress(const StressSample& s, const ConformalChart& from,
                              const ConformalChart& to) {
  if (s.chart != from.name) {
    throw ConfigError("sample is expressed in " + s.chart + ", not " + from.name);
  }
  const Point b = convert_point(s.point, from, to);
  // d(from coordinate)/d(to coordinate) through the common base coordinate.
  const double ju = to.u_map.tower(b.c1)[1] / from.u_map.tower(s.point.c1)[1];
  const double jv = to.v_map.tower(b.c2)[1] / from.v_map.tower(s.point.c2)[1];
  StressSample out = s;
  out.T_uu = ju * ju * s.T_uu;
  out.T_vv = jv * jv * s.T_vv;
  out.T_uv = ju * jv * s.T_uv;
  out.chart = to.name;
  out.point = b;
  out.point.chart = to.name;
  return out;
}

StressSample expectation_stress(const VacuumSpec& state, const ConformalChart& observe,
                                const Point& p) {
  const Point base = to_base(p, observe);
  const ConformalChart& sector = sector_chart(state, base.c1);
  const Point in_state = from_base(base, sector);
  StressSample s = theta_in(state, sector, in_state);
  StressSample out = transform_stress(s, sector, observe);
  out.point = p;
  out.point.chart = observe.name;
  return out;
}

OrthonormalStress to_orthonormal_frame(const StressSample& s, const ConformalChart& chart) {
  const double c = conformal_factor(chart, s.point.c1, s.point.c2)[0][0];
  return {(s.T_uu + 2.0 * s.T_uv + s.T_vv) / c, -(s.T_uu - 2.0 * s.T_uv + s.T_vv) / c,
          (s.T_uu - s.T_vv) / c};
}

double StressGradient::residual_v() const {
  return du_T_vv + dv_T_uv - dv_lnC * sample.T_uv;
}

double StressGradient::residual_u() const {
  return dv_T_uu + du_T_uv - du_lnC * sample.T_uv;
}

StressGradient stress_gradient(const VacuumSpec& state, const ConformalChart& observe,
                               const Point& p) {
  const Point base = to_base(p, observe);
  const ConformalChart& sector = sector_chart(state, base.c1);
  require_quantizable(state, sector);
  const Point in_state = from_base(base, sector);
  require_right_of_mirror(state, sector, in_state);

  // h = (state coordinate) o (observation coordinate), one per null direction.
  auto relabel = [](const ChartMap& state_map, const ChartMap& obs_map, double x_state,
                    double x_obs) {
    const Jet4 inv = invert_tower(state_map.tower(x_state), x_state);
    return compose(inv.derivatives(), obs_map.tower(x_obs));
  };
  const Jet4 hu = relabel(sector.u_map, observe.u_map, in_state.c1, p.c1);
  const Jet4 hv = relabel(sector.v_map, observe.v_map, in_state.c2, p.c2);
  // Schwarzian of h and its first derivative.
  auto schwarzian_jet = [](const Jet4& h) {
    using J1 = Jet<double, 1>;
    return F_of(J1{{h[1], h[2]}}, J1{{h[2], h[3]}}, J1{{h[3], h[4]}});
  };
  const auto su = schwarzian_jet(hu);
  const auto sv = schwarzian_jet(hv);

  const BiJet c = conformal_factor(observe, p.c1, p.c2);
  const BiJet ct = transpose(c);
  const BiJet l = log(c);
  const Jet3 fu = F_of(c[0], c[1], c[2]);     // jet in v
  const Jet3 fv = F_of(ct[0], ct[1], ct[2]);  // jet in u

  StressGradient g;
  g.sample.T_uu = (fu[0] - su[0]) / k24Pi;
  g.sample.T_vv = (fv[0] - sv[0]) / k24Pi;
  g.sample.T_uv = -l[1][1] / k24Pi;
  g.sample.chart = observe.name;
  g.sample.state = state.label;
  g.sample.point = p;
  g.sample.point.chart = observe.name;
  g.dv_T_uu = fu[1] / k24Pi;
  g.du_T_vv = fv[1] / k24Pi;
  g.du_T_uv = -l[2][1] / k24Pi;
  g.dv_T_uv = -l[1][2] / k24Pi;
  g.du_lnC = l[1][0];
  g.dv_lnC = l[0][1];
  return g;
}

ConservationReport check_conservation(const VacuumSpec& state, const ConformalChart& observe,
                                      const Region& region, int n) {
  if (n < 2) throw ConfigError("conservation grid needs n >= 2");
  // Singular rays: finite edges of the state's coverage, mapped into the
  // observation chart when visible there.
  auto guard = [&](const ChartMap& state_map, const ChartMap& obs_map, double lo, double hi,
                   const char* which) {
    for (double edge : {state_map.range().lo, state_map.range().hi}) {
      if (!std::isfinite(edge) || !obs_map.range().contains(edge)) continue;
      const double c = obs_map.inverse(edge);
      if (c > lo - kSingularMargin && c < hi + kSingularMargin) {
        std::ostringstream os;
        os << state.label << ": region comes within " << kSingularMargin << " of the singular "
           << which << " ray at " << c;
        throw SingularityError(os.str());
      }
    }
  };
  guard(state.chart.u_map, observe.u_map, region.c1_lo, region.c1_hi, "u");
  guard(state.chart.v_map, observe.v_map, region.c2_lo, region.c2_hi, "v");

  ConservationReport report;
  for (int i = 0; i < n; ++i) {
    const double c1 = region.c1_lo + (region.c1_hi - region.c1_lo) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double c2 = region.c2_lo + (region.c2_hi - region.c2_lo) * j / (n - 1);
      const Point p{c1, c2, observe.name};
      const StressGradient g = stress_gradient(state, observe, p);
      const double r = std::max(std::abs(g.residual_u()), std::abs(g.residual_v()));
      if (!std::isfinite(r)) throw SingularityError("non-finite conservation residual");
      if (r > report.max_residual || report.points == 0) {
        report.max_residual = std::max(report.max_residual, r);
        report.worst = p;
      }
      ++report.points;
    }
  }
  return report;
}

AnomalyCheck anomaly_check(const VacuumSpec& state, const Point& p) {
  const StressSample s = theta_components(state, p);
  const double c = conformal_factor(state.chart, p.c1, p.c2)[0][0];
  const double trace = 4.0 / c * s.T_uv;
  const double curvature = -ricci_scalar(state.chart, p.c1, p.c2) / k24Pi;
  return {trace, curvature, std::abs(trace - curvature)};
}

}  // namespace mirrorflux
