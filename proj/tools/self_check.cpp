#include "self_check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "mirrorflux/bogolubov.hpp"
#include "mirrorflux/scenarios.hpp"
#include "run_config.hpp"

namespace mirrorflux::cli {

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

struct Suite {
  const CheckOptions& opt;
  double k;  // reference 1/(48 pi), possibly perturbed
  std::vector<CheckResult> results;

  void add(const std::string& name, double residual) {
    double tol = 0.0;
    for (const auto& [n, t] : check_catalog()) {
      if (n == name) tol = t;
    }
    if (auto it = opt.tolerances.find(name); it != opt.tolerances.end()) tol = it->second;
    results.push_back({name, residual, tol, std::isfinite(residual) && residual <= tol});
  }
};

void rindler_constants(Suite& s) {
  const Scenario sc = build_scenario("rindler_vacuum");
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const StressSample t = evaluate(sc, {d(rng), d(rng), "rindler"});
    worst = std::max({worst, rel(t.T_uu, -s.k), rel(t.T_vv, -s.k)});
  }
  s.add("rindler_vacuum_constants", worst);
}

void rindler_energy(Suite& s) {
  const Scenario sc = build_scenario("rindler_vacuum");
  double worst = 0.0;
  for (double rho : {0.1, 1.0, 10.0}) {
    const StressSample t = evaluate(sc, rindler_point(0.25, rho));
    const OrthonormalStress o = to_orthonormal_frame(t, sc.chart("rindler"));
    worst = std::max(worst, rel(o.energy_density, -2.0 * s.k / (rho * rho)));
  }
  s.add("rindler_energy_density", worst);
}

void mirror_closed_forms(Suite& s) {
  double worst_r = 0.0, worst_m = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    const Scenario sc = build_scenario("mirror_in_rindler_vacuum", {a});
    const double ub0 = std::log(a / 2.0);
    for (int i = 0; i < 50; ++i) {
      const double ub = ub0 + 0.01 + (10.0 - 0.01) * i / 49.0;
      const double vb = ub - 2.0 * std::log(a) + 1.0;
      const StressSample t = evaluate(sc, {ub, vb, "rindler"});
      const double e = std::exp(-ub);
      const double ref = -s.k * a * a * e * e / ((2.0 - a * e) * (2.0 - a * e));
      worst_r = std::max({worst_r, rel(t.T_uu, ref), rel(t.T_vv, -s.k)});
    }
    for (int i = 0; i < 30; ++i) {
      const double u = -4.0 / a + (4.0 / a - 0.05 / a) * i / 29.0;
      if (std::abs(u + 2.0 / a) < 1e-3) continue;
      for (int j = 0; j < 5; ++j) {
        const double v = std::max(u + 2.0 / a, 0.0) + 0.05 + 0.4 * j;
        const StressSample t = evaluate(sc, {u, v, "minkowski"});
        const double ruu = u > -2.0 / a ? -s.k * a * a / ((2.0 + a * u) * (2.0 + a * u))
                                        : -s.k / (u * u);
        worst_m = std::max({worst_m, rel(t.T_uu, ruu), rel(t.T_vv, -s.k / (v * v))});
      }
    }
  }
  s.add("mirror_rindler_closed_form", worst_r);
  s.add("mirror_minkowski_closed_form", worst_m);
}

void composition_identity(Suite& s) {
  // The right-hand side divides by p'^2 ~ e^{-2 ubar}; beyond ubar ~ log(a/2) + 4
  // its double-precision evaluation loses more than 1e-12 to cancellation.
  const ConformalChart rind = rindler_chart();
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> dv(-3.0, 3.0);
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    const ReflectionMap refl = reflection_map(to_chart(stationary_mirror(1.0 / a), rind));
    const ConformalChart hat = hatted_chart(rind, refl, "hatted");
    const int n = a == 1.0 ? 334 : 333;
    for (int i = 0; i < n; ++i) {
      const double ub = std::log(a / 2.0) + 0.01 + 3.99 * unit(rng);
      const double v = dv(rng);
      const BiJet cb = conformal_factor(rind, ub, v);
      const double f_bar = F_functional(Jet3{{cb[0][0], cb[1][0], cb[2][0], cb[3][0]}});
      const BiJet ch = conformal_factor(hat, refl.p(ub), v);
      const double f_hat = F_functional(Jet3{{ch[0][0], ch[1][0], ch[2][0], ch[3][0]}});
      worst = std::max(worst, rel(F_composition(refl.p, f_bar, ub), f_hat));
    }
  }
  s.add("composition_identity", worst);
}

void conservation(Suite& s) {
  struct Case {
    std::string scenario;
    std::string chart;
    Region region;
  };
  const std::vector<Case> cases = {
      {"rindler_vacuum", "rindler", {-2.0, 2.0, -2.0, 2.0}},
      {"rindler_vacuum", "minkowski", {-3.0, -0.1, 0.1, 3.0}},
      {"mirror_in_rindler_vacuum", "rindler", {-0.6, 1.0, 1.1, 3.0}},
      {"mirror_in_rindler_vacuum", "rindler", {-3.0, -0.8, -0.5, 2.0}},
      {"mirror_in_rindler_vacuum", "minkowski", {-1.9, -0.1, 2.1, 4.0}},
      {"mirror_in_rindler_vacuum", "hatted", {-2.0, 0.6, 0.7, 3.0}},
      {"accelerated_mirror_minkowski", "minkowski", {-3.0, -0.5, 2.5, 5.0}},
      {"accelerated_mirror_minkowski", "rindler", {-1.0, 1.0, 1.5, 3.0}},
      {"minkowski_vacuum_rindler_observer", "rindler", {-2.0, 2.0, -2.0, 2.0}},
      {"minkowski_vacuum_rindler_observer", "minkowski", {-2.0, 2.0, -2.0, 2.0}},
  };
  std::map<std::string, double> worst;
  for (const Case& c : cases) {
    const Scenario sc = build_scenario(c.scenario);
    const ConservationReport r = check_conservation(sc.state, sc.chart(c.chart), c.region, 50);
    worst[c.scenario] = std::max(worst[c.scenario], r.max_residual);
  }
  for (const auto& info : list_scenarios()) s.add("conservation:" + info.name, worst[info.name]);
}

void trace_anomaly(Suite& s) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  double resid = 0.0, terms = 0.0;
  for (const auto& info : list_scenarios()) {
    const Scenario sc = build_scenario(info.name);
    for (int i = 0; i < 200; ++i) {
      Point p{d(rng), d(rng), sc.state.chart.name};
      if (sc.state.boundary == Boundary::dirichlet_half_line) {
        // Sample inside the half line x-hat > 0 of the chart's domain.
        const Interval dom = sc.state.chart.u_map.domain();
        const double lo = std::isfinite(dom.lo) ? dom.lo + 0.05 : -3.0;
        const double hi = std::isfinite(dom.hi) ? dom.hi - 0.05 : 3.0;
        p.c1 = lo + (hi - lo) * (d(rng) + 3.0) / 6.0;
        p.c2 = p.c1 + 0.05 + (d(rng) + 3.0) / 2.0;
      }
      const AnomalyCheck a = anomaly_check(sc.state, p);
      resid = std::max(resid, a.residual);
      terms = std::max({terms, std::abs(a.trace), std::abs(a.curvature_term)});
    }
  }
  const VacuumSpec curved = chart_vacuum(curved_test_chart(), "curved_test_vacuum");
  for (int i = 0; i < 200; ++i) {
    const double u = d(rng);
    const double v = std::abs(d(rng)) + 0.1 - u;
    resid = std::max(resid, anomaly_check(curved, {u, v, curved.chart.name}).residual);
  }
  s.add("trace_anomaly", resid);
  s.add("trace_terms_flat", terms);
}

void unruh_difference(Suite& s) {
  const Scenario mink = build_scenario("minkowski_vacuum_rindler_observer");
  const Scenario rind = build_scenario("rindler_vacuum");
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point p{d(rng), d(rng), "rindler"};
    const double diff = evaluate(mink, p).T_uu - evaluate(rind, p).T_uu;
    worst = std::max(worst, std::abs(diff - s.k));
  }
  s.add("unruh_difference", worst);
}

void schwarzian_mobius(Suite& s) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::uniform_real_distribution<double> dc(0.2, 2.0);
  std::uniform_real_distribution<double> dz(0.5, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = d(rng), c = dc(rng), dd = d(rng);
    const double b = (a * dd - 1.0) / c;
    const ChartMap m("mobius", {-dd / c, kInf}, {-kInf, a / c},
                     [=](const Jet4& x) { return (a * x + b) / (c * x + dd); });
    const double x = (dz(rng) - dd) / c;
    worst = std::max(worst, std::abs(schwarzian(m, x)));
  }
  const double acc = 1.0;
  const Trajectory hyp = uniformly_accelerated_mirror(acc);
  const ChartMap closed = reflection_map(hyp, true).p;
  const ChartMap numeric = reflection_map(hyp, false).p;
  for (int i = 1; i <= 20; ++i) {
    const double u = -0.2 * i;
    worst = std::max({worst, std::abs(schwarzian(closed, u)), std::abs(schwarzian(numeric, u))});
  }
  s.add("schwarzian_mobius", worst);
}

void scenario_oracles(Suite& s) {
  struct Grid {
    std::string chart;
    Region r;
  };
  // c2 ranges are offset from c1 so no node lands exactly on a mirror worldline.
  const std::map<std::string, std::vector<Grid>> grids = {
      {"rindler_vacuum", {{"rindler", {-3, 3, -2.97, 3.03}}, {"minkowski", {-3, -0.01, 0.01, 3}}}},
      {"mirror_in_rindler_vacuum",
       {{"rindler", {-3, 3, -2.97, 3.03}},
        {"minkowski", {-3, -0.01, 0.01, 4}},
        {"hatted", {-3, std::log(2.0) - 0.01, -2.97, 3.03}}}},
      {"accelerated_mirror_minkowski",
       {{"minkowski", {-3, -0.01, 0.01, 4}},
        {"rindler", {-3, 3, -2.97, 3.03}},
        {"hatted", {0.05, 4, 0.08, 4.03}}}},
      {"minkowski_vacuum_rindler_observer",
       {{"rindler", {-3, 3, -2.97, 3.03}}, {"minkowski", {-3, 3, -2.97, 3.03}}}},
  };
  double worst = 0.0;
  for (const auto& [name, list] : grids) {
    const Scenario sc = build_scenario(name);
    for (const Grid& g : list) {
      for (int i = 0; i < 50; ++i) {
        for (int j = 0; j < 50; ++j) {
          const Point p{g.r.c1_lo + (g.r.c1_hi - g.r.c1_lo) * i / 49.0,
                        g.r.c2_lo + (g.r.c2_hi - g.r.c2_lo) * j / 49.0, g.chart};
          if (near_singular_ray(sc, p)) continue;
          bool engine_covered = true, oracle_covered = true;
          StressSample e, o;
          try {
            e = evaluate(sc, p);
          } catch (const CoverageError&) {
            engine_covered = false;
          }
          try {
            o = closed_form_reference(sc, p);
          } catch (const CoverageError&) {
            oracle_covered = false;
          }
          if (engine_covered != oracle_covered) {
            worst = kInf;
            continue;
          }
          if (!engine_covered) continue;
          const double scale = 1.0 + s.opt.perturbation;
          for (auto [x, ref] : {std::pair{e.T_uu, o.T_uu * scale}, std::pair{e.T_vv, o.T_vv * scale},
                                std::pair{e.T_uv, o.T_uv * scale}}) {
            const double denom = std::max(std::abs(ref), s.k);
            worst = std::max(worst, std::abs(x - ref) / denom);
          }
        }
      }
    }
  }
  s.add("scenario_oracles", worst);
}

void bogolubov(Suite& s) {
  const double width = 0.03;
  const std::vector<double> freqs = log_spaced(0.35, 0.35 * std::exp(0.15 * 8), 9);
  const ModeBasis a = make_mode_basis(minkowski_chart(), freqs, width, ModeFamily::boost_eigen);
  const ModeBasis b = make_mode_basis(rindler_chart(), freqs, width);
  const BogolubovPair p = compute_coefficients(a, b);
  QuadratureSpec fine;
  fine.frequency_nodes = 257;
  fine.abs_tol = 1e-9;
  const BogolubovPair q = compute_coefficients(a, b, fine);
  double ratio = 0.0, norm = 0.0;
  for (std::size_t j = 2; j + 2 < freqs.size(); ++j) {
    const double w = p.row_frequencies[j];
    ratio = std::max(ratio, rel(thermal_ratio(p, j), std::exp(-2.0 * kPi * w)));
    norm = std::max(norm, std::abs(row_normalization(p, j) - 1.0));
  }
  double change = 0.0;
  for (std::size_t i = 0; i < p.alpha.data.size(); ++i) {
    change = std::max({change, std::abs(p.alpha.data[i] - q.alpha.data[i]),
                       std::abs(p.beta.data[i] - q.beta.data[i])});
  }
  s.add("bogolubov_thermal_ratio", ratio);
  s.add("bogolubov_row_normalization", norm);
  s.add("bogolubov_refinement", change / p.discretization_error);
}

void determinism(Suite& s) {
  KeyValues kv = {{"scenario", "mirror_in_rindler_vacuum"}, {"chart", "minkowski"},
                  {"c1_min", "-3"},  {"c1_max", "-0.5"}, {"n1", "7"},
                  {"c2_min", "2.5"}, {"c2_max", "4"},    {"n2", "5"}};
  const RunConfig c = parse_run_config(kv);
  s.add("determinism", render_run(c) == render_run(c) ? 0.0 : 1.0);
}

}  // namespace

const std::vector<std::pair<std::string, double>>& check_catalog() {
  static const std::vector<std::pair<std::string, double>> catalog = {
      {"rindler_vacuum_constants", 1e-12},
      {"rindler_energy_density", 1e-11},
      {"mirror_rindler_closed_form", 1e-10},
      {"mirror_minkowski_closed_form", 1e-10},
      {"composition_identity", 1e-10},
      {"conservation:rindler_vacuum", 1e-9},
      {"conservation:mirror_in_rindler_vacuum", 1e-9},
      {"conservation:accelerated_mirror_minkowski", 1e-9},
      {"conservation:minkowski_vacuum_rindler_observer", 1e-9},
      {"trace_anomaly", 1e-10},
      {"trace_terms_flat", 1e-12},
      {"unruh_difference", 1e-12},
      {"schwarzian_mobius", 1e-10},
      {"scenario_oracles", 1e-10},
      {"bogolubov_thermal_ratio", 0.05},
      {"bogolubov_row_normalization", 0.02},
      {"bogolubov_refinement", 1.0},
      {"determinism", 0.0},
  };
  return catalog;
}

std::vector<CheckResult> run_checks(const CheckOptions& options) {
  for (const auto& [name, tol] : options.tolerances) {
    const auto& cat = check_catalog();
    if (std::none_of(cat.begin(), cat.end(), [&](const auto& e) { return e.first == name; })) {
      throw ConfigError("unknown check '" + name + "' in tolerance override");
    }
    if (!(tol >= 0.0)) throw ConfigError("tolerance for '" + name + "' must be non-negative");
  }
  Suite s{options, (1.0 + options.perturbation) / (48.0 * kPi), {}};
  rindler_constants(s);
  rindler_energy(s);
  mirror_closed_forms(s);
  composition_identity(s);
  conservation(s);
  trace_anomaly(s);
  unruh_difference(s);
  schwarzian_mobius(s);
  scenario_oracles(s);
  bogolubov(s);
  determinism(s);
  return s.results;
}

}  // namespace mirrorflux::cli
