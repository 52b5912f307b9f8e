// Acceptance run: one PASS/FAIL line per criterion.
//
// usage: acceptance <path to the mirrorflux executable>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mirrorflux/bogolubov.hpp"
#include "mirrorflux/errors.hpp"
#include "mirrorflux/scenarios.hpp"

using namespace mirrorflux;

namespace {

const double k48 = 1.0 / (48.0 * kPi);

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

struct Outcome {
  bool passed;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Outcome below(double value, double tol) {
  return {std::isfinite(value) && value < tol, sci(value) + " < " + sci(tol)};
}

Outcome all_of(const std::vector<Outcome>& parts) {
  Outcome out{true, ""};
  for (const Outcome& p : parts) {
    out.passed = out.passed && p.passed;
    out.detail += (out.detail.empty() ? "" : "; ") + p.detail;
  }
  return out;
}

Outcome rindler_constants() {
  const Scenario sc = build_scenario("rindler_vacuum");
  const ConformalChart& rind = sc.chart("rindler");
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Point base{-std::exp(d(rng)), std::exp(d(rng)), "minkowski"};
    const StressSample t = evaluate(sc, from_base(base, rind));
    worst = std::max({worst, rel(t.T_uu, -k48), rel(t.T_vv, -k48)});
  }
  return below(worst, 1e-12);
}

Outcome rindler_energy_density() {
  const Scenario sc = build_scenario("rindler_vacuum");
  double worst = 0.0;
  for (double rho : {0.1, 1.0, 10.0}) {
    for (double tau : {-1.0, 0.0, 0.6}) {
      const StressSample t = evaluate(sc, rindler_point(tau, rho));
      const OrthonormalStress o = to_orthonormal_frame(t, sc.chart("rindler"));
      worst = std::max(worst, rel(o.energy_density, -1.0 / (24.0 * kPi * rho * rho)));
    }
  }
  return below(worst, 1e-11);
}

Outcome mirror_rindler() {
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    const Scenario sc = build_scenario("mirror_in_rindler_vacuum", {a});
    const double ub0 = std::log(a / 2.0);
    for (int i = 0; i < 50; ++i) {
      const double ub = ub0 + 0.01 + (10.0 - 0.01) * i / 49.0;
      for (double dv : {0.5, 2.0}) {
        // right of the mirror: vbar > ubar - 2 log a
        const double vb = ub - 2.0 * std::log(a) + dv;
        const StressSample t = evaluate(sc, {ub, vb, "rindler"});
        const double e = std::exp(-ub);
        const double ref = -k48 * a * a * e * e / ((2.0 - a * e) * (2.0 - a * e));
        worst = std::max({worst, rel(t.T_uu, ref), rel(t.T_vv, -k48)});
      }
    }
  }
  return below(worst, 1e-10);
}

Outcome mirror_minkowski() {
  double closed = 0.0, agree = 0.0;
  int points = 0;
  for (double a : {0.5, 1.0, 2.0}) {
    const Scenario sc = build_scenario("mirror_in_rindler_vacuum", {a});
    const ConformalChart& rind = sc.chart("rindler");
    const ConformalChart& mink = sc.chart("minkowski");
    for (int i = 0; i < 50; ++i) {
      const double u = -4.0 / a + (4.0 / a - 1e-3) * i / 49.0;
      if (std::abs(u + 2.0 / a) < 1e-3) continue;
      // the mirror sits on u v = -1/a^2
      const double v_mirror = -1.0 / (a * a * u);
      for (int j = 0; j < 10; ++j) {
        const double v = v_mirror + 0.01 + 5.0 * j / 9.0;
        if (v < 1e-3) continue;
        const Point p{u, v, "minkowski"};
        const StressSample direct = evaluate(sc, p);
        const StressSample via_rindler =
            transform_stress(evaluate(sc, from_base(p, rind)), rind, mink);
        const double ruu = u > -2.0 / a ? -k48 * a * a / ((2.0 + a * u) * (2.0 + a * u))
                                        : -k48 / (u * u);
        const double rvv = -k48 / (v * v);
        closed = std::max({closed, rel(direct.T_uu, ruu), rel(direct.T_vv, rvv),
                           rel(via_rindler.T_uu, ruu), rel(via_rindler.T_vv, rvv)});
        agree = std::max({agree, rel(direct.T_uu, via_rindler.T_uu),
                          rel(direct.T_vv, via_rindler.T_vv)});
        ++points;
      }
    }
  }
  Outcome c = below(closed, 1e-10), g = below(agree, 1e-10);
  c.detail = "closed form " + c.detail + " (" + std::to_string(points) + " points)";
  g.detail = "two routes " + g.detail;
  return all_of({c, g});
}

Outcome identity_chain() {
  // The right-hand side divides by p'^2 ~ e^{-2 ubar}; the samples stay where
  // its double-precision evaluation is well conditioned.
  const ConformalChart rind = rindler_chart();
  std::mt19937 rng(105);
  std::uniform_real_distribution<double> unit(0.0, 1.0), dv(-3.0, 3.0);
  double worst = 0.0;
  int n = 0;
  for (double a : {0.5, 1.0, 2.0}) {
    const ReflectionMap refl = reflection_map(to_chart(stationary_mirror(1.0 / a), rind));
    const ConformalChart hat = hatted_chart(rind, refl, "hatted");
    for (int i = 0; i < (a == 1.0 ? 334 : 333); ++i, ++n) {
      const double ub = std::log(a / 2.0) + 0.01 + 3.99 * unit(rng);
      const double v = dv(rng);
      const BiJet cb = conformal_factor(rind, ub, v);
      const BiJet ch = conformal_factor(hat, refl.p(ub), v);
      const double f_bar = F_functional(Jet3{{cb[0][0], cb[1][0], cb[2][0], cb[3][0]}});
      const double f_hat = F_functional(Jet3{{ch[0][0], ch[1][0], ch[2][0], ch[3][0]}});
      worst = std::max(worst, rel(F_composition(refl.p, f_bar, ub), f_hat));
    }
  }
  Outcome o = below(worst, 1e-10);
  o.detail += " (" + std::to_string(n) + " points)";
  return o;
}

Outcome conservation() {
  struct Case {
    std::string scenario, chart;
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
  double worst = 0.0;
  for (const Case& c : cases) {
    const Scenario sc = build_scenario(c.scenario);
    worst = std::max(worst,
                     check_conservation(sc.state, sc.chart(c.chart), c.region, 50).max_residual);
  }
  return below(worst, 1e-9);
}

Outcome trace_anomaly() {
  std::mt19937 rng(107);
  std::uniform_real_distribution<double> d(-3.0, 3.0), unit(0.0, 1.0);
  double resid = 0.0, terms = 0.0;
  for (const auto& info : list_scenarios()) {
    const Scenario sc = build_scenario(info.name);
    for (int i = 0; i < 200; ++i) {
      Point p{d(rng), d(rng), sc.state.chart.name};
      if (sc.state.boundary == Boundary::dirichlet_half_line) {
        const Interval dom = sc.state.chart.u_map.domain();
        const double lo = std::isfinite(dom.lo) ? dom.lo + 0.05 : -3.0;
        const double hi = std::isfinite(dom.hi) ? dom.hi - 0.05 : 3.0;
        p.c1 = lo + (hi - lo) * unit(rng);
        p.c2 = p.c1 + 0.05 + 3.0 * unit(rng);
      }
      const AnomalyCheck a = anomaly_check(sc.state, p);
      resid = std::max(resid, a.residual);
      terms = std::max({terms, std::abs(a.trace), std::abs(a.curvature_term)});
    }
  }
  const VacuumSpec curved = chart_vacuum(curved_test_chart(), "curved_test_vacuum");
  double curved_resid = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double u = d(rng);
    const double v = 0.1 + 3.0 * unit(rng) - u;
    curved_resid = std::max(curved_resid, anomaly_check(curved, {u, v, curved.chart.name}).residual);
  }
  Outcome r = below(resid, 1e-10), t = below(terms, 1e-12), c = below(curved_resid, 1e-10);
  r.detail = "flat " + r.detail;
  t.detail = "flat terms " + t.detail;
  c.detail = "curved " + c.detail;
  return all_of({r, t, c});
}

Outcome unruh_difference() {
  const Scenario mink = build_scenario("minkowski_vacuum_rindler_observer");
  const Scenario rind = build_scenario("rindler_vacuum");
  std::mt19937 rng(108);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point p{d(rng), d(rng), "rindler"};
    worst = std::max(worst, std::abs(evaluate(mink, p).T_uu - evaluate(rind, p).T_uu - k48));
  }
  return below(worst, 1e-12);
}

Outcome schwarzian_property() {
  std::mt19937 rng(109);
  std::uniform_real_distribution<double> d(-2.0, 2.0), dc(0.2, 2.0), dz(0.5, 3.0);
  double mobius = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = d(rng), c = dc(rng), dd = d(rng);
    const double b = (a * dd - 1.0) / c;  // unit determinant
    const ChartMap m("mobius", {-dd / c, kInf}, {-kInf, a / c},
                     [=](const Jet4& x) { return (a * x + b) / (c * x + dd); });
    mobius = std::max(mobius, std::abs(schwarzian(m, (dz(rng) - dd) / c)));
  }
  double mirror = 0.0;
  for (double acc : {0.5, 1.0, 2.0}) {
    const Trajectory hyp = uniformly_accelerated_mirror(acc);
    const ChartMap closed = reflection_map(hyp, true).p;
    const ChartMap numeric = reflection_map(hyp, false).p;
    for (int i = 1; i <= 20; ++i) {
      const double u = -0.2 * i / acc;
      mirror = std::max({mirror, std::abs(schwarzian(closed, u)), std::abs(schwarzian(numeric, u))});
    }
  }
  Outcome m = below(mobius, 1e-10), h = below(mirror, 1e-10);
  m.detail = "Mobius " + m.detail;
  h.detail = "hyperbolic mirror " + h.detail;
  return all_of({m, h});
}

Outcome bogolubov_thermality() {
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
    ratio = std::max(ratio, rel(thermal_ratio(p, j), std::exp(-2.0 * kPi * p.row_frequencies[j])));
    norm = std::max(norm, std::abs(row_normalization(p, j) - 1.0));
  }
  double change = 0.0;
  for (std::size_t i = 0; i < p.alpha.data.size(); ++i) {
    change = std::max({change, std::abs(p.alpha.data[i] - q.alpha.data[i]),
                       std::abs(p.beta.data[i] - q.beta.data[i])});
  }
  Outcome r = below(ratio, 0.05), n = below(norm, 0.02);
  Outcome c = below(change, p.discretization_error);
  r.detail = "thermal ratio " + r.detail;
  n.detail = "normalization " + n.detail;
  c.detail = "refinement change " + c.detail;
  Outcome t{!p.truncated && !p.unconverged, p.truncated || p.unconverged ? "flagged" : "clean"};
  t.detail = "quadrature " + t.detail;
  return all_of({r, n, c, t});
}

Outcome determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("mirrorflux_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "scenario = mirror_in_rindler_vacuum\nchart = minkowski\n"
                        "c1_min = -3\nc1_max = -0.5\nn1 = 11\n"
                        "c2_min = 2.5\nc2_max = 4\nn2 = 7\n";
  auto run = [&](const fs::path& out) {
    const std::string cmd = "\"" + cli + "\" run --config \"" + cfg.string() + "\" --output \"" +
                            out.string() + "\"";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const int s1 = run(dir / "a.csv"), s2 = run(dir / "b.csv");
  const std::string a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
  fs::remove_all(dir);
  if (s1 != 0 || s2 != 0) return {false, "run exited with status " + std::to_string(s1 ? s1 : s2)};
  if (a.empty()) return {false, "empty output"};
  return {a == b, a == b ? std::to_string(a.size()) + " identical bytes" : "outputs differ"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <mirrorflux executable>\n");
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Rindler vacuum constants", rindler_constants},
      {"orthonormal Rindler energy density", rindler_energy_density},
      {"mirror radiation, Rindler chart", mirror_rindler},
      {"mirror radiation, Minkowski chart", mirror_minkowski},
      {"identity chain", identity_chain},
      {"conservation", conservation},
      {"trace anomaly", trace_anomaly},
      {"Unruh-bath difference", unruh_difference},
      {"Schwarzian property", schwarzian_property},
      {"Bogolubov thermality", bogolubov_thermality},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
