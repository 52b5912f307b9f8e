#pragma once

// Renormalized stress tensor of the massless scalar field in chart vacua.
//
// In the vacuum associated with a conformal chart with factor C,
//   <T_uu> = F_u(C) / 24pi,  <T_vv> = F_v(C) / 24pi,  <T_uv> = -R C / 96pi,
// with F_x(f) = f''/f - (3/2)(f'/f)^2 and R = (4/C) d_u d_v ln C.

#include <numbers>
#include <optional>
#include <string>

#include "mirrorflux/charts.hpp"

namespace mirrorflux {

inline constexpr double kPi = std::numbers::pi;

enum class Boundary { full_line, dirichlet_half_line };

/// A chart vacuum. A half-line vacuum lives on the side x* > 0 of a mirror at
/// x* = 0; right-movers outside its chart's coverage (rays the mirror never
/// reflected) are in the vacuum of `unreflected`.
struct VacuumSpec {
  std::string label;
  ConformalChart chart;
  Boundary boundary = Boundary::full_line;
  std::optional<ConformalChart> unreflected;
};

VacuumSpec chart_vacuum(const ConformalChart& chart, std::string label = {});

/// Vacuum to the right of a mirror sitting at x-hat = 0 of a hatted chart.
VacuumSpec mirror_vacuum(const ConformalChart& hatted, const ConformalChart& unreflected,
                         std::string label);

/// Null components of <T> at a point, in a named chart.
struct StressSample {
  double T_uu = 0.0;
  double T_vv = 0.0;
  double T_uv = 0.0;
  std::string chart;
  std::string state;
  Point point;
};

/// F_x(f) = f''/f - (3/2)(f'/f)^2 at the jet's point.
double F_functional(const Jet3& f);

/// Schwarzian derivative p'''/p' - (3/2)(p''/p')^2, i.e. F applied to p'.
double schwarzian(const ChartMap& p, double x);

/// F in the hatted chart from barred-chart data:
/// (1/p'(x)^2) [base_F - F_x(p')].
double F_composition(const ChartMap& p, double base_F, double x_bar);

/// <T> in the state's own chart at p (given in that chart's coordinates).
StressSample theta_components(const VacuumSpec& state, const Point& p);

/// Tensor transformation of the null components to another chart.
StressSample transform_stress(const StressSample& s, const ConformalChart& from,
                              const ConformalChart& to);

/// <T> in `state`, expressed in `observe` at p (given in observe's coordinates).
StressSample expectation_stress(const VacuumSpec& state, const ConformalChart& observe,
                                const Point& p);

struct OrthonormalStress {
  double energy_density;  // T^t_t
  double pressure;        // T^x_x
  double flux;            // rightward energy flux
};

/// Components in the orthonormal frame aligned with the chart's (t*, x*).
OrthonormalStress to_orthonormal_frame(const StressSample& s, const ConformalChart& chart);

/// Stress components together with the first derivatives that enter the
/// conservation law, all in the observation chart.
struct StressGradient {
  StressSample sample;
  double dv_T_uu;
  double du_T_vv;
  double du_T_uv;
  double dv_T_uv;
  double du_lnC;
  double dv_lnC;

  /// d_u T_vv + d_v T_uv - (d_v ln C) T_uv
  double residual_v() const;
  /// d_v T_uu + d_u T_uv - (d_u ln C) T_uv
  double residual_u() const;
};

/// Evaluates <T> and its derivatives through the chart relabeling identity
/// T_uu = (1/24pi) [F_u(C_observe) - S(h)], h = state coordinate as a
/// function of the observation coordinate.
StressGradient stress_gradient(const VacuumSpec& state, const ConformalChart& observe,
                               const Point& p);

struct Region {
  double c1_lo, c1_hi;
  double c2_lo, c2_hi;
};

struct ConservationReport {
  double max_residual = 0.0;
  int points = 0;
  Point worst;
};

/// Singular-ray margin used by grid checks, in chart null coordinates.
inline constexpr double kSingularMargin = 1e-3;

/// Max conservation residual over an n x n grid of the region (observation
/// chart coordinates, endpoints included). Throws SingularityError when the
/// region comes within kSingularMargin of a singular ray of the state.
ConservationReport check_conservation(const VacuumSpec& state, const ConformalChart& observe,
                                      const Region& region, int n);

struct AnomalyCheck {
  double trace;           // (4/C) T_uv
  double curvature_term;  // -R / 24pi
  double residual;        // |trace - curvature_term|
};

/// Trace identity at p (state chart coordinates).
AnomalyCheck anomaly_check(const VacuumSpec& state, const Point& p);

}  // namespace mirrorflux
