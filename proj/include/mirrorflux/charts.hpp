#pragma once

// Conformally flat charts of two-dimensional Minkowski space.
//
// Every chart is anchored to the global inertial null coordinates
// u = t - z, v = t + z. A chart is a pair of monotone relabelings
// u = f(u*), v = g(v*); its conformal factor is C* = f'(u*) g'(v*) C(f, g),
// where C is the base conformal factor (identically 1 for flat space).

#include <functional>
#include <limits>
#include <string>

#include "mirrorflux/jets.hpp"

namespace mirrorflux {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (lo, hi); endpoints may be infinite.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double x) const { return x > lo && x < hi; }
  bool contains(const Interval& o) const { return o.lo >= lo && o.hi <= hi; }
  bool empty() const { return !(lo < hi); }
  static Interval all() { return {}; }
};

Interval intersect(const Interval& a, const Interval& b);

/// Strictly monotone, four-times differentiable scalar map on an open domain.
///
/// The evaluator receives a seeded Jet4 and returns the jet of the image, so
/// one call yields the map and its first four derivatives. Four orders are
/// kept so that f' is available to third order, which is what the stress
/// tensor and its first derivatives need.
class ChartMap {
 public:
  using Evaluator = std::function<Jet4(const Jet4&)>;
  using Inverse = std::function<double(double)>;

  ChartMap(std::string name, Interval domain, Interval range, Evaluator evaluator,
           Inverse closed_inverse = {});

  const std::string& name() const { return name_; }
  Interval domain() const { return domain_; }
  Interval range() const { return range_; }
  int monotone_sign() const { return sign_; }
  bool has_closed_inverse() const { return static_cast<bool>(inverse_); }

  /// The map's value and first four derivatives at x.
  Jet4 tower(double x) const;

  double operator()(double x) const { return tower(x)[0]; }

  template <int N>
  Jet<double, N> operator()(const Jet<double, N>& x) const {
    static_assert(N <= 4, "chart maps carry four derivatives");
    return compose(tower(x[0]).derivatives(), x);
  }

  /// Preimage of y; closed form when registered, bracketed root finding otherwise.
  double inverse(double y) const;

  /// Attach a closed-form inverse.
  ChartMap with_inverse(Inverse inverse) const;

 private:
  std::string name_;
  Interval domain_;
  Interval range_;
  Evaluator eval_;
  Inverse inverse_;
  int sign_ = 1;
};

ChartMap identity_map(Interval domain = Interval::all());

/// x -> scale * x + shift.
ChartMap affine_map(double scale, double shift, std::string name = "affine");

/// outer(inner(x)). Throws CoverageError when inner's range leaves outer's domain.
ChartMap compose_maps(const ChartMap& outer, const ChartMap& inner, std::string name = {});

/// The inverse map, defined on m.range().
ChartMap inverse_map(const ChartMap& m, std::string name = {});

/// Same map on a sub-interval of its domain.
ChartMap restrict_map(const ChartMap& m, Interval sub);

/// Image of a sub-interval of the domain (limits at open ends taken from the range).
Interval image(const ChartMap& m, Interval sub);

/// Solve m(x) = target for x in bracket.
///
/// Bisection down to a bracket of width 1e-3, then safeguarded Newton steps
/// using the map's derivative; at most 100 iterations. Converges when
/// |m(x) - target| <= 1e-12 * max(1, |target|) or the step reaches
/// floating-point resolution.
double invert_map(const ChartMap& m, double target, Interval bracket);

enum class ChartClass {
  full_plane,  // chart coordinates range over all of R^2
  half_line,   // chart space coordinate on a half-line with a Dirichlet wall at x* = 0
  unquantizable,
};

/// Base conformal factor as a function of base null coordinates.
using BaseFactor = std::function<BiJet(const BiJet& u, const BiJet& v)>;

struct ConformalChart {
  std::string name;
  ChartMap u_map;  // base u as a function of the chart's first null coordinate
  ChartMap v_map;  // base v as a function of the chart's second null coordinate
  ChartClass global_class = ChartClass::full_plane;
  BaseFactor base_factor;  // empty means flat space, C = 1

  bool flat() const { return !base_factor; }
  /// Whether (c1, c2) lies inside the chart's coordinate rectangle.
  bool contains(double c1, double c2) const;
};

ConformalChart minkowski_chart();

/// Right Rindler wedge: u = -exp(-ubar), v = exp(vbar).
ConformalChart rindler_chart();

/// Synthetic curved chart with C = (u + v)^2 on u + v > 0, used to exercise
/// the curvature terms.
ConformalChart curved_test_chart();

/// Relabel the chart's null rays: new maps are outer.u_map o relabel_u and
/// outer.v_map o relabel_v.
ConformalChart compose_charts(const ConformalChart& outer, const ChartMap& relabel_u,
                              const ChartMap& relabel_v, std::string name,
                              ChartClass global_class);

/// Conformal factor with all derivatives up to third order in each null
/// direction: result[i][j] = d^i_{c1} d^j_{c2} C*.
BiJet conformal_factor(const ConformalChart& chart, double c1, double c2);

/// R = (4/C) d_1 d_2 ln C.
double ricci_scalar(const ConformalChart& chart, double c1, double c2);

struct MetricComponents {
  double g_uv;      // covariant off-diagonal component, C/2
  double g_inv_uv;  // contravariant, 2/C
};

MetricComponents metric_components(const ConformalChart& chart, double c1, double c2);

/// Pair of null coordinates in a named chart.
struct Point {
  double c1 = 0.0;
  double c2 = 0.0;
  std::string chart;
};

/// Base (inertial) null coordinates of a chart point.
Point to_base(const Point& p, const ConformalChart& from);

/// Chart coordinates of a base point; CoverageError outside the chart's image.
Point from_base(const Point& base, const ConformalChart& to);

Point convert_point(const Point& p, const ConformalChart& from, const ConformalChart& to);

/// Inertial (t, z) to base null coordinates.
Point inertial_point(double t, double z);

struct InertialCoords {
  double t;
  double z;
};
InertialCoords inertial_coords(const Point& base);

/// Rindler time and proper distance from the horizon.
struct RindlerCoords {
  double tau;
  double rho;
};
RindlerCoords rindler_coords(const Point& rindler_point);
Point rindler_point(double tau, double rho);

}  // namespace mirrorflux
