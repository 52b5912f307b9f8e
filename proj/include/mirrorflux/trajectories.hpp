#pragma once

// Mirror worldlines and the reflection maps they induce.

#include <map>
#include <optional>
#include <string>

#include "mirrorflux/charts.hpp"

namespace mirrorflux {

/// A timelike worldline given by its null coordinates U(lambda), V(lambda) in
/// some chart. The parameter is inertial time t; U and V are strictly
/// increasing and their domain is the parameter interval.
struct Trajectory {
  std::string label;
  std::string chart = "minkowski";
  ChartMap U;
  ChartMap V;
  /// Closed-form reflection maps keyed by chart name.
  std::map<std::string, ChartMap> closed_reflection;

  Interval parameter_domain() const { return U.domain(); }
};

/// Mirror at rest at z = z0 > 0: U = t - z0, V = t + z0.
Trajectory stationary_mirror(double z0);

/// Mirror on the hyperbola z^2 - t^2 = 1/a^2 (proper acceleration a > 0).
Trajectory uniformly_accelerated_mirror(double a);

/// Express an inertial-chart trajectory in another chart, clipping the
/// parameter domain to the part of the worldline the chart covers.
Trajectory to_chart(const Trajectory& traj, const ConformalChart& chart);

struct NullAsymptote {
  int coordinate;  // 1 or 2: which chart null coordinate tends to a finite limit
  double value;
};

struct Asymptotes {
  std::optional<NullAsymptote> past;
  std::optional<NullAsymptote> future;
};

/// Null asymptotes at the ends of the parameter domain: one null coordinate
/// converges while the other diverges.
Asymptotes asymptotes(const Trajectory& traj);

/// Relabeling of right-movers (u -> p(u)) and left-movers (v -> q(v)) under
/// which the mirror sits at a constant spatial coordinate x-hat = 0.
struct ReflectionMap {
  ChartMap p;
  ChartMap q;
  Interval validity_domain;
  /// The same reflection in base null coordinates, when known in closed form.
  std::optional<ChartMap> base_p;
};

/// p = V o U^{-1}, q = identity. Uses the registered closed form for the
/// trajectory's chart when one exists and prefer_closed_form is set.
ReflectionMap reflection_map(const Trajectory& traj, bool prefer_closed_form = true);

/// Chart in which the mirror sits at x-hat = 0: outer relabeled by f = p^{-1}
/// on the first null coordinate, identity on the second. With base_p the first
/// map is built as base_p^{-1} o outer.v_map, which equals outer.u_map o f but
/// keeps its derivatives well conditioned where f' is large.
ConformalChart hatted_chart(const ConformalChart& outer, const ReflectionMap& reflection,
                            std::string name);

}  // namespace mirrorflux
