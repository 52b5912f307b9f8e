#pragma once

// Named physical setups with closed-form reference values.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mirrorflux/trajectories.hpp"
#include "mirrorflux/vacuum_stress.hpp"

namespace mirrorflux {

struct ScenarioParams {
  double a = 1.0;
};

struct Scenario {
  std::string name;
  VacuumSpec state;
  std::string observation_chart;
  std::optional<Trajectory> trajectory;
  ScenarioParams params;
  /// Charts available for evaluation: minkowski, rindler, and hatted for
  /// mirror scenarios.
  std::map<std::string, ConformalChart> charts;
  /// Null rays (inertial coordinates) on which the stress diverges.
  std::vector<NullAsymptote> singular_rays;

  /// Accepts "minkowski", "rindler", "hatted" and "hatted:<scenario name>".
  const ConformalChart& chart(const std::string& name) const;
};

struct ParamSchema {
  std::string name;
  std::string description;
  double default_value;
  bool affects_result;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::string default_chart;
  std::vector<ParamSchema> params;
};

/// The four scenarios in a fixed order.
const std::vector<ScenarioInfo>& list_scenarios();

Scenario build_scenario(const std::string& name, const ScenarioParams& params = {});

/// Throws CoverageError unless the base-chart point lies strictly to the right
/// of the scenario's mirror (always true without a mirror).
void require_physical_region(const Scenario& s, const Point& base);

/// True when p (chart p.chart) lies within `margin` of a singular ray,
/// measured in the chart's own null coordinates.
bool near_singular_ray(const Scenario& s, const Point& p, double margin = kSingularMargin);

/// Engine value at p, given in the coordinates of chart p.chart.
StressSample evaluate(const Scenario& s, const Point& p);

/// Analytic value at p (chart p.chart); OracleUnavailableError when none is
/// registered.
StressSample closed_form_reference(const Scenario& s, const Point& p);

}  // namespace mirrorflux
