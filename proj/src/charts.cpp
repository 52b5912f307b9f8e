#include "mirrorflux/charts.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mirrorflux {

namespace {

std::string describe(const Interval& i) {
  std::ostringstream os;
  os << '(' << i.lo << ", " << i.hi << ')';
  return os.str();
}

double interior_probe(const Interval& d) {
  const bool lo_finite = std::isfinite(d.lo);
  const bool hi_finite = std::isfinite(d.hi);
  if (lo_finite && hi_finite) return 0.5 * (d.lo + d.hi);
  if (lo_finite) return d.lo + std::max(1.0, std::abs(d.lo));
  if (hi_finite) return d.hi - std::max(1.0, std::abs(d.hi));
  return 0.0;
}

}  // namespace

Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

ChartMap::ChartMap(std::string name, Interval domain, Interval range, Evaluator evaluator,
                   Inverse closed_inverse)
    : name_(std::move(name)),
      domain_(domain),
      range_(range),
      eval_(std::move(evaluator)),
      inverse_(std::move(closed_inverse)) {
  if (domain_.empty()) throw ConfigError(name_ + ": empty domain");
  const double d1 = tower(interior_probe(domain_))[1];
  if (d1 == 0.0 || !std::isfinite(d1)) throw MonotonicityError(name_ + ": vanishing derivative");
  sign_ = d1 > 0.0 ? 1 : -1;
}

Jet4 ChartMap::tower(double x) const {
  if (!domain_.contains(x)) {
    std::ostringstream os;
    os << name_ << ": coordinate " << x << " outside domain " << describe(domain_);
    throw CoverageError(os.str());
  }
  try {
    return eval_(Jet4::seed(x));
  } catch (const DomainError& e) {
    throw e.at(name_ + " at " + std::to_string(x));
  }
}

double ChartMap::inverse(double y) const {
  if (!range_.contains(y)) {
    std::ostringstream os;
    os << name_ << ": value " << y << " outside range " << describe(range_);
    throw CoverageError(os.str());
  }
  if (inverse_) return inverse_(y);
  return invert_map(*this, y, domain_);
}

ChartMap ChartMap::with_inverse(Inverse inverse) const {
  ChartMap copy = *this;
  copy.inverse_ = std::move(inverse);
  return copy;
}

ChartMap identity_map(Interval domain) {
  return ChartMap(
      "identity", domain, domain, [](const Jet4& x) { return x; }, [](double y) { return y; });
}

ChartMap affine_map(double scale, double shift, std::string name) {
  if (scale == 0.0) throw ConfigError("affine map with zero scale");
  return ChartMap(
      std::move(name), Interval::all(), Interval::all(),
      [scale, shift](const Jet4& x) { return x * scale + shift; },
      [scale, shift](double y) { return (y - shift) / scale; });
}

Interval image(const ChartMap& m, Interval sub) {
  const Interval d = intersect(m.domain(), sub);
  const Interval r = m.range();
  const bool up = m.monotone_sign() > 0;
  // An endpoint within rounding of a singular domain edge falls back to the
  // range limit.
  auto at = [&](double x, double fallback) {
    if (!m.domain().contains(x)) return fallback;
    try {
      const double y = m(x);
      return std::isfinite(y) ? y : fallback;
    } catch (const DomainError&) {
      return fallback;
    }
  };
  const double at_lo = at(d.lo, up ? r.lo : r.hi);
  const double at_hi = at(d.hi, up ? r.hi : r.lo);
  return up ? Interval{at_lo, at_hi} : Interval{at_hi, at_lo};
}

ChartMap compose_maps(const ChartMap& outer, const ChartMap& inner, std::string name) {
  if (!outer.domain().contains(inner.range())) {
    throw CoverageError("cannot compose " + outer.name() + " with " + inner.name() + ": range " +
                        describe(inner.range()) + " leaves domain " + describe(outer.domain()));
  }
  if (name.empty()) name = outer.name() + "∘" + inner.name();
  ChartMap::Inverse inv;
  if (outer.has_closed_inverse() && inner.has_closed_inverse()) {
    inv = [outer, inner](double y) { return inner.inverse(outer.inverse(y)); };
  }
  return ChartMap(
      std::move(name), inner.domain(), image(outer, inner.range()),
      [outer, inner](const Jet4& x) {
        const Jet4 mid = inner(x);
        return outer(mid);
      },
      std::move(inv));
}

ChartMap inverse_map(const ChartMap& m, std::string name) {
  if (name.empty()) name = m.name() + "⁻¹";
  return ChartMap(
      std::move(name), m.range(), m.domain(),
      [m](const Jet4& y) {
        const double x0 = m.inverse(y[0]);
        const Jet4 inv = invert_tower(m.tower(x0), x0);
        return compose(inv.derivatives(), y);
      },
      [m](double x) { return m(x); });
}

ChartMap restrict_map(const ChartMap& m, Interval sub) {
  const Interval d = intersect(m.domain(), sub);
  if (d.empty()) throw CoverageError(m.name() + ": restriction to an empty interval");
  const ChartMap base = m;
  ChartMap::Inverse inv;
  if (m.has_closed_inverse()) inv = [base](double y) { return base.inverse(y); };
  return ChartMap(
      m.name(), d, image(m, d), [base](const Jet4& x) { return base(x); }, std::move(inv));
}

double invert_map(const ChartMap& m, double target, Interval bracket) {
  bracket = intersect(bracket, m.domain());
  if (bracket.empty()) throw NoRootError(m.name() + ": empty bracket");
  if (m.has_closed_inverse() && m.range().contains(target)) {
    const double x = m.inverse(target);
    if (bracket.contains(x)) return x;
    throw NoRootError(m.name() + ": root outside bracket");
  }
  const int sign = m.monotone_sign();
  const double tol = 1e-12 * std::max(1.0, std::abs(target));

  // g(x) < 0 left of the root, > 0 right of it.
  auto g = [&](double x) {
    const Jet4 t = m.tower(x);
    if (t[1] * sign <= 0.0) {
      std::ostringstream os;
      os << m.name() << ": not monotone near " << x;
      throw MonotonicityError(os.str());
    }
    return sign * (t[0] - target);
  };

  // Find a finite bracket [lo, hi] with g(lo) < 0 < g(hi), probing only interior points.
  double lo = interior_probe(bracket);
  double glo = g(lo);
  if (glo == 0.0) return lo;
  double hi = lo;
  double ghi = glo;
  auto march = [&](double from, double toward_end, bool upward) {
    double x = from;
    const double scale = std::max(1.0, std::abs(from));
    for (int k = 0; k < 1100; ++k) {
      if (std::isfinite(toward_end)) {
        x = 0.5 * (x + toward_end);
      } else {
        x = upward ? from + scale * std::ldexp(1.0, k) : from - scale * std::ldexp(1.0, k);
        if (!std::isfinite(x)) break;
      }
      if (!bracket.contains(x)) break;
      const double gx = g(x);
      if (upward ? gx >= 0.0 : gx <= 0.0) return std::pair{x, gx};
      if (upward) {
        lo = x;
        glo = gx;
      } else {
        hi = x;
        ghi = gx;
      }
    }
    std::ostringstream os;
    os << m.name() << ": target " << target << " not attained on " << describe(bracket);
    throw NoRootError(os.str());
  };
  if (glo < 0.0) {
    std::tie(hi, ghi) = march(lo, bracket.hi, true);
  } else {
    std::tie(lo, glo) = march(hi, bracket.lo, false);
  }
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;

  int iterations = 0;
  while (hi - lo > 1e-3 && iterations < 100) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    (gm < 0.0 ? lo : hi) = mid;
    ++iterations;
  }

  double x = 0.5 * (lo + hi);
  for (; iterations < 100; ++iterations) {
    const Jet4 t = m.tower(x);
    const double resid = t[0] - target;
    if (std::abs(resid) <= tol) return x;
    if (sign * resid < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x - resid / t[1];
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x) ||
        next == x) {
      return next;
    }
    x = next;
  }
  if (std::abs(m(x) - target) <= 1e-9 * std::max(1.0, std::abs(target))) return x;
  std::ostringstream os;
  os << m.name() << ": root finding for " << target << " did not converge";
  throw NoRootError(os.str());
}

bool ConformalChart::contains(double c1, double c2) const {
  return u_map.domain().contains(c1) && v_map.domain().contains(c2);
}

ConformalChart minkowski_chart() {
  ConformalChart c{"minkowski", identity_map(), identity_map(), ChartClass::full_plane, {}};
  return c;
}

ConformalChart rindler_chart() {
  ChartMap u_map(
      "rindler_u", Interval::all(), {-kInf, 0.0}, [](const Jet4& ub) { return -exp(-ub); },
      [](double u) {
        if (!(u < 0.0)) throw CoverageError("rindler chart: u >= 0 is beyond the future horizon");
        return -std::log(-u);
      });
  ChartMap v_map(
      "rindler_v", Interval::all(), {0.0, kInf}, [](const Jet4& vb) { return exp(vb); },
      [](double v) {
        if (!(v > 0.0)) throw CoverageError("rindler chart: v <= 0 is beyond the past horizon");
        return std::log(v);
      });
  return {"rindler", std::move(u_map), std::move(v_map), ChartClass::full_plane, {}};
}

ConformalChart curved_test_chart() {
  ConformalChart c{"curved_test", identity_map(), identity_map(), ChartClass::full_plane, {}};
  c.base_factor = [](const BiJet& u, const BiJet& v) {
    const BiJet s = u + v;
    if (!(scalar_value(s) > 0.0)) throw CoverageError("curved_test chart requires u + v > 0");
    return s * s;
  };
  return c;
}

ConformalChart compose_charts(const ConformalChart& outer, const ChartMap& relabel_u,
                              const ChartMap& relabel_v, std::string name,
                              ChartClass global_class) {
  ConformalChart c{std::move(name), compose_maps(outer.u_map, relabel_u),
                   compose_maps(outer.v_map, relabel_v), global_class, outer.base_factor};
  return c;
}

BiJet conformal_factor(const ConformalChart& chart, double c1, double c2) {
  const Jet4 fu = chart.u_map.tower(c1);
  const Jet4 fv = chart.v_map.tower(c2);
  const Jet3 du{{fu[1], fu[2], fu[3], fu[4]}};
  const Jet3 dv{{fv[1], fv[2], fv[3], fv[4]}};
  BiJet c = embed_u(du) * embed_v(dv);
  if (chart.base_factor) {
    c = c * chart.base_factor(embed_u(fu.truncate<3>()), embed_v(fv.truncate<3>()));
  }
  if (!(c[0][0] > 0.0)) {
    std::ostringstream os;
    os << chart.name << ": non-positive conformal factor at (" << c1 << ", " << c2 << ")";
    throw SingularityError(os.str());
  }
  return c;
}

double ricci_scalar(const ConformalChart& chart, double c1, double c2) {
  const BiJet c = conformal_factor(chart, c1, c2);
  const BiJet l = log(c);
  return 4.0 / c[0][0] * l[1][1];
}

MetricComponents metric_components(const ConformalChart& chart, double c1, double c2) {
  const double c = conformal_factor(chart, c1, c2)[0][0];
  return {0.5 * c, 2.0 / c};
}

Point to_base(const Point& p, const ConformalChart& from) {
  return {from.u_map(p.c1), from.v_map(p.c2), "minkowski"};
}

Point from_base(const Point& base, const ConformalChart& to) {
  auto check = [&](const ChartMap& m, double x, const char* which) {
    if (!m.range().contains(x)) {
      std::ostringstream os;
      os << to.name << ": base " << which << " = " << x << " outside chart coverage "
         << describe(m.range());
      throw CoverageError(os.str());
    }
  };
  check(to.u_map, base.c1, "u");
  check(to.v_map, base.c2, "v");
  return {to.u_map.inverse(base.c1), to.v_map.inverse(base.c2), to.name};
}

Point convert_point(const Point& p, const ConformalChart& from, const ConformalChart& to) {
  if (from.name == to.name) return p;
  return from_base(to_base(p, from), to);
}

Point inertial_point(double t, double z) { return {t - z, t + z, "minkowski"}; }

InertialCoords inertial_coords(const Point& base) {
  return {0.5 * (base.c1 + base.c2), 0.5 * (base.c2 - base.c1)};
}

RindlerCoords rindler_coords(const Point& p) {
  return {0.5 * (p.c1 + p.c2), std::exp(0.5 * (p.c2 - p.c1))};
}

Point rindler_point(double tau, double rho) {
  if (!(rho > 0.0)) throw CoverageError("rindler point requires rho > 0");
  const double zeta = std::log(rho);
  return {tau - zeta, tau + zeta, "rindler"};
}

}  // namespace mirrorflux
