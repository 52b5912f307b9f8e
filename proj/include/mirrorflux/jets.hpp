#pragma once

// Truncated forward-mode differentiation.
//
// Jet<T, N> carries a value and its first N derivatives with respect to a
// single designated coordinate. T is either double or another Jet, which is
// how mixed partial derivatives in two null directions are obtained: the outer
// jet differentiates in u, the coefficients differentiate in v.

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <type_traits>

#include "mirrorflux/errors.hpp"

namespace mirrorflux {

template <class T, int N>
class Jet;

namespace detail {

template <class T>
struct is_jet : std::false_type {};
template <class T, int N>
struct is_jet<Jet<T, N>> : std::true_type {};

constexpr double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

constexpr double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

}  // namespace detail

inline double scalar_value(double x) { return x; }

template <class T, int N>
double scalar_value(const Jet<T, N>& j) {
  return scalar_value(j[0]);
}

/// Value plus derivatives d[0..N] (d[k] is the k-th derivative, not a Taylor coefficient).
template <class T, int N>
class Jet {
  static_assert(N >= 0);

 public:
  using value_type = T;
  static constexpr int order = N;

  Jet() : d_{} {
    for (auto& x : d_) x = T(0.0);
  }

  // Constant jet.
  template <class S, std::enable_if_t<std::is_arithmetic_v<S>, int> = 0>
  Jet(S c) : Jet() {  // NOLINT(google-explicit-constructor)
    d_[0] = T(static_cast<double>(c));
  }

  template <class U = T, std::enable_if_t<detail::is_jet<U>::value, int> = 0>
  Jet(const T& c) : Jet() {  // NOLINT(google-explicit-constructor)
    d_[0] = c;
  }

  explicit Jet(const std::array<T, N + 1>& derivs) : d_(derivs) {}

  /// Independent variable at x: (x, 1, 0, ...).
  static Jet seed(const T& x) {
    Jet j(x);
    if constexpr (N >= 1) j.d_[1] = T(1.0);
    return j;
  }

  const T& operator[](int k) const { return d_[static_cast<std::size_t>(k)]; }
  T& operator[](int k) { return d_[static_cast<std::size_t>(k)]; }

  const T& value() const { return d_[0]; }
  const std::array<T, N + 1>& derivatives() const { return d_; }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) d_[k] += o.d_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) d_[k] -= o.d_[k];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& x : d_) x *= s;
    return *this;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& x : r.d_) x = -x;
    return r;
  }

  /// Keep the first M derivatives.
  template <int M>
  Jet<T, M> truncate() const {
    static_assert(M <= N);
    Jet<T, M> r;
    for (int k = 0; k <= M; ++k) r[k] = d_[k];
    return r;
  }

  /// Derivative jet (loses the top order).
  template <int M = N - 1>
  Jet<T, M> derivative() const {
    static_assert(M == N - 1 && N >= 1);
    Jet<T, M> r;
    for (int k = 0; k <= M; ++k) r[k] = d_[k + 1];
    return r;
  }

 private:
  std::array<T, N + 1> d_;
};

using Jet3 = Jet<double, 3>;
using Jet4 = Jet<double, 4>;
/// Jet in u whose coefficients are jets in v: holds d^i_u d^j_v f for i, j <= 3.
using BiJet = Jet<Jet<double, 3>, 3>;

inline Jet3 seed(double x) { return Jet3::seed(x); }

template <class T, int N>
Jet<T, N> operator+(Jet<T, N> a, const Jet<T, N>& b) {
  return a += b;
}
template <class T, int N>
Jet<T, N> operator-(Jet<T, N> a, const Jet<T, N>& b) {
  return a -= b;
}
template <class T, int N>
Jet<T, N> operator+(Jet<T, N> a, double c) {
  a[0] += c;
  return a;
}
template <class T, int N>
Jet<T, N> operator+(double c, Jet<T, N> a) {
  a[0] += c;
  return a;
}
template <class T, int N>
Jet<T, N> operator-(Jet<T, N> a, double c) {
  a[0] -= c;
  return a;
}
template <class T, int N>
Jet<T, N> operator-(double c, const Jet<T, N>& a) {
  Jet<T, N> r = -a;
  r[0] += c;
  return r;
}
template <class T, int N>
Jet<T, N> operator*(Jet<T, N> a, double s) {
  return a *= s;
}
template <class T, int N>
Jet<T, N> operator*(double s, Jet<T, N> a) {
  return a *= s;
}

// Leibniz rule.
template <class T, int N>
Jet<T, N> operator*(const Jet<T, N>& a, const Jet<T, N>& b) {
  Jet<T, N> r;
  for (int n = 0; n <= N; ++n) {
    T acc = a[0] * b[n];
    for (int k = 1; k <= n; ++k) acc += detail::binomial(n, k) * (a[k] * b[n - k]);
    r[n] = acc;
  }
  return r;
}

template <class T, int N>
Jet<T, N> operator/(const Jet<T, N>& a, double s) {
  if (s == 0.0) throw DomainError("div", 0.0);
  return a * (1.0 / s);
}

/// Jet of f(inner) given the derivatives of f (tower[m] = f^(m)) at inner.value().
template <class T, int N, class Tower>
Jet<T, N> compose(const Tower& tower, const Jet<T, N>& inner) {
  // Work with Taylor coefficients: f(x0 + h) = sum_m tower[m]/m! h^m.
  std::array<T, N + 1> h{};
  for (auto& x : h) x = T(0.0);
  for (int k = 1; k <= N; ++k) h[k] = inner[k] * (1.0 / detail::factorial(k));

  std::array<T, N + 1> out{};
  std::array<T, N + 1> power{};
  for (auto& x : out) x = T(0.0);
  for (auto& x : power) x = T(0.0);
  power[0] = T(1.0);
  out[0] = T(tower[0]);
  for (int m = 1; m <= N; ++m) {
    std::array<T, N + 1> next{};
    for (auto& x : next) x = T(0.0);
    for (int i = 0; i <= N; ++i)
      for (int j = 1; i + j <= N; ++j) next[i + j] += power[i] * h[j];
    power = next;
    const double inv_fact = 1.0 / detail::factorial(m);
    for (int k = m; k <= N; ++k) out[k] += (T(tower[m]) * inv_fact) * power[k];
  }
  Jet<T, N> r;
  for (int k = 0; k <= N; ++k) r[k] = out[k] * detail::factorial(k);
  return r;
}

template <class T, int N>
Jet<T, N> reciprocal(const Jet<T, N>& a) {
  if (scalar_value(a) == 0.0) throw DomainError("div", 0.0);
  std::array<T, N + 1> tower{};
  const T r = T(1.0) / a[0];
  T rp = r;
  for (int k = 0; k <= N; ++k) {
    tower[k] = rp * ((k % 2 == 0 ? 1.0 : -1.0) * detail::factorial(k));
    rp = rp * r;
  }
  return compose(tower, a);
}

inline double reciprocal(double x) {
  if (x == 0.0) throw DomainError("div", 0.0);
  return 1.0 / x;
}

template <class T, int N>
Jet<T, N> operator/(const Jet<T, N>& a, const Jet<T, N>& b) {
  return a * reciprocal(b);
}
template <class T, int N>
Jet<T, N> operator/(double c, const Jet<T, N>& b) {
  return reciprocal(b) * c;
}

template <class T, int N>
Jet<T, N> exp(const Jet<T, N>& a) {
  using std::exp;
  const T e = exp(a[0]);
  std::array<T, N + 1> tower;
  tower.fill(e);
  return compose(tower, a);
}

template <class T, int N>
Jet<T, N> log(const Jet<T, N>& a) {
  using std::log;
  const double v = scalar_value(a);
  if (!(v > 0.0)) throw DomainError("log", v);
  std::array<T, N + 1> tower{};
  tower[0] = log(a[0]);
  const T r = T(1.0) / a[0];
  T rp = r;
  for (int k = 1; k <= N; ++k) {
    tower[k] = rp * ((k % 2 == 1 ? 1.0 : -1.0) * detail::factorial(k - 1));
    rp = rp * r;
  }
  return compose(tower, a);
}

template <class T, int N>
Jet<T, N> sinh(const Jet<T, N>& a) {
  using std::cosh;
  using std::sinh;
  const T s = sinh(a[0]);
  const T c = cosh(a[0]);
  std::array<T, N + 1> tower{};
  for (int k = 0; k <= N; ++k) tower[k] = (k % 2 == 0) ? s : c;
  return compose(tower, a);
}

template <class T, int N>
Jet<T, N> cosh(const Jet<T, N>& a) {
  using std::cosh;
  using std::sinh;
  const T s = sinh(a[0]);
  const T c = cosh(a[0]);
  std::array<T, N + 1> tower{};
  for (int k = 0; k <= N; ++k) tower[k] = (k % 2 == 0) ? c : s;
  return compose(tower, a);
}

template <class T, int N>
Jet<T, N> tanh(const Jet<T, N>& a) {
  return sinh(a) / cosh(a);
}

template <class T, int N>
Jet<T, N> atanh(const Jet<T, N>& a) {
  const double v = scalar_value(a);
  if (!(std::abs(v) < 1.0)) throw DomainError("atanh", v);
  return 0.5 * (log(1.0 + a) - log(1.0 - a));
}

template <class T, int N>
Jet<T, N> pow(const Jet<T, N>& a, double p) {
  using std::pow;
  const double v = scalar_value(a);
  if (!(v > 0.0)) throw DomainError("pow", v);
  std::array<T, N + 1> tower{};
  const T r = T(1.0) / a[0];
  T term = pow(a[0], p);
  double falling = 1.0;
  for (int k = 0; k <= N; ++k) {
    tower[k] = term * falling;
    falling *= (p - k);
    term = term * r;
  }
  return compose(tower, a);
}

template <class T, int N>
Jet<T, N> sqrt(const Jet<T, N>& a) {
  const double v = scalar_value(a);
  if (!(v > 0.0)) throw DomainError("sqrt", v);
  return pow(a, 0.5);
}

/// Taylor-series reversion: given the jet of y = f(x) seeded at x0, return the
/// jet of x = f^{-1}(y) seeded at y0 = f(x0).
template <int N>
Jet<double, N> invert_tower(const Jet<double, N>& forward, double x0) {
  if (forward[1] == 0.0) throw SingularityError("inverse map: vanishing first derivative");
  std::array<double, N + 1> a{};  // Taylor coefficients of f - f(x0)
  for (int k = 1; k <= N; ++k) a[k] = forward[k] / detail::factorial(k);
  std::array<double, N + 1> b{};  // Taylor coefficients of f^{-1} - x0
  b[1] = 1.0 / a[1];
  for (int m = 2; m <= N; ++m) {
    // coefficient of s^m in sum_k a_k h(s)^k with the current h
    std::array<double, N + 1> power{};
    power[0] = 1.0;
    double coeff = 0.0;
    for (int k = 1; k <= m; ++k) {
      std::array<double, N + 1> next{};
      for (int i = 0; i <= N; ++i)
        for (int j = 1; i + j <= N; ++j) next[i + j] += power[i] * b[j];
      power = next;
      coeff += a[k] * power[m];
    }
    b[m] = -coeff / a[1];
  }
  Jet<double, N> r;
  r[0] = x0;
  for (int k = 1; k <= N; ++k) r[k] = b[k] * detail::factorial(k);
  return r;
}

template <class T, int N>
std::ostream& operator<<(std::ostream& os, const Jet<T, N>& j) {
  os << '(';
  for (int k = 0; k <= N; ++k) os << (k ? ", " : "") << j[k];
  return os << ')';
}

/// Lift a jet in u into a BiJet (constant in v).
inline BiJet embed_u(const Jet3& j) {
  BiJet r;
  for (int k = 0; k <= 3; ++k) r[k] = Jet3(j[k]);
  return r;
}

/// Lift a jet in v into a BiJet (constant in u).
inline BiJet embed_v(const Jet3& j) { return BiJet(j); }

/// Swap the roles of u and v.
inline BiJet transpose(const BiJet& b) {
  BiJet r;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) r[i][j] = b[j][i];
  return r;
}

}  // namespace mirrorflux
