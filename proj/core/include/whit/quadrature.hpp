#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "whit/bigreal.hpp"
#include "whit/errors.hpp"

namespace whit {

enum class QuadKind { gauss_legendre, tanh_sinh, half_line, composite };

/// Quadrature rule, generic over double and BigReal.
///
/// Besides nodes and weights the rule carries the exact distance from each
/// node to the interval endpoints.  Tanh-sinh nodes cluster exponentially
/// close to the endpoints, where computing (x - lo) from the rounded node
/// loses every digit; integrands with algebraic endpoint factors must be
/// evaluated through these distances instead.
template <class T>
struct QuadRule {
  QuadKind kind = QuadKind::gauss_legendre;
  std::vector<T> x, w;
  std::vector<T> dist_lo, dist_hi;  // dist_hi is meaningless for half_line
  T lo = T(0), hi = T(0);           // hi unused for half_line

  std::size_t size() const { return x.size(); }
};

/// Integrate f(x) against the rule.
template <class T, class F>
T integrate(const QuadRule<T>& q, F&& f) {
  T s(0);
  for (std::size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * f(q.x[i]);
  return s;
}

/// Integrate f(x, dist_lo, dist_hi); use for integrands with endpoint
/// singularities such as (x-lo)^p or (hi-x)^p.
template <class T, class F>
T integrate_endpoint(const QuadRule<T>& q, F&& f) {
  T s(0);
  for (std::size_t i = 0; i < q.x.size(); ++i)
    s += q.w[i] * f(q.x[i], q.dist_lo[i], q.dist_hi[i]);
  return s;
}

namespace detail {

template <class T>
int scalar_digits() {
  if constexpr (std::is_same_v<T, BigReal>)
    return BigReal::default_digits();
  else
    return 16;
}

// double overflows exp() past ~18 digits of tanh-sinh depth; clamp quietly.
template <class T>
int clamp_digits(int digits) {
  if constexpr (!std::is_same_v<T, BigReal>)
    return digits > 18 ? 18 : digits;
  else
    return digits;
}

template <class T>
T pow10(int e, int digits) {
  if constexpr (std::is_same_v<T, BigReal>)
    return pow(BigReal(10.0, digits), static_cast<long>(e));
  else
    return std::pow(10.0, e < -300 ? -300 : e);
}

template <class T>
T quad_pi(int digits) {
  if constexpr (std::is_same_v<T, BigReal>)
    return BigReal::pi(digits);
  else
    return 3.14159265358979323846;
}

}  // namespace detail

/// Gauss-Legendre rule with n nodes on [a, b].  Nodes are found by Newton
/// iteration on the three-term recurrence, seeded by the Chebyshev estimate,
/// and converge to the working precision of T.
template <class T>
QuadRule<T> gauss_legendre(int n, const T& a, const T& b, int digits = 0) {
  using std::abs;
  using std::cos;
  if (n < 1) throw DomainError("gauss_legendre: need n >= 1");
  if (digits <= 0) digits = detail::scalar_digits<T>();
  digits = detail::clamp_digits<T>(digits);

  QuadRule<T> q;
  q.kind = QuadKind::gauss_legendre;
  q.lo = a;
  q.hi = b;
  const T half = (b - a) / T(2);
  const T mid = (a + b) / T(2);
  const T tol = detail::pow10<T>(-(digits + 1), digits);
  const double pi_d = 3.14159265358979323846;

  q.x.reserve(n);
  q.w.reserve(n);
  q.dist_lo.reserve(n);
  q.dist_hi.reserve(n);

  for (int i = 0; i < n; ++i) {
    // Root of P_n in (-1, 1), ascending.
    T t(std::cos(pi_d * (n - i - 0.25) / (n + 0.5)));
    T dp(0);
    T prev_step(2);
    for (int iter = 0; iter < 200; ++iter) {
      // Evaluate P_n and P_n' at t via the recurrence.
      T p0(1), p1 = t;
      for (int k = 2; k <= n; ++k) {
        T p2 = (T(2 * k - 1) * t * p1 - T(k - 1) * p0) / T(k);
        p0 = p1;
        p1 = p2;
      }
      dp = T(n) * (t * p1 - p0) / (t * t - T(1));
      T step = p1 / dp;
      t -= step;
      T mag = abs(step);
      // Quadratic convergence stalls at rounding level; accept stagnation.
      if (mag < tol || (iter > 2 && mag >= prev_step)) break;
      prev_step = mag;
      if (iter == 199) throw ConvergenceError("gauss_legendre: Newton did not converge");
    }
    q.x.push_back(mid + half * t);
    q.w.push_back(T(2) / ((T(1) - t * t) * dp * dp) * half);
    q.dist_lo.push_back(half * (T(1) + t));
    q.dist_hi.push_back(half * (T(1) - t));
  }
  return q;
}

inline QuadRule<double> gauss_legendre(int n, double a, double b) {
  return gauss_legendre<double>(n, a, b, 16);
}

/// Tanh-sinh rule on [a, b] with 2^(levels-1) node pairs plus the center
/// (levels = 10 gives 1025 nodes).  The trapezoid cutoff is chosen from the
/// requested precision so the endpoint distances bottom out near 10^-digits.
template <class T>
QuadRule<T> tanh_sinh(int levels, const T& a, const T& b, int digits = 0) {
  using std::cosh;
  using std::exp;
  using std::sinh;
  if (levels < 2 || levels > 24) throw DomainError("tanh_sinh: levels out of range");
  if (digits <= 0) digits = detail::scalar_digits<T>();
  digits = detail::clamp_digits<T>(digits);

  QuadRule<T> q;
  q.kind = QuadKind::tanh_sinh;
  q.lo = a;
  q.hi = b;
  const T half = (b - a) / T(2);
  const T pi_half = detail::quad_pi<T>(digits) / T(2);

  // Truncating the trapezoid at t_max leaves an endpoint gap of width
  // 10^(-u_need*2/ln10).  With an integrable endpoint factor d^p the missed
  // mass is gap^(1+p), so the gap must undershoot the target precision by
  // 1/(1+p); the factor 3 covers exponents down to p = -2/3.
  const double u_need = 0.5 * std::log(10.0) * (3 * digits + 8) + 1.0;
  const double t_max = std::asinh(u_need / (0.5 * 3.14159265358979323846));
  const long half_count = 1L << (levels - 1);
  const T h = T(t_max) / T(half_count);

  const std::size_t n = static_cast<std::size_t>(2 * half_count + 1);
  q.x.reserve(n);
  q.w.reserve(n);
  q.dist_lo.reserve(n);
  q.dist_hi.reserve(n);

  for (long k = -half_count; k <= half_count; ++k) {
    const T t = T(k) * h;
    const T u = pi_half * sinh(t);
    // 1 -/+ tanh(u) without cancellation.
    const T e2u = exp(u + u);
    const T dlo_unit = T(2) * e2u / (T(1) + e2u);
    const T dhi_unit = T(2) / (T(1) + e2u);
    const T dlo = half * dlo_unit;
    const T dhi = half * dhi_unit;
    const T sech = T(2) / (exp(u) + exp(-u));
    const T wt = h * pi_half * cosh(t) * sech * sech * half;

    T node = k <= 0 ? a + dlo : b - dhi;
    // In double the deepest nodes round onto the endpoints; keep them
    // strictly interior so integrands defined on the open interval stay safe.
    if constexpr (!std::is_same_v<T, BigReal>) {
      if (node <= a) node = std::nextafter(a, b);
      if (node >= b) node = std::nextafter(b, a);
    }
    q.x.push_back(node);
    q.w.push_back(wt);
    q.dist_lo.push_back(dlo);
    q.dist_hi.push_back(dhi);
  }
  return q;
}

inline QuadRule<double> tanh_sinh(int levels, double a, double b) {
  return tanh_sinh<double>(levels, a, b, 16);
}

/// Rule for [a, infinity): the rational map s = a + u / (scale (1-u)) applied
/// to a tanh-sinh rule on (0, 1).  `scale` should match the decay rate of the
/// integrand (for exp(-c s) tails use scale = c).  Roughly n nodes.
template <class T>
QuadRule<T> half_line(int n, const T& a, const T& scale, int digits = 0) {
  if (n < 8) throw DomainError("half_line: need n >= 8");
  if (!(scale > T(0))) throw DomainError("half_line: need scale > 0");
  if (digits <= 0) digits = detail::scalar_digits<T>();

  int levels = 2;
  while ((1L << (levels - 1)) * 2 + 1 < n && levels < 24) ++levels;
  QuadRule<T> unit = tanh_sinh<T>(levels, T(0), T(1), digits);

  QuadRule<T> q;
  q.kind = QuadKind::half_line;
  q.lo = a;
  q.hi = T(0);
  const std::size_t m = unit.size();
  q.x.reserve(m);
  q.w.reserve(m);
  q.dist_lo.reserve(m);
  q.dist_hi.assign(m, T(0));

  for (std::size_t i = 0; i < m; ++i) {
    const T& u = unit.dist_lo[i];   // exact u
    const T& v = unit.dist_hi[i];   // exact 1-u
    const T dlo = u / (scale * v);  // s - a
    T node = a + dlo;
    if constexpr (!std::is_same_v<T, BigReal>) {
      if (node <= a) node = std::nextafter(a, a + T(1));
    }
    q.x.push_back(node);
    q.w.push_back(unit.w[i] / (scale * v * v));
    q.dist_lo.push_back(dlo);
  }
  return q;
}

inline QuadRule<double> half_line(int n, double a, double scale) {
  return half_line<double>(n, a, scale, 16);
}

/// Gauss-Legendre panels between consecutive breakpoints.  Endpoint
/// distances are relative to the outer interval.
template <class T>
QuadRule<T> composite_gauss_legendre(const std::vector<T>& breakpoints, int per_panel,
                                     int digits = 0) {
  if (breakpoints.size() < 2) throw DomainError("composite_gauss_legendre: need >= 2 breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw DomainError("composite_gauss_legendre: breakpoints must increase");

  QuadRule<T> q;
  q.kind = QuadKind::composite;
  q.lo = breakpoints.front();
  q.hi = breakpoints.back();
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    QuadRule<T> panel = gauss_legendre<T>(per_panel, breakpoints[p], breakpoints[p + 1], digits);
    for (std::size_t i = 0; i < panel.size(); ++i) {
      q.x.push_back(panel.x[i]);
      q.w.push_back(panel.w[i]);
      q.dist_lo.push_back(panel.x[i] - q.lo);
      q.dist_hi.push_back(q.hi - panel.x[i]);
    }
  }
  return q;
}

}  // namespace whit
