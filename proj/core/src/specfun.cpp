#include "whit/specfun.hpp"

#include <cmath>
#include <complex>
#include <type_traits>

#include "whit/quadrature.hpp"

namespace whit {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

template <class T>
T make_scalar(double v, int digits) {
  if constexpr (std::is_same_v<T, BigReal>)
    return BigReal(v, digits);
  else {
    (void)digits;
    return v;
  }
}

template <class T>
T gamma_of(const T& v) {
  if constexpr (std::is_same_v<T, BigReal>)
    return tgamma(v);
  else
    return std::tgamma(v);
}

// Real-order W through the half-line representation.  The integrand carries
// (s - 1/2)^(d-1); the rule's exact node distances supply s - 1/2.  For
// d below ~0.35 the integrated-by-parts variant trades the near-singular
// factor for the bounded (s - 1/2)^d.
template <class T>
T whittaker_core_real(double kappa, double mu, const T& x, int nodes, int digits) {
  using std::exp;
  using std::pow;

  const double delta_d = -kappa + mu + 0.5;
  if (delta_d < -1e-12)
    throw DomainError("whittaker_w: parameters violate -kappa + mu + 1/2 >= 0");

  const T delta = make_scalar<T>(-kappa, digits) + make_scalar<T>(mu, digits) +
                  make_scalar<T>(0.5, digits);
  const T pw = make_scalar<T>(kappa, digits) + make_scalar<T>(mu, digits) -
               make_scalar<T>(0.5, digits);
  const T half = make_scalar<T>(0.5, digits);

  QuadRule<T> rule = half_line<T>(nodes, half, x, digits);
  T acc(0);
  if (delta_d >= 0.35) {
    const T em1 = delta - T(1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const T& s = rule.x[i];
      acc += rule.w[i] * exp(-(x * s)) * pow(s + half, pw) * pow(rule.dist_lo[i], em1);
    }
    return pow(x, mu + 0.5) * acc / gamma_of(delta);
  }
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const T& s = rule.x[i];
    const T bracket = pw / (s + half) - x;
    acc += rule.w[i] * exp(-(x * s)) * pow(s + half, pw) * bracket * pow(rule.dist_lo[i], delta);
  }
  return -(pow(x, mu + 0.5) * acc / gamma_of(delta + T(1)));
}

cd cpow(double base, cd e) { return std::exp(e * std::log(base)); }

// Purely imaginary order: same contour in complex arithmetic.  The average
// of the mu and -mu representations is the real part of either.
double whittaker_core_imag(double kappa, double m, double x, int nodes) {
  const double re_delta = -kappa + 0.5;
  if (re_delta < -1e-12)
    throw DomainError("whittaker_w: imaginary order requires -kappa + 1/2 >= 0");

  const cd delta(re_delta, m);
  const cd pw(kappa - 0.5, m);

  QuadRule<double> rule = half_line(nodes, 0.5, x);
  cd acc(0.0, 0.0);
  cd value;
  if (re_delta >= 0.35) {
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double s = rule.x[i];
      acc += rule.w[i] * std::exp(-x * s) * cpow(s + 0.5, pw) * cpow(rule.dist_lo[i], delta - 1.0);
    }
    value = cpow(x, cd(0.5, m)) * acc / std::exp(log_gamma_complex(delta));
  } else {
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double s = rule.x[i];
      const cd bracket = pw / (s + 0.5) - x;
      acc += rule.w[i] * std::exp(-x * s) * cpow(s + 0.5, pw) * bracket *
             cpow(rule.dist_lo[i], delta);
    }
    value = -cpow(x, cd(0.5, m)) * acc / std::exp(log_gamma_complex(delta + 1.0));
  }
  return value.real();
}

int default_nodes_double() { return 800; }

}  // namespace

double whittaker_w(const WhitIndex& idx, double x, int nodes) {
  if (!(x > 0.0)) throw DomainError("whittaker_w: requires x > 0");
  if (nodes <= 0) nodes = default_nodes_double();
  if (idx.imaginary_order()) {
    if (idx.mu != 0.0)
      throw DomainError("whittaker_w: order must be real or purely imaginary");
    return whittaker_core_imag(idx.kappa, idx.mu_im, x, nodes);
  }
  return whittaker_core_real<double>(idx.kappa, idx.mu, x, nodes, 16);
}

BigReal whittaker_w(double kappa, double mu, const BigReal& x, int digits, int nodes) {
  if (!(x > BigReal(0.0, digits))) throw DomainError("whittaker_w: requires x > 0");
  if (nodes <= 0) nodes = 40 * digits;
  return whittaker_core_real<BigReal>(kappa, mu, x, nodes, digits);
}

double whittaker_w_deriv(const WhitIndex& idx, double x, int nodes) {
  WhitIndex lower = idx;
  lower.kappa -= 1.0;
  const double mu_sq = idx.mu * idx.mu - idx.mu_im * idx.mu_im;
  const double shift = idx.kappa - 0.5;
  const double w0 = whittaker_w(idx, x, nodes);
  const double w1 = whittaker_w(lower, x, nodes);
  return ((idx.kappa - x / 2.0) * w0 - (mu_sq - shift * shift) * w1) / x;
}

namespace {

// Upper integration cutoff for the cosh-integral: beyond t_max the integrand
// is below 1e-20 of the peak.
double bessel_cutoff(double nu, double x) {
  double t = std::acosh(1.0 + 48.0 / x);
  for (int i = 0; i < 30; ++i) t = std::acosh(1.0 + (48.0 + std::fabs(nu) * t) / x);
  return t;
}

template <class F>
double bessel_cosh_integral(double x, double t_max, F&& osc) {
  // Geometric panels track the double-exponential decay of e^{-x cosh t}.
  std::vector<double> bp{0.0};
  double step = 1.0;
  while (bp.back() + step < t_max) bp.push_back(bp.back() + step);
  bp.push_back(t_max);
  QuadRule<double> rule = composite_gauss_legendre<double>(bp, 48, 16);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.x[i];
    s += rule.w[i] * osc(t) * std::exp(-x * std::cosh(t));
  }
  return s;
}

}  // namespace

double bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k: requires x > 0");
  nu = std::fabs(nu);
  const double t_max = bessel_cutoff(nu, x);
  return bessel_cosh_integral(x, t_max, [nu](double t) { return std::cosh(nu * t); });
}

double bessel_k_imag(double m, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k_imag: requires x > 0");
  const double t_max = bessel_cutoff(0.0, x);
  return bessel_cosh_integral(x, t_max, [m](double t) { return std::cos(m * t); });
}

namespace {

template <class T>
T monic_laguerre_impl(int n, double alpha, const T& x, int digits) {
  if (n < 0) throw DomainError("monic_laguerre: requires n >= 0");
  T p0 = make_scalar<T>(1.0, digits);
  if (n == 0) return p0;
  T p1 = x - make_scalar<T>(alpha + 1.0, digits);
  for (int k = 1; k < n; ++k) {
    T p2 = (x - make_scalar<T>(2.0 * k + alpha + 1.0, digits)) * p1 -
           make_scalar<T>(k * (k + alpha), digits) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

double monic_laguerre(int n, double alpha, double x) {
  return monic_laguerre_impl<double>(n, alpha, x, 16);
}

BigReal monic_laguerre(int n, double alpha, const BigReal& x) {
  return monic_laguerre_impl<BigReal>(n, alpha, x, x.digits());
}

double laguerre_fn(int n, double alpha, double x) {
  if (!(x > 0.0)) throw DomainError("laguerre_fn: requires x > 0");
  const double scale = std::exp(-0.5 * x + alpha * std::log(x) - std::lgamma(n + 1.0));
  return scale * monic_laguerre(n, alpha, x);
}

std::complex<double> log_gamma_complex(std::complex<double> z) {
  // Lanczos, g = 7, 9 coefficients.
  static const double coef[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

  if (z.real() < 0.5) {
    // Reflection through sin; adequate away from the poles on the real axis.
    return std::log(kPi / std::sin(kPi * z)) - log_gamma_complex(1.0 - z);
  }
  z -= 1.0;
  cd sum(coef[0], 0.0);
  for (int k = 1; k < 9; ++k) sum += coef[k] / (z + static_cast<double>(k));
  const cd t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double abs_gamma_squared(std::complex<double> z) {
  return std::exp(2.0 * log_gamma_complex(z).real());
}

double incomplete_gamma_stieltjes(double a, double x) {
  if (!(x > 0.0)) throw DomainError("incomplete_gamma_stieltjes: requires x > 0");
  if (!(std::fabs(a) < 0.5))
    throw DomainError("incomplete_gamma_stieltjes: requires |a| < 1/2");

  // y^{-2a} is singular at 0: integrate [0,1] with exact node distances,
  // then the smooth tail on [1, inf).
  QuadRule<double> head = tanh_sinh(10, 0.0, 1.0);
  double s = integrate_endpoint(head, [&](double y, double dlo, double) {
    return std::pow(dlo, -2.0 * a) * std::exp(-y) / (x + y);
  });
  QuadRule<double> tail = half_line(400, 1.0, 1.0);
  s += integrate(tail, [&](double y) { return std::pow(y, -2.0 * a) * std::exp(-y) / (x + y); });
  return s;
}

}  // namespace whit
