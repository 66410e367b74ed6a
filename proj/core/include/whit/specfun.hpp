#pragma once

#include <complex>

#include "whit/bigreal.hpp"
#include "whit/errors.hpp"

namespace whit {

/// Index pair of the confluent family.  The second index may be purely
/// imaginary: set mu_im and leave mu at zero.
struct WhitIndex {
  double kappa = 0.0;
  double mu = 0.0;
  double mu_im = 0.0;

  bool imaginary_order() const { return mu_im != 0.0; }
};

/// Whittaker W via the Laplace-type half-line representation
///
///   W(x) / x^(mu+1/2) = Gamma(d)^-1 Int_{1/2}^inf e^{-sx}
///                       (s+1/2)^(kappa+mu-1/2) (s-1/2)^(d-1) ds,
///   d = -kappa + mu + 1/2,
///
/// valid for Re(d) >= 0 (the boundary d = 0 and small d are handled by an
/// integrated-by-parts variant whose integrand carries (s-1/2)^d instead).
/// For purely imaginary mu the integral is evaluated in complex arithmetic
/// and the mu <-> -mu average is taken, which is its real part.
/// `nodes` <= 0 picks the default grid size.
double whittaker_w(const WhitIndex& idx, double x, int nodes = 0);

/// Same representation evaluated in arbitrary precision (real mu only).
BigReal whittaker_w(double kappa, double mu, const BigReal& x, int digits, int nodes = 0);

/// d/dx of Whittaker W through the index-lowering relation
///   x W'(x) = (kappa - x/2) W(x) - (mu^2 - (kappa-1/2)^2) W_[kappa-1](x).
double whittaker_w_deriv(const WhitIndex& idx, double x, int nodes = 0);

/// Modified Bessel K of real order via K_nu(x) = Int_0^inf cosh(nu t) e^{-x cosh t} dt.
double bessel_k(double nu, double x);

/// Modified Bessel K of purely imaginary order i*m (real-valued).
double bessel_k_imag(double m, double x);

/// Weighted Laguerre function e^{-x/2} x^alpha Lhat_n(x) / n!, with Lhat_n
/// the monic generalized Laguerre polynomial.
double laguerre_fn(int n, double alpha, double x);

/// Monic generalized Laguerre polynomial by the three-term recurrence.
double monic_laguerre(int n, double alpha, double x);
BigReal monic_laguerre(int n, double alpha, const BigReal& x);

/// log Gamma on the complex plane (Lanczos; reflection for Re z < 1/2).
std::complex<double> log_gamma_complex(std::complex<double> z);

/// |Gamma(x + iy)|^2 through log_gamma_complex.
double abs_gamma_squared(std::complex<double> z);

/// Stieltjes-type incomplete-gamma transform
///   Int_0^inf y^{-2a} e^{-y} / (x+y) dy,  |a| < 1/2, x > 0.
double incomplete_gamma_stieltjes(double a, double x);

}  // namespace whit
