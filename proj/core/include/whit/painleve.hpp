#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "whit/bigreal.hpp"
#include "whit/moments.hpp"

namespace whit {

/// How the affine shift (d1, d2) entering the restricted-ensemble sigma
/// function is chosen.
enum class ShiftMode { fit, closed_form, given };

/// Uniform grid of determinant samples with the scaled log-derivative H at
/// every node (exact route) and its central-difference first and second
/// derivatives on the interior nodes.  H1[k] and H2[k] belong to
/// t_grid[k+1].  `fit` holds (d1, d2) when the builder was asked to fit the
/// affine shift of the restricted ensemble.
struct SigmaSample {
  std::vector<double> t_grid;
  std::vector<BigReal> logdet;
  std::vector<double> H;
  std::vector<double> H1, H2;
  int N = 0;
  double a = 0.0, b = 0.0;
  std::optional<std::pair<double, double>> fit;
};

/// Samples the deformed-weight determinant on a uniform grid of `count`
/// nodes (at least 7) over [t_lo, t_hi], 0 < t_lo.  The determinant is
/// strictly decreasing in t, which the grid exposes for checking.
/// digits <= 0 selects 120.
SigmaSample sample_sigma_pv(int N, double a, double b, double t_lo, double t_hi, int count,
                            int digits = 0);

/// Same for the restriction-deformed determinant on [s_lo, s_hi] inside
/// (0, 1); the determinant decreases in s as the window [s, 1] shrinks.
/// with_fit additionally least-squares fits (d1, d2) over all nodes.
SigmaSample sample_sigma_pvi(int N, double a, double b, double s_lo, double s_hi, int count,
                             bool with_fit = false, int digits = 0);

/// Residual report for the quartic second-order identity satisfied by the
/// scaled log-derivative of the deformed-weight Hankel determinant.
struct SigmaPVReport {
  int N = 0;
  double a = 0.0, b = 0.0, t0 = 0.0, h = 0.0;
  double residual_exact = 0.0;  // moment-shift derivative route
  double residual_fd = 0.0;     // log-determinant stencil route
  double normalizer = 0.0;      // largest |term| on the exact route
};

/// Checks the identity at t0 two ways.  The exact route differentiates the
/// moment matrix in closed form (each t-derivative shifts the moment index
/// down by one and flips the sign) and assembles log-determinant derivatives
/// through the trace formula; its residual is limited only by quadrature
/// precision.  The stencil route recomputes the determinant on a centered
/// grid of the given width (5 or 7 points) and differentiates numerically;
/// its residual shrinks like h^2 (5 points) or h^4 (7 points).
/// Both residuals are normalized by the largest term of the identity.
/// digits <= 0 selects 120.
SigmaPVReport sigma_pv_residual(int N, double a, double b, double t0, double h = 1e-3,
                                int stencil = 5, int digits = 0);

/// Residual report for the quartic identity satisfied by the shifted
/// log-derivative of the restriction-deformed Hankel determinant.
struct SigmaPVIReport {
  int N = 0;
  double a = 0.0, b = 0.0, s0 = 0.0, h = 0.0;
  double d1 = 0.0, d2 = 0.0;  // affine shift actually used
  ShiftMode mode = ShiftMode::fit;
  double residual_exact = 0.0;  // exact-derivative route; in fit mode the
                                // largest residual across the fit stencil
  double residual_fd = 0.0;     // stencil route at s0
  double normalizer = 0.0;
};

/// Affine shift that closes the restricted-ensemble identity in closed form:
///   d1 = -(2N(N+a+b) + a(a+b))/4,   d2 = ((2N+a+b)/2)^2.
std::pair<double, double> sigma_pvi_shift(int N, double a, double b);

/// Checks the restricted-ensemble identity at s0.  The restriction endpoint
/// is the deformation variable: d/ds of each moment is -w(s) s^m, a rank-one
/// update, so the exact route needs no numerical differentiation.  The
/// stencil route finite-differences the restricted determinant (residual
/// ~h^2).  mode picks the affine shift: `fit` performs a deterministic
/// least-squares fit of (d1, d2) over the 5-point stencil, `closed_form`
/// uses sigma_pvi_shift, `given` takes the caller's values.
/// digits <= 0 selects 120.
SigmaPVIReport sigma_pvi_residual(int N, double a, double b, double s0, double h = 1e-3,
                                  ShiftMode mode = ShiftMode::fit, double d1 = 0.0,
                                  double d2 = 0.0, int digits = 0);

/// Comparison of the Hankel determinant against the Wronskian assembled from
/// a single high moment and its t-derivatives.
struct WronskianReport {
  BigReal wronskian;
  BigReal hankel;  // det[ mu_(i+j+seed-2N+2) ]
  double rel_gap = 0.0;
  int seed = 0;  // moment index whose derivative chain fills the rows
};

/// Builds the N x N Wronskian-style matrix W_ij = d^(i+j)/dt^(i+j) mu_seed
/// = (-1)^(i+j) mu_(seed-i-j) and compares its determinant with the Hankel
/// determinant of matching index range.  seed = 2N-2 (the default, seed < 0)
/// reproduces det[mu_(i+j)] exactly with sign +1; larger seeds reproduce the
/// correspondingly shifted determinant.  Requires seed >= 2N-2 and t0 > 0.
WronskianReport wronskian_check(int N, double a, double b, double t0, int digits = 0,
                                int seed = -1);

}  // namespace whit
