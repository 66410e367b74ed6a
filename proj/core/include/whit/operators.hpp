#pragma once

#include <vector>

#include "whit/kernels.hpp"
#include "whit/linalg.hpp"
#include "whit/moments.hpp"
#include "whit/quadrature.hpp"

namespace whit {

/// Nystrom discretization of an integral operator: the symmetrized matrix
/// sqrt(w_i) K(x_i, x_j) sqrt(w_j) over the rule's nodes, so that spectra,
/// traces, and determinants of the matrix approximate the operator's.
struct DiscreteOp {
  QuadRule<double> rule;
  Matrix<double> mat;
  std::size_t size() const { return mat.rows(); }
};

DiscreteOp nystrom(const Kernel& k, const QuadRule<double>& rule);
DiscreteOp nystrom(const Kernel& k, double lo, double hi, int n);

/// det(I - lambda K) of the discretized operator.
double fredholm_det(const DiscreteOp& op, double lambda = 1.0);

/// Quadrature trace: sum of w_i K(x_i, x_i).
double op_trace(const DiscreteOp& op);

/// Resolvent S = K (I - K)^{-1} of a discretized operator with spectral
/// radius below one; larger operators raise DomainError reporting the
/// offending eigenvalue.  Values off the grid come from the Nystrom
/// interpolation S = K + K (I - K)^{-1} K.
class Resolvent {
 public:
  Resolvent(const Kernel& k, const DiscreteOp& op);

  /// S(x, y) anywhere on the underlying interval.
  double operator()(double x, double y) const;

  /// u = (I - K)^{-1} f interpolated at x, given f on the grid nodes and
  /// f(x) itself.
  double inverse_apply(const std::vector<double>& f_nodes, double fx, double x) const;

  const QuadRule<double>& rule() const { return rule_; }
  const Matrix<double>& matrix() const { return smat_; }

 private:
  const Kernel* kernel_;
  QuadRule<double> rule_;
  Matrix<double> inv_;   // (I - M)^{-1}
  Matrix<double> smat_;  // M (I - M)^{-1}
};

/// Hankel matrix of the half-line symbol in the Laguerre-type basis
/// phi_n(x) = x^alpha e^{-x/2} Lhat_n(x) / n! (Lhat monic Laguerre), with
/// the eps-deformed symbol.  Entries are exact-precision quadratures.
Matrix<BigReal> hankel_laguerre_matrix(const WhitIndex& idx, double alpha, int size,
                                       double eps, int digits = 0);

/// Gram matrix of the same basis functions in L^2(0, infinity).  The basis
/// is orthonormal only at alpha = 0.
Matrix<BigReal> laguerre_gram(double alpha, int size, int digits = 0);

/// Fredholm determinant identity between the factorized half-line kernel
/// and its Hankel-basis truncations: lhs is the Nystrom determinant of
/// det(I - lambda R), rhs[k] the pencil determinant
/// det(G - lambda M_k) / det(G) at truncation sizes[k].
struct DetPencilReport {
  double lhs = 0.0;
  std::vector<int> sizes;
  std::vector<double> rhs;
  std::vector<double> residual;
};
DetPencilReport factorized_det_identity(const WhitIndex& idx, double eps, double lambda,
                                        double alpha, const std::vector<int>& sizes,
                                        int nodes = 129, double cutoff = 80.0);

/// Traces of the two sides of the same identity (the lambda-linear term):
/// first the half-line kernel trace, then the Hankel symbol trace.
std::pair<double, double> factorized_trace_pair(const WhitIndex& idx, double eps);

/// Determinant identity between the log-coordinate kernel T and the
/// anticommutator of the two scalar Hankel operators with symbols
/// W(e^t) at the upper and lower first index.
struct PairDetReport {
  double det_direct = 0.0;  // det(I - T)
  double det_pair = 0.0;    // det(I - H1 H2 - H2 H1)
  double residual = 0.0;
  double entry_gap = 0.0;   // max |T - (H1 H2 + H2 H1)| entrywise
};
PairDetReport log_pair_det_identity(const WhitIndex& idx, double t_hi = 4.5, int n = 100);

/// Endpoint derivatives of log det(I - K) on [a1, a2] by central finite
/// differences, next to the resolvent diagonal values that the
/// differential identity predicts (+S(a1,a1) and -S(a2,a2)).
struct EndpointDerivative {
  double fd_lo = 0.0, resolvent_lo = 0.0;
  double fd_hi = 0.0, resolvent_hi = 0.0;
};
EndpointDerivative log_det_endpoint_derivative(const Kernel& k, double a1, double a2,
                                               int n, double h = 0.0);

/// Residual of the diagonal resolvent identity
///   x d/dx S(x,x) = -P(x) Q(x) + (S^2)(x,x) + lo S(x,lo)^2 - hi S(x,hi)^2
/// for the bare Whittaker kernel restricted to [lo, hi], evaluated at x.
/// The endpoint terms belong to the finite window and vanish as it grows to
/// the whole half line.  The derivative uses a central step h (0 picks
/// 1e-3 x), so the residual floor is O(h^2).
double resolvent_diag_identity(const WhitIndex& idx, double lo, double hi, double x, int n,
                               double h = 0.0);

/// Largest eigenvalue of the discretized composition of the smoothing
/// kernel with its adjoint on [lo, cutoff], on a log-coordinate grid of n
/// nodes.  The value increases toward pi^2 sec^2(pi a) as the window grows
/// and never exceeds it; the gap closes only logarithmically, so the lower
/// endpoint dominates (lo = 1e-4 plateaus near 0.54 of the bound at a = 0,
/// lo = 1e-13 reaches 0.91 of it).
double composed_norm(double a, double cutoff, int n, double lo = 1e-4);

/// Eigenrelation of the smoothing kernel on the functions
/// f_{a,m}(x) = W_{a,im}(x) / x: the adjoint-side kernel maps f_{-a,m} to
/// |Gamma(1/2 - a + im)|^2 f_{a,m}.  Returns the eigenvalue and the largest
/// relative residual over the sample points.
struct EigenRelation {
  double eigenvalue = 0.0;
  double max_rel_residual = 0.0;
};
EigenRelation smoothing_eigenrelation(double a, double m, const std::vector<double>& xs,
                                      int nodes = 600);

/// Entrywise gap between the numeric inverse of I + [[0, R_a], [-R_{-a}, 0]]
/// and its four closed-form blocks.
double block_inverse_gap(double a, double lo, double hi, int n);

/// Max entrywise |R^T + R| for the discretized block operator.
double block_skew_gap(double a, double lo, double hi, int n);

}  // namespace whit
