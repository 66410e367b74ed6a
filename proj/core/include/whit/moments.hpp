#pragma once

#include <vector>

#include "whit/bigreal.hpp"
#include "whit/errors.hpp"

namespace whit {

/// Deformed Jacobi weight x^b (1-x)^a e^{-t/x} on (0,1), optionally carrying
/// the additional exponential deformation controlled by epsilon (see
/// deformed_weight).
struct WeightSpec {
  double a = 0.0;        // exponent of (1-x); a > -1
  double b = 0.0;        // exponent of x; b > -1
  double t = 0.0;        // strength of the essential singularity at 0
  double epsilon = 0.0;  // extra exponential deformation

  void validate() const;
};

/// w(x) * exp(-2 eps (1/x - 1/2)) at a point of (0,1).
double deformed_weight(const WeightSpec& spec, double x);

/// Moment mu_m = Int_0^1 x^(m+b) (1-x)^a e^(-t/x) dx by quadrature.
/// For t > 0 the substitution x = 1/xi turns the essential singularity into
/// an exponential tail:
///   mu_m = Int_1^inf xi^(-2-a-b-m) (xi-1)^a e^(-t xi) dxi,
/// which also extends the definition to negative m.  For t = 0 the direct
/// Beta-type integral is used and m + b > -1 is required.
BigReal moment_quad(const WeightSpec& spec, int m, int digits);

/// Same moment through the closed form (t > 0)
///   mu_m = Gamma(a+1) e^(-t/2) t^((b+m)/2) W[kappa, mu](t),
///   kappa = -(2a+b+m+2)/2, mu = -(b+m+1)/2.
BigReal moment_whittaker(const WeightSpec& spec, int m, int digits);

/// Moment of the weight restricted to [s, 1] (t may be zero).
BigReal restricted_moment(const WeightSpec& spec, int m, double s, int digits);

/// Moments 0..count-1 of a weight, computed once and shared.
struct MomentTable {
  WeightSpec spec;
  int digits = 0;
  std::vector<BigReal> values;  // index m

  const BigReal& at(int m) const;
};

MomentTable make_moment_table(const WeightSpec& spec, int count, int digits);

/// Working precision for Hankel determinants of dimension N.
int hankel_digits(int N);

/// Hankel determinant det[ mu_(j+k) ]_(j,k=0..N-1).  digits <= 0 picks
/// hankel_digits(N).  Throws PrecisionError when the LU pivot spread
/// exceeds 10^(digits-10), i.e. the working precision is exhausted.
BigReal hankel_det(const WeightSpec& spec, int N, int digits = 0);

/// Same determinant from a precomputed table (needs indices to 2N-2).
BigReal hankel_det(const MomentTable& table, int N);

/// Hankel determinant of the weight restricted to [s, 1]; the ratio
/// restricted(s)/restricted(0) is free of all ensemble prefactors.
BigReal hankel_det_restricted(const WeightSpec& spec, int N, double s, int digits = 0);

/// Monic orthogonal polynomials of the weight, from its moments:
/// P_(j+1) = (x - alpha_j) P_j - beta_j P_(j-1), squared norms gamma_j.
struct OrthoPoly {
  std::vector<BigReal> alpha;  // j = 0..N-1
  std::vector<BigReal> beta;   // j = 0..N-1, beta[0] = 0 by convention
  std::vector<BigReal> gamma;  // squared norms, j = 0..N-1
};

/// Requires moments to index 2N-1.  Throws PrecisionError if some beta_j
/// fails to be positive (moment matrix numerically indefinite).
OrthoPoly orthopoly_from_moments(const MomentTable& table, int N);

/// Scaling constant tying the eps-deformed Laguerre-side determinant to the
/// deformed Jacobi Hankel determinant: e^(eps N) Gamma(mu-kappa+1/2)^(-N)
/// prod_(j<N) [Gamma(j+alpha+1)/Gamma(j+1)]^2.
BigReal deformation_constant(double kappa, double mu, double alpha, int N, double eps,
                             int digits);

}  // namespace whit
