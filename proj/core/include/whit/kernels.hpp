#pragma once

#include <whit/linalg.hpp>
#include <whit/moments.hpp>
#include <whit/quadrature.hpp>
#include <whit/specfun.hpp>

#include <vector>

namespace whit {

/// Evaluable two-point kernel on an interval of the half line.
class Kernel {
public:
  virtual ~Kernel() = default;

  virtual double operator()(double x, double y) const = 0;

  /// Diagonal value; overridden where the diagonal is a limit formula.
  virtual double diag(double x) const { return (*this)(x, x); }

  virtual bool symmetric() const { return true; }

  /// Kernel values at all node pairs of a quadrature rule.  Implementations
  /// with endpoint singularities use the rule's endpoint distances, which
  /// stay accurate where the node coordinates cannot.
  virtual Matrix<double> values_on(const QuadRule<double>& rule) const;
};

/// Difference-quotient kernel built from the Whittaker pair at (kappa, mu)
/// and (kappa-1, mu).  One family, four normalizations:
///   general   ((kappa-1/2)^2 - mu^2) sqrt(xy) [lo(x)hi(y) - hi(x)lo(y)]/(x-y)
///   composed  Gamma(1-2a) [hi(x)lo(y) - lo(x)hi(y)]/((x-y) sqrt(xy))
///             at kappa = a + 1/2, mu = a
///   dpp       cos^2(pi a)/pi^2 times composed; the unit-norm positive kernel
///             of the point process
///   bare      [hi(x)lo(y) - lo(x)hi(y)]/(x-y)
/// A purely imaginary order enters the prefactor only through mu^2 and the
/// factors are the real symmetrized Whittaker values, so values stay real.
class WhittakerKernel : public Kernel {
public:
  enum class Form { general, composed, dpp, bare };

  WhittakerKernel(const WhitIndex& idx, Form form);

  /// composed / dpp forms at kappa = a + 1/2, mu = a;  |a| < 1/2.
  static WhittakerKernel composed(double a);
  static WhittakerKernel dpp(double a);

  double operator()(double x, double y) const override;
  double diag(double x) const override;
  Matrix<double> values_on(const QuadRule<double>& rule) const override;

  const WhitIndex& index() const { return hi_; }
  Form form() const { return form_; }

private:
  double value_from(double x, double y, double whi_x, double wlo_x, double whi_y,
                    double wlo_y) const;
  double diag_from(double x, double whi, double wlo, double wlolo) const;
  double root_factor(double x, double y) const;

  WhitIndex hi_;
  WhitIndex lo_;
  WhitIndex lolo_;
  Form form_;
  double mu_sq_ = 0.0;   // mu^2 as a real number, negative for imaginary order
  double scale_ = 1.0;   // prefactor including the sign convention of the form
};

/// Whittaker pair kernel in logarithmic coordinates with an overall factor 2:
/// value(t, u) = 2 [hi(e^t) lo(e^u) - lo(e^t) hi(e^u)] / (e^t - e^u).
class LogWhittakerKernel final : public Kernel {
public:
  explicit LogWhittakerKernel(const WhitIndex& idx) : bare_(idx, WhittakerKernel::Form::bare) {}

  double operator()(double t, double u) const override {
    return 2.0 * bare_(std::exp(t), std::exp(u));
  }
  double diag(double t) const override { return 2.0 * bare_.diag(std::exp(t)); }
  Matrix<double> values_on(const QuadRule<double>& rule) const override;

private:
  WhittakerKernel bare_;
};

/// Finite-rank Christoffel-Darboux kernel of the deformed Jacobi weight,
/// sum_{j<N} P_j(x) P_j(y) / gamma_j, optionally carrying sqrt(w(x) w(y)).
class CDJacobiKernel final : public Kernel {
public:
  CDJacobiKernel(const WeightSpec& spec, int N, bool weighted, int digits = 0);

  double operator()(double x, double y) const override;
  int rank() const { return rank_; }
  const WeightSpec& weight() const { return spec_; }

  /// The polynomial part alone (no weight factors).
  double cd_sum(double x, double y) const;

private:
  void eval_polys(double x, std::vector<double>& p) const;

  WeightSpec spec_;
  int rank_;
  bool weighted_;
  std::vector<double> alpha_, beta_, gamma_;
};

/// Gap determinant det(I - J_N 1_(0,s)) of the weighted finite-rank kernel,
/// computed exactly through moments: entries
/// delta_jk - int_0^s P_j P_k w / sqrt(gamma_j gamma_k).
double cd_gap_det(const WeightSpec& spec, int N, double s, int digits = 0);

/// One-sided smoothing kernel (y/x)^a e^{-(x+y)/2} / (x+y) on (0,inf);
/// the adjoint is the kernel with a negated.
class RaKernel final : public Kernel {
public:
  explicit RaKernel(double a);

  double operator()(double x, double y) const override;
  bool symmetric() const override { return a_ == 0.0; }
  double a_param() const { return a_; }

private:
  double a_;
};

/// Symmetric positive kernel g(s) g(u) / ((s+u) Gamma(mu-kappa+1/2)) on
/// (1/2,inf)^2 with g(s) = e^{-eps s} (s+1/2)^{(kappa+mu-1/2)/2}
/// (s-1/2)^{(-kappa+mu-1/2)/2}.  Requires a real order with
/// mu - kappa + 1/2 > 0.
class REpsKernel final : public Kernel {
public:
  REpsKernel(const WhitIndex& idx, double eps);

  double operator()(double s, double u) const override;
  /// Evaluation with the distances to the left endpoint supplied exactly.
  double eval(double s, double s_dist, double u, double u_dist) const;
  double g(double s, double s_dist) const;
  Matrix<double> values_on(const QuadRule<double>& rule) const override;

private:
  double kappa_, mu_, eps_;
  double p_plus_, p_minus_, gamma_norm_;
};

/// Symmetrized integral of the Whittaker pair along rays,
/// int_1^inf [sqrt(x) hi(sx) sqrt(y) lo(sy) + sqrt(x) lo(sx) sqrt(y) hi(sy)]
/// ds/(2s), which reproduces sqrt(xy) [hi(x)lo(y) - lo(x)hi(y)]/(x-y).
double factorization_rhs(const WhitIndex& idx, double x, double y, int nodes = 0);

/// The matching closed form sqrt(xy) [hi(x)lo(y) - lo(x)hi(y)]/(x-y).
double factorization_lhs(const WhitIndex& idx, double x, double y);

}  // namespace whit
