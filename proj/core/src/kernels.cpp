#include <whit/kernels.hpp>

#include <whit/errors.hpp>

#include <cmath>
#include <limits>

namespace whit {

namespace {

// Relative separation below which the difference quotient switches to the
// derivative form: cancellation in the bracket grows like x - y.
constexpr double kDiagSwitch = 1e-6;

bool near_diagonal(double x, double y) {
  return std::fabs(x - y) < kDiagSwitch * std::max(std::fabs(x), std::fabs(y));
}

}  // namespace

Matrix<double> Kernel::values_on(const QuadRule<double>& rule) const {
  const int n = static_cast<int>(rule.x.size());
  Matrix<double> out(n, n);
  for (int i = 0; i < n; ++i) {
    out(i, i) = diag(rule.x[i]);
    for (int j = i + 1; j < n; ++j) {
      const double v = (*this)(rule.x[i], rule.x[j]);
      out(i, j) = v;
      out(j, i) = symmetric() ? v : (*this)(rule.x[j], rule.x[i]);
    }
  }
  return out;
}

WhittakerKernel::WhittakerKernel(const WhitIndex& idx, Form form)
    : hi_(idx),
      lo_{idx.kappa - 1.0, idx.mu, idx.mu_im},
      lolo_{idx.kappa - 2.0, idx.mu, idx.mu_im},
      form_(form) {
  mu_sq_ = idx.mu * idx.mu - idx.mu_im * idx.mu_im;
  const double half_sq = (idx.kappa - 0.5) * (idx.kappa - 0.5);
  switch (form_) {
    case Form::general:
      // display order lo(x)hi(y) - hi(x)lo(y) is the negated bracket
      scale_ = -(half_sq - mu_sq_);
      break;
    case Form::composed:
    case Form::dpp: {
      if (idx.imaginary_order())
        throw DomainError("composed kernel form requires a real order");
      const double a = idx.mu;
      if (std::fabs(idx.kappa - (a + 0.5)) > 1e-14)
        throw DomainError("composed kernel form requires kappa = mu + 1/2");
      if (std::fabs(a) >= 0.5) throw DomainError("composed kernel form requires |a| < 1/2");
      scale_ = std::tgamma(1.0 - 2.0 * a);
      if (form_ == Form::dpp) {
        const double c = std::cos(M_PI * a);
        scale_ *= c * c / (M_PI * M_PI);
      }
      break;
    }
    case Form::bare:
      scale_ = 1.0;
      break;
  }
}

WhittakerKernel WhittakerKernel::composed(double a) {
  return WhittakerKernel({a + 0.5, a, 0.0}, Form::composed);
}

WhittakerKernel WhittakerKernel::dpp(double a) {
  return WhittakerKernel({a + 0.5, a, 0.0}, Form::dpp);
}

double WhittakerKernel::root_factor(double x, double y) const {
  switch (form_) {
    case Form::general:
      return std::sqrt(x * y);
    case Form::composed:
    case Form::dpp:
      return 1.0 / std::sqrt(x * y);
    case Form::bare:
      return 1.0;
  }
  return 1.0;
}

double WhittakerKernel::value_from(double x, double y, double whi_x, double wlo_x,
                                   double whi_y, double wlo_y) const {
  const double bracket = whi_x * wlo_y - wlo_x * whi_y;
  return scale_ * root_factor(x, y) * bracket / (x - y);
}

// Bracket limit on the diagonal, hi'(x) lo(x) - hi(x) lo'(x), with the
// derivatives taken through the index-lowering relation
// z W' = (kappa - z/2) W - (mu^2 - (kappa-1/2)^2) W_lowered.
double WhittakerKernel::diag_from(double x, double whi, double wlo, double wlolo) const {
  const double chi = hi_.kappa - 0.5;
  const double clo = lo_.kappa - 0.5;
  const double whi_p = ((hi_.kappa - x / 2.0) * whi - (mu_sq_ - chi * chi) * wlo) / x;
  const double wlo_p = ((lo_.kappa - x / 2.0) * wlo - (mu_sq_ - clo * clo) * wlolo) / x;
  return scale_ * root_factor(x, x) * (whi_p * wlo - whi * wlo_p);
}

double WhittakerKernel::operator()(double x, double y) const {
  if (x == y) return diag(x);
  if (near_diagonal(x, y)) {
    const double m = 0.5 * (x + y);
    const double whi = whittaker_w(hi_, m);
    const double wlo = whittaker_w(lo_, m);
    const double wlolo = whittaker_w(lolo_, m);
    // midpoint derivative form; root factor keeps the off-diagonal arguments
    const double d = diag_from(m, whi, wlo, wlolo) / root_factor(m, m);
    return d * root_factor(x, y);
  }
  return value_from(x, y, whittaker_w(hi_, x), whittaker_w(lo_, x), whittaker_w(hi_, y),
                    whittaker_w(lo_, y));
}

double WhittakerKernel::diag(double x) const {
  return diag_from(x, whittaker_w(hi_, x), whittaker_w(lo_, x), whittaker_w(lolo_, x));
}

Matrix<double> WhittakerKernel::values_on(const QuadRule<double>& rule) const {
  const int n = static_cast<int>(rule.x.size());
  std::vector<double> whi(n), wlo(n), wlolo(n);
  for (int i = 0; i < n; ++i) {
    whi[i] = whittaker_w(hi_, rule.x[i]);
    wlo[i] = whittaker_w(lo_, rule.x[i]);
    wlolo[i] = whittaker_w(lolo_, rule.x[i]);
  }
  Matrix<double> out(n, n);
  for (int i = 0; i < n; ++i) {
    out(i, i) = diag_from(rule.x[i], whi[i], wlo[i], wlolo[i]);
    for (int j = i + 1; j < n; ++j) {
      double v;
      if (near_diagonal(rule.x[i], rule.x[j]))
        v = (*this)(rule.x[i], rule.x[j]);
      else
        v = value_from(rule.x[i], rule.x[j], whi[i], wlo[i], whi[j], wlo[j]);
      out(i, j) = out(j, i) = v;
    }
  }
  return out;
}

Matrix<double> LogWhittakerKernel::values_on(const QuadRule<double>& rule) const {
  QuadRule<double> mapped = rule;
  mapped.lo = std::exp(rule.lo);
  mapped.hi = std::exp(rule.hi);
  for (std::size_t i = 0; i < mapped.x.size(); ++i) mapped.x[i] = std::exp(rule.x[i]);
  Matrix<double> out = bare_.values_on(mapped);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= 2.0;
  return out;
}

CDJacobiKernel::CDJacobiKernel(const WeightSpec& spec, int N, bool weighted, int digits)
    : spec_(spec), rank_(N), weighted_(weighted) {
  if (N < 1) throw DomainError("kernel rank must be positive");
  const int d = digits > 0 ? digits : hankel_digits(N);
  MomentTable table = make_moment_table(spec, 2 * N, d);
  OrthoPoly op = orthopoly_from_moments(table, N);
  alpha_.resize(N);
  beta_.resize(N);
  gamma_.resize(N);
  for (int j = 0; j < N; ++j) {
    alpha_[j] = op.alpha[j].to_double();
    beta_[j] = op.beta[j].to_double();
    gamma_[j] = op.gamma[j].to_double();
  }
}

void CDJacobiKernel::eval_polys(double x, std::vector<double>& p) const {
  p.resize(rank_);
  p[0] = 1.0;
  if (rank_ > 1) p[1] = x - alpha_[0];
  for (int j = 1; j + 1 < rank_; ++j)
    p[j + 1] = (x - alpha_[j]) * p[j] - beta_[j] * p[j - 1];
}

double CDJacobiKernel::cd_sum(double x, double y) const {
  std::vector<double> px, py;
  eval_polys(x, px);
  eval_polys(y, py);
  double acc = 0.0;
  for (int j = 0; j < rank_; ++j) acc += px[j] * py[j] / gamma_[j];
  return acc;
}

double CDJacobiKernel::operator()(double x, double y) const {
  double v = cd_sum(x, y);
  if (weighted_)
    v *= std::sqrt(deformed_weight(spec_, x) * deformed_weight(spec_, y));
  return v;
}

double cd_gap_det(const WeightSpec& spec, int N, double s, int digits) {
  if (N < 1) throw DomainError("kernel rank must be positive");
  if (s < 0.0 || s >= 1.0) throw DomainError("gap endpoint must lie in [0, 1)");
  const int d = digits > 0 ? digits : hankel_digits(N);
  MomentTable table = make_moment_table(spec, 2 * N, d);
  OrthoPoly op = orthopoly_from_moments(table, N);

  // monic coefficient vectors from the recurrence
  std::vector<std::vector<BigReal>> coef(N);
  coef[0] = {BigReal(1.0, d)};
  if (N > 1) coef[1] = {-op.alpha[0], BigReal(1.0, d)};
  for (int j = 1; j + 1 < N; ++j) {
    std::vector<BigReal> next(j + 2, BigReal(0.0, d));
    for (int k = 0; k <= j; ++k) {
      next[k + 1] += coef[j][k];
      next[k] -= op.alpha[j] * coef[j][k];
    }
    for (int k = 0; k < j; ++k) next[k] -= op.beta[j] * coef[j - 1][k];
    coef[j + 1] = next;
  }

  // moments of the weight over (0, s): full minus restricted tail
  std::vector<BigReal> lower(2 * N - 1, BigReal(0.0, d));
  for (int m = 0; m <= 2 * N - 2; ++m)
    lower[m] = table.at(m) - restricted_moment(spec, m, s, d);

  Matrix<BigReal> m(N, N, BigReal(0.0, d));
  for (int j = 0; j < N; ++j) {
    for (int k = j; k < N; ++k) {
      BigReal acc(0.0, d);
      for (std::size_t p = 0; p < coef[j].size(); ++p)
        for (std::size_t q = 0; q < coef[k].size(); ++q)
          acc += coef[j][p] * coef[k][q] * lower[p + q];
      acc /= sqrt(op.gamma[j] * op.gamma[k]);
      m(j, k) = m(k, j) = -acc;
    }
    m(j, j) += BigReal(1.0, d);
  }
  return lu_det(lu_factor(m)).to_double();
}

RaKernel::RaKernel(double a) : a_(a) {
  if (std::fabs(a) >= 0.5) throw DomainError("smoothing kernel requires |a| < 1/2");
}

double RaKernel::operator()(double x, double y) const {
  return std::pow(y / x, a_) * std::exp(-(x + y) / 2.0) / (x + y);
}

REpsKernel::REpsKernel(const WhitIndex& idx, double eps) : eps_(eps) {
  if (idx.imaginary_order())
    throw DomainError("factorized kernel requires a real order");
  kappa_ = idx.kappa;
  mu_ = idx.mu;
  if (mu_ - kappa_ + 0.5 <= 0.0)
    throw DomainError("factorized kernel requires mu - kappa + 1/2 > 0");
  if (eps_ < 0.0) throw DomainError("deformation parameter must be nonnegative");
  p_plus_ = (kappa_ + mu_ - 0.5) / 2.0;
  p_minus_ = (-kappa_ + mu_ - 0.5) / 2.0;
  gamma_norm_ = std::tgamma(mu_ - kappa_ + 0.5);
}

double REpsKernel::g(double s, double s_dist) const {
  return std::exp(-eps_ * s) * std::pow(s + 0.5, p_plus_) * std::pow(s_dist, p_minus_);
}

double REpsKernel::eval(double s, double s_dist, double u, double u_dist) const {
  return g(s, s_dist) * g(u, u_dist) / ((s + u) * gamma_norm_);
}

double REpsKernel::operator()(double s, double u) const {
  return eval(s, s - 0.5, u, u - 0.5);
}

Matrix<double> REpsKernel::values_on(const QuadRule<double>& rule) const {
  const int n = static_cast<int>(rule.x.size());
  const bool have_dist = std::fabs(rule.lo - 0.5) < 1e-12 && !rule.dist_lo.empty();
  std::vector<double> gs(n);
  for (int i = 0; i < n; ++i)
    gs[i] = g(rule.x[i], have_dist ? rule.dist_lo[i] : rule.x[i] - 0.5);
  Matrix<double> out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      out(i, j) = out(j, i) = gs[i] * gs[j] / ((rule.x[i] + rule.x[j]) * gamma_norm_);
  return out;
}

double factorization_lhs(const WhitIndex& idx, double x, double y) {
  WhittakerKernel bare(idx, WhittakerKernel::Form::bare);
  return std::sqrt(x * y) * bare(x, y);
}

double factorization_rhs(const WhitIndex& idx, double x, double y, int nodes) {
  const int n = nodes > 0 ? nodes : 400;
  const WhitIndex lo{idx.kappa - 1.0, idx.mu, idx.mu_im};
  QuadRule<double> rule = half_line<double>(n, 1.0, (x + y) / 2.0);
  const double rxy = std::sqrt(x * y);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double s = rule.x[i];
    const double term = whittaker_w(idx, s * x) * whittaker_w(lo, s * y) +
                        whittaker_w(lo, s * x) * whittaker_w(idx, s * y);
    acc += rule.w[i] * rxy * term / (2.0 * s);
  }
  return acc;
}

}  // namespace whit
