#include "whit/operators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "whit/specfun.hpp"

namespace whit {

namespace {

int tanh_sinh_levels_for(int nodes) {
  int levels = 4;
  while ((1 << levels) + 1 < nodes && levels < 12) ++levels;
  return levels;
}

Matrix<double> identity_minus(const Matrix<double>& m, double lambda) {
  Matrix<double> a = Matrix<double>::identity(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) -= lambda * m(i, j);
  return a;
}

}  // namespace

DiscreteOp nystrom(const Kernel& k, const QuadRule<double>& rule) {
  DiscreteOp op;
  op.rule = rule;
  op.mat = k.values_on(rule);
  const std::size_t n = op.mat.rows();
  std::vector<double> sw(n);
  for (std::size_t i = 0; i < n; ++i) sw[i] = std::sqrt(rule.w[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) op.mat(i, j) *= sw[i] * sw[j];
  return op;
}

DiscreteOp nystrom(const Kernel& k, double lo, double hi, int n) {
  if (n < 4) throw DomainError("nystrom: need at least 4 nodes");
  return nystrom(k, gauss_legendre<double>(n, lo, hi));
}

double fredholm_det(const DiscreteOp& op, double lambda) {
  return det(identity_minus(op.mat, lambda));
}

double op_trace(const DiscreteOp& op) { return trace(op.mat); }

Resolvent::Resolvent(const Kernel& k, const DiscreteOp& op)
    : kernel_(&k), rule_(op.rule) {
  if (op.mat.rows() != op.mat.cols()) throw DomainError("resolvent: matrix not square");
  SymEig eig = sym_eig(op.mat, 1e-9);
  const double rho = std::max(std::fabs(eig.values.front()), std::fabs(eig.values.back()));
  if (rho >= 1.0)
    throw DomainError("resolvent: spectral radius " + std::to_string(rho) + " is not below one");
  inv_ = inverse(identity_minus(op.mat, 1.0));
  smat_ = op.mat * inv_;
}

double Resolvent::operator()(double x, double y) const {
  const Kernel& k = *kernel_;
  const std::size_t n = rule_.x.size();
  std::vector<double> kx(n), ky(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sw = std::sqrt(rule_.w[i]);
    kx[i] = k(x, rule_.x[i]) * sw;
    ky[i] = k(rule_.x[i], y) * sw;
  }
  double acc = k(x, y);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += inv_(i, j) * ky[j];
    acc += kx[i] * row;
  }
  return acc;
}

double Resolvent::inverse_apply(const std::vector<double>& f_nodes, double fx, double x) const {
  const Kernel& k = *kernel_;
  const std::size_t n = rule_.x.size();
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = std::sqrt(rule_.w[i]) * f_nodes[i];
  double acc = fx;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += inv_(i, j) * rhs[j];
    acc += k(x, rule_.x[i]) * std::sqrt(rule_.w[i]) * row;
  }
  return acc;
}

namespace {

/// Moments of the compactified symbol measure:
/// integral over (0,1) of xi^(m + b_exp) (1 - xi)^(a_exp) e^{-eps (1+xi)/(1-xi)}.
std::vector<BigReal> xi_moment_table(double b_exp, double a_exp, double eps, int count,
                                     int digits) {
  const int levels = digits > 25 ? 10 : 9;
  QuadRule<BigReal> rule =
      tanh_sinh<BigReal>(levels, BigReal(0.0, digits), BigReal(1.0, digits), digits);
  std::vector<BigReal> table;
  table.reserve(count);
  const BigReal mb(-static_cast<double>(eps), digits);
  for (int m = 0; m < count; ++m) {
    BigReal val = integrate_endpoint(rule, [&](const BigReal& x, const BigReal& dlo,
                                               const BigReal& dhi) {
      BigReal v = pow(dlo, BigReal(m + b_exp, digits)) * pow(dhi, BigReal(a_exp, digits));
      if (eps != 0.0) v *= exp(mb * (BigReal(1.0, digits) + x) / dhi);
      return v;
    });
    table.push_back(val);
  }
  return table;
}

/// Coefficient vectors of the monic Laguerre polynomials up to degree n-1.
std::vector<std::vector<BigReal>> monic_laguerre_coeffs(double alpha, int n, int digits) {
  std::vector<std::vector<BigReal>> c(n);
  c[0] = {BigReal(1.0, digits)};
  if (n == 1) return c;
  c[1] = {BigReal(-(alpha + 1.0), digits), BigReal(1.0, digits)};
  for (int j = 1; j + 1 < n; ++j) {
    std::vector<BigReal> next(j + 2, BigReal(0.0, digits));
    const BigReal a(2.0 * j + alpha + 1.0, digits);
    const BigReal b(j * (j + alpha), digits);
    for (int p = 0; p <= j; ++p) {
      next[p + 1] += c[j][p];
      next[p] -= a * c[j][p];
    }
    for (int p = 0; p + 1 <= j; ++p) next[p] -= b * c[j - 1][p];
    c[j + 1] = std::move(next);
  }
  return c;
}

}  // namespace

Matrix<BigReal> hankel_laguerre_matrix(const WhitIndex& idx, double alpha, int size,
                                       double eps, int digits) {
  if (idx.imaginary_order()) throw DomainError("hankel matrix requires a real order");
  const double delta = idx.mu - idx.kappa + 0.5;
  if (delta <= 0.0) throw DomainError("hankel matrix requires mu - kappa + 1/2 > 0");
  const double b_exp = idx.mu - idx.kappa - 0.5;
  const double a_exp = 2.0 * alpha - 2.0 * idx.mu + 1.0;
  if (a_exp <= -1.0) throw DomainError("hankel matrix weight exponent at 1 must exceed -1");
  if (eps < 0.0) throw DomainError("hankel matrix requires eps >= 0");
  if (size < 1) throw DomainError("hankel matrix size must be positive");
  const int d = digits > 0 ? digits : hankel_digits(size);

  std::vector<BigReal> xi = xi_moment_table(b_exp, a_exp, eps, 2 * size - 1, d);
  std::vector<BigReal> c(size);
  c[0] = BigReal(std::tgamma(1.0 + alpha), d);
  for (int j = 0; j + 1 < size; ++j)
    c[j + 1] = c[j] * BigReal(j + 1.0 + alpha, d) / BigReal(j + 1.0, d);
  const BigReal norm = BigReal(1.0, d) / BigReal(std::tgamma(delta), d);

  Matrix<BigReal> m(size, size, BigReal(0.0, d));
  for (int l = 0; l < size; ++l)
    for (int n = l; n < size; ++n) {
      BigReal v = c[l] * c[n] * xi[l + n] * norm;
      if ((l + n) % 2 == 1) v = -v;
      m(l, n) = v;
      m(n, l) = std::move(v);
    }
  return m;
}

Matrix<BigReal> laguerre_gram(double alpha, int size, int digits) {
  if (size < 1) throw DomainError("gram size must be positive");
  if (alpha <= -0.5) throw DomainError("gram requires alpha > -1/2");
  const int d = digits > 0 ? digits : hankel_digits(size);
  std::vector<std::vector<BigReal>> cf = monic_laguerre_coeffs(alpha, size, d);

  // power moments of x^(2 alpha) e^{-x}
  std::vector<BigReal> g(2 * size - 1);
  g[0] = BigReal(std::tgamma(2.0 * alpha + 1.0), d);
  for (int p = 0; p + 1 < 2 * size - 1; ++p)
    g[p + 1] = g[p] * BigReal(2.0 * alpha + p + 1.0, d);

  std::vector<BigReal> fact(size);
  fact[0] = BigReal(1.0, d);
  for (int j = 1; j < size; ++j) fact[j] = fact[j - 1] * BigReal(static_cast<double>(j), d);

  Matrix<BigReal> gram(size, size, BigReal(0.0, d));
  for (int l = 0; l < size; ++l)
    for (int n = l; n < size; ++n) {
      BigReal acc(0.0, d);
      for (std::size_t p = 0; p < cf[l].size(); ++p)
        for (std::size_t q = 0; q < cf[n].size(); ++q)
          acc += cf[l][p] * cf[n][q] * g[p + q];
      acc /= fact[l] * fact[n];
      gram(l, n) = acc;
      gram(n, l) = std::move(acc);
    }
  return gram;
}

DetPencilReport factorized_det_identity(const WhitIndex& idx, double eps, double lambda,
                                        double alpha, const std::vector<int>& sizes,
                                        int nodes, double cutoff) {
  if (idx.imaginary_order()) throw DomainError("determinant identity requires a real order");
  if (idx.mu - idx.kappa + 0.5 <= 0.0)
    throw DomainError("determinant identity requires mu - kappa + 1/2 > 0");
  if (eps == 0.0 && idx.mu >= 0.5)
    throw DomainError("undeformed identity requires mu < 1/2 for a finite trace");
  if (sizes.empty()) throw DomainError("need at least one truncation size");

  DetPencilReport report;
  REpsKernel kernel(idx, eps);
  QuadRule<double> rule =
      tanh_sinh<double>(tanh_sinh_levels_for(nodes), 0.5, cutoff);
  report.lhs = fredholm_det(nystrom(kernel, rule), lambda);

  const int max_size = *std::max_element(sizes.begin(), sizes.end());
  const int d = hankel_digits(max_size);
  Matrix<BigReal> m = hankel_laguerre_matrix(idx, alpha, max_size, eps, d);
  Matrix<BigReal> g = laguerre_gram(alpha, max_size, d);
  const BigReal lam(lambda, d);

  for (int size : sizes) {
    Matrix<BigReal> pencil(size, size, BigReal(0.0, d));
    Matrix<BigReal> gblock(size, size, BigReal(0.0, d));
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        pencil(i, j) = g(i, j) - lam * m(i, j);
        gblock(i, j) = g(i, j);
      }
    const double rhs = (lu_det(lu_factor(pencil)) / lu_det(lu_factor(gblock))).to_double();
    report.sizes.push_back(size);
    report.rhs.push_back(rhs);
    report.residual.push_back(std::fabs(report.lhs - rhs));
  }
  return report;
}

std::pair<double, double> factorized_trace_pair(const WhitIndex& idx, double eps) {
  REpsKernel kernel(idx, eps);
  QuadRule<double> rule = half_line<double>(600, 0.5, 1.0);
  double lhs = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i)
    lhs += rule.w[i] * kernel.eval(rule.x[i], rule.dist_lo[i], rule.x[i], rule.dist_lo[i]);

  // Hankel symbol trace: (1/2) integral of the deformed symbol over (0, inf)
  QuadRule<double> srule = half_line<double>(600, 0.0, 1.0);
  const double pw = -(idx.mu + 0.5);
  double rhs = 0.0;
  for (std::size_t i = 0; i < srule.x.size(); ++i) {
    const double u = srule.x[i] + 2.0 * eps;
    rhs += srule.w[i] * whittaker_w(idx, u) * std::pow(u, pw);
  }
  return {lhs, 0.5 * rhs};
}

PairDetReport log_pair_det_identity(const WhitIndex& idx, double t_hi, int n) {
  if (idx.imaginary_order()) throw DomainError("pair identity requires a real order");
  const double edge = whittaker_w(idx, std::exp(2.0 * t_hi));
  if (std::fabs(edge) > 1e-10)
    throw DomainError("symbol has not decayed at the truncation; widen the interval");

  QuadRule<double> rule = gauss_legendre<double>(n, 0.0, t_hi);
  LogWhittakerKernel tker(idx);
  DiscreteOp top = nystrom(tker, rule);

  WhitIndex lo_idx{idx.kappa - 1.0, idx.mu, idx.mu_im};
  Matrix<double> h1(n, n), h2(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double z = std::exp(rule.x[i] + rule.x[j]);
      const double sw = std::sqrt(rule.w[i] * rule.w[j]);
      h1(i, j) = h1(j, i) = sw * whittaker_w(idx, z);
      h2(i, j) = h2(j, i) = sw * whittaker_w(lo_idx, z);
    }
  Matrix<double> pair = h1 * h2 + h2 * h1;

  PairDetReport report;
  report.det_direct = det(identity_minus(top.mat, 1.0));
  report.det_pair = det(identity_minus(pair, 1.0));
  report.residual = std::fabs(report.det_direct - report.det_pair);
  double gap = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gap = std::max(gap, std::fabs(top.mat(i, j) - pair(i, j)));
  report.entry_gap = gap;
  return report;
}

EndpointDerivative log_det_endpoint_derivative(const Kernel& k, double a1, double a2,
                                               int n, double h) {
  if (!(a1 < a2)) throw DomainError("endpoint derivative needs a1 < a2");
  if (h <= 0.0) h = 1e-4 * (a2 - a1);
  auto logdet = [&](double lo, double hi) {
    return std::log(fredholm_det(nystrom(k, lo, hi, n)));
  };
  EndpointDerivative out;
  out.fd_lo = (logdet(a1 + h, a2) - logdet(a1 - h, a2)) / (2.0 * h);
  out.fd_hi = (logdet(a1, a2 + h) - logdet(a1, a2 - h)) / (2.0 * h);
  Resolvent res(k, nystrom(k, a1, a2, n));
  out.resolvent_lo = res(a1, a1);
  out.resolvent_hi = -res(a2, a2);
  return out;
}

double resolvent_diag_identity(const WhitIndex& idx, double lo, double hi, double x, int n,
                               double h) {
  WhittakerKernel bare(idx, WhittakerKernel::Form::bare);
  DiscreteOp op = nystrom(bare, lo, hi, n);
  Resolvent res(bare, op);
  const QuadRule<double>& rule = res.rule();

  WhitIndex lo_idx{idx.kappa - 1.0, idx.mu, idx.mu_im};
  std::vector<double> whi(rule.x.size()), wlo(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    whi[i] = whittaker_w(idx, rule.x[i]);
    wlo[i] = whittaker_w(lo_idx, rule.x[i]);
  }
  const double q = res.inverse_apply(whi, whittaker_w(idx, x), x);
  const double p = res.inverse_apply(wlo, whittaker_w(lo_idx, x), x);

  double s2 = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double sxi = res(x, rule.x[i]);
    s2 += rule.w[i] * sxi * sxi;
  }
  // On a finite interval the commutator with x d/dx leaves endpoint terms;
  // they fade only as the window grows toward the whole half line.
  const double slo = res(x, lo), shi = res(x, hi);
  const double ends = lo * slo * slo - hi * shi * shi;

  const double step = h > 0.0 ? h : 1e-3 * x;
  const double deriv = x * (res(x + step, x + step) - res(x - step, x - step)) / (2.0 * step);
  return std::fabs(deriv - (-p * q + s2 + ends));
}

double composed_norm(double a, double cutoff, int n, double lo) {
  if (!(lo > 0.0) || lo >= cutoff) throw DomainError("window must satisfy 0 < lo < cutoff");
  RaKernel ra(a);
  // The near-eigenfunctions carry logarithmic mass toward the origin, so a
  // linear grid starves the lower end as the window grows.  Discretize in
  // log coordinates instead: nodes x = e^t with t Gauss-Legendre on
  // [ln lo, ln cutoff] and effective weights w e^t.  The smoothing kernel
  // maps to its transpose under a -> -a, so the symmetrized product
  // M M^T is the discretized composition.
  QuadRule<double> t = gauss_legendre(n, std::log(lo), std::log(cutoff));
  std::vector<double> x(t.x.size()), sw(t.x.size());
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    x[i] = std::exp(t.x[i]);
    sw[i] = std::sqrt(t.w[i] * x[i]);
  }
  Matrix<double> m(t.x.size(), t.x.size());
  for (std::size_t i = 0; i < t.x.size(); ++i)
    for (std::size_t j = 0; j < t.x.size(); ++j) m(i, j) = sw[i] * ra(x[i], x[j]) * sw[j];
  Matrix<double> c = m * m.transposed();
  return sym_eig(c).values.front();
}

EigenRelation smoothing_eigenrelation(double a, double m, const std::vector<double>& xs,
                                      int nodes) {
  if (std::fabs(a) >= 0.5) throw DomainError("eigenrelation requires |a| < 1/2");
  if (m < 0.0) throw DomainError("eigenrelation requires m >= 0");
  const WhitIndex plus{a, 0.0, m};
  const WhitIndex minus{-a, 0.0, m};
  EigenRelation rel;
  rel.eigenvalue = abs_gamma_squared(std::complex<double>(0.5 - a, m));
  RaKernel adjoint(-a);
  QuadRule<double> rule = half_line<double>(nodes, 0.0, 1.0);
  std::vector<double> f_minus(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i)
    f_minus[i] = whittaker_w(minus, rule.x[i]) / rule.x[i];
  for (double x : xs) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
      acc += rule.w[i] * adjoint(x, rule.x[i]) * f_minus[i];
    const double want = rel.eigenvalue * whittaker_w(plus, x) / x;
    rel.max_rel_residual =
        std::max(rel.max_rel_residual, std::fabs(acc - want) / std::fabs(want));
  }
  return rel;
}

namespace {

struct BlockParts {
  Matrix<double> a;  // sqrt(w) R_a sqrt(w)
  Matrix<double> b;  // sqrt(w) R_{-a} sqrt(w)
};

BlockParts block_parts(double a, double lo, double hi, int n) {
  RaKernel ra(a), rm(-a);
  return {nystrom(ra, lo, hi, n).mat, nystrom(rm, lo, hi, n).mat};
}

}  // namespace

double block_inverse_gap(double a, double lo, double hi, int n) {
  BlockParts p = block_parts(a, lo, hi, n);
  const int nn = 2 * n;
  Matrix<double> full = Matrix<double>::identity(nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      full(i, n + j) += p.a(i, j);
      full(n + i, j) -= p.b(i, j);
    }
  Matrix<double> inv_full = inverse(full);

  Matrix<double> id = Matrix<double>::identity(n);
  Matrix<double> inv_ab = inverse(id + p.a * p.b);
  Matrix<double> inv_ba = inverse(id + p.b * p.a);
  Matrix<double> top_right = p.a * inv_ba;
  Matrix<double> bottom_left = p.b * inv_ab;

  double gap = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      gap = std::max(gap, std::fabs(inv_full(i, j) - inv_ab(i, j)));
      gap = std::max(gap, std::fabs(inv_full(i, n + j) + top_right(i, j)));
      gap = std::max(gap, std::fabs(inv_full(n + i, j) - bottom_left(i, j)));
      gap = std::max(gap, std::fabs(inv_full(n + i, n + j) - inv_ba(i, j)));
    }
  return gap;
}

double block_skew_gap(double a, double lo, double hi, int n) {
  BlockParts p = block_parts(a, lo, hi, n);
  double gap = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gap = std::max(gap, std::fabs(p.a(i, j) - p.b(j, i)));
  return gap;
}

}  // namespace whit
