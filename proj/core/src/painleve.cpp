#include "whit/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include "whit/errors.hpp"
#include "whit/linalg.hpp"

namespace whit {
namespace {

template <class T>
struct Triple {
  T H, H1, H2;
};

template <class T>
struct FormEval {
  T gap;         // lhs - rhs, signed
  T normalizer;  // largest |term|
};

// Quartic identity of the full-interval deformation: everything expressed
// through H = t (log det)' - N(N+a+b) and its first two derivatives.
FormEval<BigReal> pv_form(const BigReal& t, const Triple<BigReal>& q, int N, const BigReal& a,
                          const BigReal& b) {
  const double nn = static_cast<double>(N);
  const BigReal lhs = (t * q.H2) * (t * q.H2);
  const BigReal r1 = -4.0 * t * q.H1 * q.H1 * q.H1;
  const BigReal c = b + 2.0 * a + t;
  const BigReal r2 =
      q.H1 * q.H1 * (4.0 * q.H + c * c + 4.0 * nn * (nn + a + b) - 4.0 * a * (b + a));
  const BigReal r3 = 2.0 * q.H1 * (-(c * q.H) - 2.0 * nn * a * (nn + b + a));
  const BigReal r4 = q.H * q.H;
  BigReal norm = abs(lhs);
  for (const BigReal* term : {&r1, &r2, &r3, &r4}) norm = std::max(norm, abs(*term));
  return {lhs - (r1 + r2 + r3 + r4), norm};
}

// Quartic identity of the restriction deformation, in the convention that
// closes it: H = s(s-1) (log det)'(s) and the odd product carries (a-b)/2.
template <class T>
FormEval<T> pvi_form(const T& s, const Triple<T>& q, int N, const T& a, const T& b, const T& d1,
                     const T& d2) {
  using std::abs;
  const double nn = static_cast<double>(N);
  const T nu1 = (a + b) / 2.0;
  const T nu2 = (a - b) / 2.0;
  const T nu3 = (a + b) / 2.0 + nn;
  const T n1s = nu1 * nu1, n2s = nu2 * nu2, n3s = nu3 * nu3;
  const T e1 = n1s + n2s + 2.0 * n3s;
  const T e2 = n1s * n2s + 2.0 * n3s * (n1s + n2s) + n3s * n3s;
  const T e3 = n3s * (2.0 * n1s * n2s + n3s * (n1s + n2s));
  const T p = nu1 * nu2 * n3s;

  const T sig = q.H - d1 - s * d2;
  const T sig1 = q.H1 - d2;
  const T sig2 = q.H2;
  const T g = 2.0 * sig1 * (s * sig1 - sig) - sig1 * sig1;
  const T w = s * (s - 1.0) * sig2;
  const T lhs = sig1 * w * w + (g - p) * (g - p);
  const T rhs = sig1 * sig1 * sig1 * sig1 + e1 * sig1 * sig1 * sig1 + e2 * sig1 * sig1 +
                e3 * sig1 + p * p;
  T norm = abs(lhs);
  norm = std::max(norm, abs(rhs));
  norm = std::max(norm, T(1.0));
  return {lhs - rhs, norm};
}

// (log det)', (log det)'', (log det)''' through the trace formula
//   (log det M)' = tr(M^-1 M'),
// continued to the second and third order with the usual commutator terms.
struct LogDerivs {
  BigReal f1, f2, f3;
};

LogDerivs logdet_derivs(const Matrix<BigReal>& m, const Matrix<BigReal>& m1,
                        const Matrix<BigReal>& m2, const Matrix<BigReal>& m3) {
  const Matrix<BigReal> inv = inverse(m);
  const Matrix<BigReal> a1 = inv * m1;
  const Matrix<BigReal> a2 = inv * m2;
  const Matrix<BigReal> a3 = inv * m3;
  LogDerivs d;
  d.f1 = trace(a1);
  d.f2 = trace(a2) - trace(a1 * a1);
  d.f3 = trace(a3) - 3.0 * trace(a2 * a1) + 2.0 * trace(a1 * (a1 * a1));
  return d;
}

// Exact t-derivatives of the full-interval moment matrix: each derivative
// shifts the moment index down by one and flips the sign; negative indices
// stay integrable because of the essential singularity factor.
LogDerivs pv_logdet_derivs(const WeightSpec& spec, int N, int digits) {
  std::map<int, BigReal> cache;
  auto mu = [&](int m) -> const BigReal& {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, moment_quad(spec, m, digits)).first;
    return it->second;
  };
  const std::size_t n = static_cast<std::size_t>(N);
  Matrix<BigReal> m(n, n), m1(n, n), m2(n, n), m3(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int k = static_cast<int>(i + j);
      m(i, j) = mu(k);
      m1(i, j) = -mu(k - 1);
      m2(i, j) = mu(k - 2);
      m3(i, j) = -mu(k - 3);
    }
  return logdet_derivs(m, m1, m2, m3);
}

// Exact s-derivatives of the restricted moment matrix: d/ds of every entry
// is -w(s) s^(i+j), a rank-one structure differentiated twice more.
LogDerivs pvi_logdet_derivs(const WeightSpec& spec, int N, const BigReal& s, int digits) {
  const std::size_t n = static_cast<std::size_t>(N);
  const BigReal one(1.0, digits);
  const BigReal w = pow(s, spec.b) * pow(one - s, spec.a);
  const BigReal lw1 = spec.b / s - spec.a / (one - s);
  const BigReal lw2 = -spec.b / (s * s) - spec.a / ((one - s) * (one - s));
  const BigReal w1 = w * lw1;
  const BigReal w2 = w * (lw1 * lw1 + lw2);

  std::vector<BigReal> v(n, one), dv(n, BigReal(0.0, digits)), d2v(n, BigReal(0.0, digits));
  for (std::size_t i = 1; i < n; ++i) v[i] = v[i - 1] * s;
  for (std::size_t i = 1; i < n; ++i) dv[i] = static_cast<double>(i) * v[i - 1];
  for (std::size_t i = 2; i < n; ++i)
    d2v[i] = static_cast<double>(i * (i - 1)) * v[i - 2];

  Matrix<BigReal> m(n, n), m1(n, n), m2(n, n), m3(n, n);
  const double sd = as_double(s);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = restricted_moment(spec, static_cast<int>(i + j), sd, digits);
      m1(i, j) = -(w * v[i] * v[j]);
      m2(i, j) = -(w1 * v[i] * v[j] + w * (dv[i] * v[j] + v[i] * dv[j]));
      m3(i, j) = -(w2 * v[i] * v[j] + 2.0 * w1 * (dv[i] * v[j] + v[i] * dv[j]) +
                   w * (d2v[i] * v[j] + 2.0 * dv[i] * dv[j] + v[i] * d2v[j]));
    }
  return logdet_derivs(m, m1, m2, m3);
}

// Centered stencil derivatives of a sampled function, first three orders.
// 5 points: orders h^4 / h^4 / h^2.  7 points: h^6 / h^6 / h^4.
LogDerivs stencil_derivs(const std::vector<BigReal>& f, const BigReal& h) {
  LogDerivs d;
  if (f.size() == 5) {
    d.f1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
    d.f2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
    d.f3 = (-f[0] + 2.0 * f[1] - 2.0 * f[3] + f[4]) / (2.0 * h * h * h);
  } else {
    d.f1 = (-f[0] + 9.0 * f[1] - 45.0 * f[2] + 45.0 * f[4] - 9.0 * f[5] + f[6]) / (60.0 * h);
    d.f2 = (2.0 * f[0] - 27.0 * f[1] + 270.0 * f[2] - 490.0 * f[3] + 270.0 * f[4] -
            27.0 * f[5] + 2.0 * f[6]) /
           (180.0 * h * h);
    d.f3 = (f[0] - 8.0 * f[1] + 13.0 * f[2] - 13.0 * f[4] + 8.0 * f[5] - f[6]) /
           (8.0 * h * h * h);
  }
  return d;
}

Triple<BigReal> pv_triple(const BigReal& t, const LogDerivs& d, int N, const BigReal& a,
                          const BigReal& b) {
  const double nn = static_cast<double>(N);
  Triple<BigReal> q;
  q.H = t * d.f1 - nn * (nn + b + a);
  q.H1 = d.f1 + t * d.f2;
  q.H2 = 2.0 * d.f2 + t * d.f3;
  return q;
}

Triple<BigReal> pvi_triple(const BigReal& s, const LogDerivs& d) {
  Triple<BigReal> q;
  q.H = s * (s - 1.0) * d.f1;
  q.H1 = (2.0 * s - 1.0) * d.f1 + s * (s - 1.0) * d.f2;
  q.H2 = 2.0 * d.f1 + 2.0 * (2.0 * s - 1.0) * d.f2 + s * (s - 1.0) * d.f3;
  return q;
}

int pick_digits(int digits) { return digits > 0 ? digits : 120; }

// Deterministic Levenberg-Marquardt over the five stencil residuals; the
// objective is smooth (polynomial in d1, d2), so a coarse grid of starts
// with damped Gauss-Newton polishing finds the global basin reliably.
std::pair<double, double> fit_shift(const std::vector<double>& s,
                                    const std::vector<Triple<double>>& q, int N, double a,
                                    double b) {
  const std::size_t m = s.size();
  auto residuals = [&](double d1, double d2, std::vector<double>& r) {
    for (std::size_t k = 0; k < m; ++k) {
      FormEval<double> e = pvi_form<double>(s[k], q[k], N, a, b, d1, d2);
      r[k] = e.gap / e.normalizer;
    }
  };
  auto sse = [&](double d1, double d2) {
    std::vector<double> r(m);
    residuals(d1, d2, r);
    double sum = 0.0;
    for (double v : r) sum += v * v;
    return sum;
  };

  double best_d1 = 0.0, best_d2 = 0.0, best = std::numeric_limits<double>::infinity();
  for (double s1 : {0.0, -1.0, -2.0, -4.0, -6.0, -9.0})
    for (double s2 : {0.0, 1.0, 2.25, 4.0, 6.25, 9.0, 12.25, 16.0}) {
      double d1 = s1, d2 = s2, lambda = 1e-3;
      double cur = sse(d1, d2);
      for (int it = 0; it < 80; ++it) {
        std::vector<double> r(m), ra(m), rb(m);
        residuals(d1, d2, r);
        const double step = 1e-7 * (1.0 + std::fabs(d1) + std::fabs(d2));
        residuals(d1 + step, d2, ra);
        residuals(d1, d2 + step, rb);
        double j11 = 0.0, j12 = 0.0, j22 = 0.0, g1 = 0.0, g2 = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double ja = (ra[k] - r[k]) / step;
          const double jb = (rb[k] - r[k]) / step;
          j11 += ja * ja;
          j12 += ja * jb;
          j22 += jb * jb;
          g1 += ja * r[k];
          g2 += jb * r[k];
        }
        const double a11 = j11 * (1.0 + lambda), a22 = j22 * (1.0 + lambda);
        const double det = a11 * a22 - j12 * j12;
        if (!(std::fabs(det) > 0.0)) break;
        const double dd1 = -(a22 * g1 - j12 * g2) / det;
        const double dd2 = -(a11 * g2 - j12 * g1) / det;
        const double trial = sse(d1 + dd1, d2 + dd2);
        if (trial < cur) {
          d1 += dd1;
          d2 += dd2;
          cur = trial;
          lambda = std::max(lambda * 0.3, 1e-12);
          if (cur < 1e-30) break;
        } else {
          lambda *= 10.0;
          if (lambda > 1e8) break;
        }
      }
      if (cur < best) {
        best = cur;
        best_d1 = d1;
        best_d2 = d2;
      }
    }
  return {best_d1, best_d2};
}

}  // namespace

SigmaPVReport sigma_pv_residual(int N, double a, double b, double t0, double h, int stencil,
                                int digits) {
  if (N < 1) throw DomainError("matrix dimension must be at least 1");
  if (a <= -1.0 || b <= -1.0) throw DomainError("weight exponents must exceed -1");
  if (stencil != 5 && stencil != 7) throw DomainError("stencil must have 5 or 7 points");
  const int reach = stencil / 2;
  if (!(h > 0.0) || t0 - reach * h <= 0.0)
    throw DomainError("stencil must stay inside t > 0");
  const int dig = pick_digits(digits);

  WeightSpec spec{a, b, t0, 0.0};
  spec.validate();
  const BigReal t(t0, dig), ba(a, dig), bb(b, dig), bh(h, dig);

  SigmaPVReport rep;
  rep.N = N;
  rep.a = a;
  rep.b = b;
  rep.t0 = t0;
  rep.h = h;

  const Triple<BigReal> exact = pv_triple(t, pv_logdet_derivs(spec, N, dig), N, ba, bb);
  const FormEval<BigReal> fe = pv_form(t, exact, N, ba, bb);
  rep.residual_exact = as_double(abs(fe.gap) / fe.normalizer);
  rep.normalizer = as_double(fe.normalizer);

  std::vector<BigReal> logdet;
  logdet.reserve(static_cast<std::size_t>(stencil));
  for (int k = -reach; k <= reach; ++k) {
    WeightSpec sk = spec;
    sk.t = t0 + k * h;
    logdet.push_back(log(hankel_det(sk, N, dig)));
  }
  const Triple<BigReal> fd = pv_triple(t, stencil_derivs(logdet, bh), N, ba, bb);
  const FormEval<BigReal> ff = pv_form(t, fd, N, ba, bb);
  rep.residual_fd = as_double(abs(ff.gap) / ff.normalizer);
  return rep;
}

std::pair<double, double> sigma_pvi_shift(int N, double a, double b) {
  const double nn = static_cast<double>(N);
  const double d1 = -(2.0 * nn * (nn + a + b) + a * (a + b)) / 4.0;
  const double half = (2.0 * nn + a + b) / 2.0;
  return {d1, half * half};
}

SigmaPVIReport sigma_pvi_residual(int N, double a, double b, double s0, double h,
                                  ShiftMode mode, double d1, double d2, int digits) {
  if (N < 1) throw DomainError("matrix dimension must be at least 1");
  if (a <= -1.0 || b <= -1.0) throw DomainError("weight exponents must exceed -1");
  if (!(h > 0.0) || s0 - 2.0 * h <= 0.0 || s0 + 2.0 * h >= 1.0)
    throw DomainError("stencil must stay inside (0, 1)");
  const int dig = pick_digits(digits);

  WeightSpec spec{a, b, 0.0, 0.0};
  spec.validate();
  const BigReal ba(a, dig), bb(b, dig), bh(h, dig);

  SigmaPVIReport rep;
  rep.N = N;
  rep.a = a;
  rep.b = b;
  rep.s0 = s0;
  rep.h = h;
  rep.mode = mode;

  // The closed-form shift is recomputed at working precision below; doubles
  // would inject ~1e-16 into an otherwise quadrature-limited residual.
  if (mode == ShiftMode::closed_form) std::tie(d1, d2) = sigma_pvi_shift(N, a, b);

  // Exact-route samples across the stencil; the center one carries the
  // reported residual outside fit mode.
  std::vector<double> sgrid;
  std::vector<Triple<BigReal>> qgrid;
  for (int k = -2; k <= 2; ++k) {
    const double sk = s0 + k * h;
    const BigReal sb(sk, dig);
    qgrid.push_back(pvi_triple(sb, pvi_logdet_derivs(spec, N, sb, dig)));
    sgrid.push_back(sk);
  }

  if (mode == ShiftMode::fit) {
    std::vector<Triple<double>> qd;
    for (const Triple<BigReal>& q : qgrid)
      qd.push_back({as_double(q.H), as_double(q.H1), as_double(q.H2)});
    std::tie(d1, d2) = fit_shift(sgrid, qd, N, a, b);
  }
  rep.d1 = d1;
  rep.d2 = d2;

  BigReal bd1(d1, dig), bd2(d2, dig);
  if (mode == ShiftMode::closed_form) {
    const BigReal bn(static_cast<double>(N), dig);
    bd1 = -(2.0 * bn * (bn + ba + bb) + ba * (ba + bb)) / 4.0;
    const BigReal half = (2.0 * bn + ba + bb) / 2.0;
    bd2 = half * half;
  }
  if (mode == ShiftMode::fit) {
    double worst = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < qgrid.size(); ++k) {
      const BigReal sb(sgrid[k], dig);
      FormEval<BigReal> e = pvi_form<BigReal>(sb, qgrid[k], N, ba, bb, bd1, bd2);
      const double r = as_double(abs(e.gap) / e.normalizer);
      if (r >= worst) {
        worst = r;
        norm = as_double(e.normalizer);
      }
    }
    rep.residual_exact = worst;
    rep.normalizer = norm;
  } else {
    const BigReal sb(s0, dig);
    FormEval<BigReal> e = pvi_form<BigReal>(sb, qgrid[2], N, ba, bb, bd1, bd2);
    rep.residual_exact = as_double(abs(e.gap) / e.normalizer);
    rep.normalizer = as_double(e.normalizer);
  }

  std::vector<BigReal> logdet;
  for (int k = -2; k <= 2; ++k)
    logdet.push_back(log(hankel_det_restricted(spec, N, s0 + k * h, dig)));
  const BigReal sb(s0, dig);
  const Triple<BigReal> fd = pvi_triple(sb, stencil_derivs(logdet, bh));
  FormEval<BigReal> ff = pvi_form<BigReal>(sb, fd, N, ba, bb, bd1, bd2);
  rep.residual_fd = as_double(abs(ff.gap) / ff.normalizer);
  return rep;
}

namespace {

void central_differences(SigmaSample& out, double step) {
  for (std::size_t k = 1; k + 1 < out.H.size(); ++k) {
    out.H1.push_back((out.H[k + 1] - out.H[k - 1]) / (2.0 * step));
    out.H2.push_back((out.H[k + 1] - 2.0 * out.H[k] + out.H[k - 1]) / (step * step));
  }
}

}  // namespace

SigmaSample sample_sigma_pv(int N, double a, double b, double t_lo, double t_hi, int count,
                            int digits) {
  if (N < 1) throw DomainError("matrix dimension must be at least 1");
  if (a <= -1.0 || b <= -1.0) throw DomainError("weight exponents must exceed -1");
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw DomainError("grid must satisfy 0 < t_lo < t_hi");
  if (count < 7) throw DomainError("grid needs at least 7 nodes");
  const int dig = pick_digits(digits);
  const BigReal ba(a, dig), bb(b, dig);
  const double step = (t_hi - t_lo) / (count - 1);

  SigmaSample out;
  out.N = N;
  out.a = a;
  out.b = b;
  for (int k = 0; k < count; ++k) {
    const double tk = t_lo + k * step;
    WeightSpec spec{a, b, tk, 0.0};
    spec.validate();
    out.t_grid.push_back(tk);
    out.logdet.push_back(log(hankel_det(spec, N, dig)));
    const BigReal tb(tk, dig);
    const Triple<BigReal> q = pv_triple(tb, pv_logdet_derivs(spec, N, dig), N, ba, bb);
    out.H.push_back(as_double(q.H));
  }
  central_differences(out, step);
  return out;
}

SigmaSample sample_sigma_pvi(int N, double a, double b, double s_lo, double s_hi, int count,
                             bool with_fit, int digits) {
  if (N < 1) throw DomainError("matrix dimension must be at least 1");
  if (a <= -1.0 || b <= -1.0) throw DomainError("weight exponents must exceed -1");
  if (!(s_lo > 0.0) || !(s_hi > s_lo) || s_hi >= 1.0)
    throw DomainError("grid must stay inside (0, 1)");
  if (count < 7) throw DomainError("grid needs at least 7 nodes");
  const int dig = pick_digits(digits);
  const double step = (s_hi - s_lo) / (count - 1);

  WeightSpec spec{a, b, 0.0, 0.0};
  spec.validate();

  SigmaSample out;
  out.N = N;
  out.a = a;
  out.b = b;
  std::vector<Triple<double>> qd;
  for (int k = 0; k < count; ++k) {
    const double sk = s_lo + k * step;
    const BigReal sb(sk, dig);
    out.t_grid.push_back(sk);
    out.logdet.push_back(log(hankel_det_restricted(spec, N, sk, dig)));
    const Triple<BigReal> q = pvi_triple(sb, pvi_logdet_derivs(spec, N, sb, dig));
    out.H.push_back(as_double(q.H));
    qd.push_back({as_double(q.H), as_double(q.H1), as_double(q.H2)});
  }
  central_differences(out, step);
  if (with_fit) out.fit = fit_shift(out.t_grid, qd, N, a, b);
  return out;
}

WronskianReport wronskian_check(int N, double a, double b, double t0, int digits, int seed) {
  if (N < 1) throw DomainError("matrix dimension must be at least 1");
  if (!(t0 > 0.0)) throw DomainError("deformation must be positive");
  if (seed < 0) seed = 2 * N - 2;
  if (seed < 2 * N - 2) throw DomainError("seed must be at least 2N-2");
  const int dig = digits > 0 ? digits : hankel_digits(N);

  WeightSpec spec{a, b, t0, 0.0};
  spec.validate();
  MomentTable table = make_moment_table(spec, seed + 1, dig);

  const std::size_t n = static_cast<std::size_t>(N);
  const int shift = seed - (2 * N - 2);
  Matrix<BigReal> w(n, n), hk(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int k = static_cast<int>(i + j);
      const BigReal& m = table.at(seed - k);
      w(i, j) = (k % 2 == 0) ? m : -m;
      hk(i, j) = table.at(k + shift);
    }

  WronskianReport rep;
  rep.wronskian = det(w);
  rep.hankel = det(hk);
  rep.seed = seed;
  rep.rel_gap = as_double(abs(rep.wronskian - rep.hankel) / abs(rep.hankel));
  return rep;
}

}  // namespace whit
