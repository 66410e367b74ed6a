#include "whit/moments.hpp"

#include <cmath>

#include "whit/linalg.hpp"
#include "whit/quadrature.hpp"
#include "whit/specfun.hpp"

namespace whit {

namespace {

// Tanh-sinh depth adequate for the requested precision.
int levels_for(int digits) {
  if (digits <= 20) return 9;
  if (digits <= 50) return 10;
  if (digits <= 110) return 11;
  if (digits <= 230) return 12;
  return 13;
}

int half_line_nodes(int digits) { return (1 << (levels_for(digits) - 1)) * 2; }

}  // namespace

void WeightSpec::validate() const {
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("WeightSpec: requires a > -1 and b > -1");
  if (t < 0.0) throw DomainError("WeightSpec: requires t >= 0");
  if (epsilon < 0.0) throw DomainError("WeightSpec: requires epsilon >= 0");
}

double deformed_weight(const WeightSpec& spec, double x) {
  spec.validate();
  if (!(x > 0.0) || !(x < 1.0)) throw DomainError("deformed_weight: requires 0 < x < 1");
  double w = std::pow(x, spec.b) * std::pow(1.0 - x, spec.a);
  if (spec.t > 0.0) w *= std::exp(-spec.t / x);
  if (spec.epsilon > 0.0) w *= std::exp(-2.0 * spec.epsilon * (1.0 / x - 0.5));
  return w;
}

BigReal moment_quad(const WeightSpec& spec, int m, int digits) {
  spec.validate();
  const BigReal one(1.0, digits);

  if (spec.t == 0.0) {
    if (m + spec.b <= -1.0)
      throw DomainError("moment_quad: t = 0 requires m + b > -1");
    QuadRule<BigReal> rule =
        tanh_sinh<BigReal>(levels_for(digits), BigReal(0.0, digits), one, digits);
    // Exponents assembled in working precision from the exact double fields,
    // so alternative routes to the same moment agree beyond double rounding.
    const BigReal pb = BigReal(m, digits) + BigReal(spec.b, digits);
    const BigReal pa(spec.a, digits);
    return integrate_endpoint(rule, [&](const BigReal&, const BigReal& dlo, const BigReal& dhi) {
      return pow(dlo, pb) * pow(dhi, pa);
    });
  }

  // x = 1/xi moves the essential singularity into an exponential tail.
  QuadRule<BigReal> rule =
      half_line<BigReal>(half_line_nodes(digits), one, BigReal(spec.t, digits), digits);
  const BigReal p =
      BigReal(-2 - m, digits) - BigReal(spec.a, digits) - BigReal(spec.b, digits);
  const BigReal pa(spec.a, digits);
  const BigReal t(spec.t, digits);
  BigReal acc(0.0, digits);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const BigReal& xi = rule.x[i];
    acc += rule.w[i] * pow(xi, p) * pow(rule.dist_lo[i], pa) * exp(-(t * xi));
  }
  return acc;
}

BigReal moment_whittaker(const WeightSpec& spec, int m, int digits) {
  spec.validate();
  if (!(spec.t > 0.0)) throw DomainError("moment_whittaker: requires t > 0 (formula degenerates)");
  const double kappa = -(2.0 * spec.a + spec.b + m + 2.0) / 2.0;
  const double mu = -(spec.b + m + 1.0) / 2.0;
  const BigReal t(spec.t, digits);
  const BigReal w = whittaker_w(kappa, mu, t, digits);
  return tgamma(BigReal(spec.a + 1.0, digits)) * exp(-t / 2.0) *
         pow(t, BigReal((spec.b + m) / 2.0, digits)) * w;
}

BigReal restricted_moment(const WeightSpec& spec, int m, double s, int digits) {
  spec.validate();
  if (!(s >= 0.0) || !(s < 1.0)) throw DomainError("restricted_moment: requires 0 <= s < 1");
  if (s == 0.0) return moment_quad(spec, m, digits);

  // On [s, 1] only the endpoint at 1 is singular; x stays away from 0.
  QuadRule<BigReal> rule =
      tanh_sinh<BigReal>(levels_for(digits), BigReal(s, digits), BigReal(1.0, digits), digits);
  const BigReal pb = BigReal(m, digits) + BigReal(spec.b, digits);
  const BigReal pa(spec.a, digits);
  const BigReal t(spec.t, digits);
  BigReal acc(0.0, digits);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const BigReal& x = rule.x[i];
    BigReal f = pow(x, pb) * pow(rule.dist_hi[i], pa);
    if (spec.t > 0.0) f *= exp(-(t / x));
    acc += rule.w[i] * f;
  }
  return acc;
}

const BigReal& MomentTable::at(int m) const {
  if (m < 0 || static_cast<std::size_t>(m) >= values.size())
    throw DomainError("MomentTable: index out of range");
  return values[static_cast<std::size_t>(m)];
}

MomentTable make_moment_table(const WeightSpec& spec, int count, int digits) {
  MomentTable table;
  table.spec = spec;
  table.digits = digits;
  table.values.reserve(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) table.values.push_back(moment_quad(spec, m, digits));
  return table;
}

int hankel_digits(int N) {
  const int scaled = 20 + 10 * N;
  return scaled > 120 ? scaled : 120;
}

namespace {

BigReal hankel_from_values(const std::vector<BigReal>& mu, int N, int digits) {
  Matrix<BigReal> h(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) h(j, k) = mu[static_cast<std::size_t>(j + k)];
  LU<BigReal> f = lu_factor(std::move(h));
  if (f.singular)
    throw PrecisionError("hankel_det: matrix numerically singular; raise digits");
  if (f.max_abs_pivot > f.min_abs_pivot * detail::pow10<BigReal>(digits - 10, digits))
    throw PrecisionError("hankel_det: pivot ratio exceeds 10^(digits-10); raise digits");
  return lu_det(f);
}

}  // namespace

BigReal hankel_det(const WeightSpec& spec, int N, int digits) {
  if (N < 1) throw DomainError("hankel_det: requires N >= 1");
  if (digits <= 0) digits = hankel_digits(N);
  MomentTable table = make_moment_table(spec, 2 * N - 1, digits);
  return hankel_from_values(table.values, N, digits);
}

BigReal hankel_det(const MomentTable& table, int N) {
  if (N < 1) throw DomainError("hankel_det: requires N >= 1");
  if (table.values.size() < static_cast<std::size_t>(2 * N - 1))
    throw DomainError("hankel_det: table too short; need moments to 2N-2");
  return hankel_from_values(table.values, N, table.digits);
}

BigReal hankel_det_restricted(const WeightSpec& spec, int N, double s, int digits) {
  if (N < 1) throw DomainError("hankel_det_restricted: requires N >= 1");
  if (digits <= 0) digits = hankel_digits(N);
  std::vector<BigReal> mu;
  mu.reserve(static_cast<std::size_t>(2 * N - 1));
  for (int m = 0; m <= 2 * N - 2; ++m) mu.push_back(restricted_moment(spec, m, s, digits));
  return hankel_from_values(mu, N, digits);
}

OrthoPoly orthopoly_from_moments(const MomentTable& table, int N) {
  if (N < 1) throw DomainError("orthopoly_from_moments: requires N >= 1");
  if (table.values.size() < static_cast<std::size_t>(2 * N))
    throw DomainError("orthopoly_from_moments: need moments to 2N-1");
  const int digits = table.digits;

  // Monic polynomials as coefficient vectors; inner products through the
  // moment table: <x^p, x^q> = mu_(p+q).
  auto inner = [&](const std::vector<BigReal>& p, const std::vector<BigReal>& q,
                   int shift) {
    BigReal s(0.0, digits);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j)
        s += p[i] * q[j] * table.at(static_cast<int>(i + j) + shift);
    return s;
  };

  OrthoPoly out;
  out.alpha.reserve(static_cast<std::size_t>(N));
  out.beta.reserve(static_cast<std::size_t>(N));
  out.gamma.reserve(static_cast<std::size_t>(N));

  std::vector<BigReal> prev;                 // P_(j-1)
  std::vector<BigReal> cur{BigReal(1.0, digits)};  // P_0
  BigReal norm_prev(0.0, digits);
  BigReal norm_cur = inner(cur, cur, 0);     // mu_0

  for (int j = 0; j < N; ++j) {
    if (!(norm_cur > BigReal(0.0, digits)))
      throw PrecisionError("orthopoly_from_moments: lost positivity; raise digits");
    out.gamma.push_back(norm_cur);
    out.alpha.push_back(inner(cur, cur, 1) / norm_cur);
    if (j == 0)
      out.beta.push_back(BigReal(0.0, digits));
    else
      out.beta.push_back(norm_cur / norm_prev);

    // P_(j+1) = (x - alpha_j) P_j - beta_j P_(j-1)
    std::vector<BigReal> next(cur.size() + 1, BigReal(0.0, digits));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] += cur[i];
      next[i] -= out.alpha.back() * cur[i];
    }
    if (j > 0)
      for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= out.beta.back() * prev[i];

    prev = std::move(cur);
    cur = std::move(next);
    norm_prev = norm_cur;
    // The last iteration would need mu_(2N), beyond the table's contract.
    if (j + 1 < N) norm_cur = inner(cur, cur, 0);
  }
  return out;
}

BigReal deformation_constant(double kappa, double mu, double alpha, int N, double eps,
                             int digits) {
  if (N < 1) throw DomainError("deformation_constant: requires N >= 1");
  BigReal c = exp(BigReal(eps * N, digits)) /
              pow(tgamma(BigReal(mu - kappa + 0.5, digits)), static_cast<long>(N));
  for (int j = 0; j < N; ++j) {
    BigReal r = tgamma(BigReal(j + alpha + 1.0, digits)) / tgamma(BigReal(j + 1.0, digits));
    c *= r * r;
  }
  return c;
}

}  // namespace whit
