#include "doctest.h"

#include <cmath>

#include "whit/bigreal.hpp"
#include "whit/quadrature.hpp"

using namespace whit;

TEST_CASE("Gauss-Legendre is exact on low-degree polynomials") {
  auto q = gauss_legendre(2, 0.0, 1.0);
  double v = integrate(q, [](double x) { return x * x * x; });
  CHECK(std::fabs(v - 0.25) < 1e-15);
}

TEST_CASE("Gauss-Legendre on a smooth integrand") {
  auto q = gauss_legendre(24, 0.0, 3.14159265358979323846);
  double v = integrate(q, [](double x) { return std::sin(x); });
  CHECK(std::fabs(v - 2.0) < 1e-14);
}

TEST_CASE("Gauss-Legendre in arbitrary precision") {
  auto q = gauss_legendre<BigReal>(8, BigReal(0.0, 60), BigReal(1.0, 60), 60);
  BigReal v = integrate(q, [](const BigReal& x) { return pow(x, 5L); });
  CHECK(abs(v - BigReal(1.0, 60) / BigReal(6.0, 60)) < BigReal("1e-55", 60));
}

TEST_CASE("tanh-sinh handles endpoint singularities through node distances") {
  auto q = tanh_sinh(10, 0.0, 1.0);
  double v = integrate_endpoint(q, [](double, double dlo, double) {
    return 1.0 / std::sqrt(dlo);
  });
  CHECK(std::fabs(v - 2.0) < 1e-13);

  double vlog = integrate(q, [](double x) { return std::log(x); });
  CHECK(std::fabs(vlog + 1.0) < 1e-13);
}

TEST_CASE("tanh-sinh distances are consistent") {
  auto q = tanh_sinh(6, 2.0, 5.0);
  double wsum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    CHECK(std::fabs(q.dist_lo[i] + q.dist_hi[i] - 3.0) < 1e-14);
    CHECK(q.dist_lo[i] > 0.0);
    CHECK(q.dist_hi[i] > 0.0);
    wsum += q.w[i];
  }
  CHECK(std::fabs(wsum - 3.0) < 1e-12);
}

TEST_CASE("tanh-sinh beta integral in arbitrary precision") {
  const int d = 60;
  auto q = tanh_sinh<BigReal>(11, BigReal(0.0, d), BigReal(1.0, d), d);
  // Int_0^1 x^{-1/2} (1-x)^{-1/2} dx = pi
  BigReal v = integrate_endpoint(q, [&](const BigReal&, const BigReal& dlo, const BigReal& dhi) {
    return BigReal(1.0, d) / sqrt(dlo * dhi);
  });
  CHECK(abs(v - BigReal::pi(d)) < BigReal("1e-55", d));
}

TEST_CASE("half-line rule integrates exponential tails") {
  auto q = half_line(600, 0.0, 1.0);
  double v = integrate(q, [](double x) { return std::exp(-x); });
  CHECK(std::fabs(v - 1.0) < 1e-13);
}

TEST_CASE("half-line rule with an endpoint singularity") {
  // Int_{1/2}^inf e^{-2s} (s-1/2)^{-1/2} ds = e^{-1} sqrt(pi/2)
  auto q = half_line(600, 0.5, 2.0);
  double v = integrate_endpoint(q, [](double s, double dlo, double) {
    return std::exp(-2.0 * s) / std::sqrt(dlo);
  });
  const double expected = std::exp(-1.0) * std::sqrt(3.14159265358979323846 / 2.0);
  CHECK(std::fabs(v - expected) < 1e-13);
}

TEST_CASE("composite panels resolve kinks at breakpoints") {
  auto q = composite_gauss_legendre<double>({0.0, 2.0, 4.0}, 8, 16);
  double v = integrate(q, [](double x) { return std::fabs(x - 2.0); });
  CHECK(std::fabs(v - 4.0) < 1e-14);
}

TEST_CASE("quadrature rejects bad arguments") {
  CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(tanh_sinh(1, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(half_line(4, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(half_line(100, 0.0, -1.0), DomainError);
  CHECK_THROWS_AS(composite_gauss_legendre<double>({1.0, 0.5}, 8, 16), DomainError);
}
