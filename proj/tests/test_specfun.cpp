#include "doctest.h"

#include <cmath>
#include <complex>

#include "whit/bigreal.hpp"
#include "whit/specfun.hpp"

using namespace whit;

namespace {

double rel_err(double got, double expected) {
  return std::fabs(got - expected) / std::fabs(expected);
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("whittaker_w at reference points") {
  // Values computed independently at 50 digits and frozen.
  struct Case {
    double kappa, mu, x, expected;
  };
  const Case cases[] = {
      {0.7, 0.2, 1.0, 0.606530659712633423603799534991},
      {0.7, 0.2, 2.5, 0.544114004118375329711363412803},
      {-0.3, 0.45, 0.8, 0.545413826097951848214745650593},
      {0.3, 0.1, 1.0, 0.594312735936926898082483197747},
      {0.1, 0.0, 3.0, 0.238577899997730748082642666039},
      {-1.6, -0.85, 0.7, 0.214115229610299456596101559279},
  };
  for (const auto& c : cases) {
    WhitIndex idx{c.kappa, c.mu, 0.0};
    CHECK(rel_err(whittaker_w(idx, c.x), c.expected) < 1e-12);
  }
}

TEST_CASE("whittaker_w degenerate closed form") {
  // At (kappa, mu) = (a+1/2, a) the function collapses to x^{a+1/2} e^{-x/2}.
  for (double a : {0.1, 0.3, 0.45}) {
    for (double x : {0.4, 1.0, 2.7}) {
      WhitIndex idx{a + 0.5, a, 0.0};
      const double expected = std::pow(x, a + 0.5) * std::exp(-0.5 * x);
      CHECK(rel_err(whittaker_w(idx, x), expected) < 1e-12);
    }
  }
}

TEST_CASE("whittaker_w with purely imaginary order") {
  WhitIndex i1{0.0, 0.0, 0.25};
  CHECK(rel_err(whittaker_w(i1, 2.0), 0.328329854308354552446261263131) < 1e-12);
  WhitIndex i2{-0.2, 0.0, 0.5};
  CHECK(rel_err(whittaker_w(i2, 1.3), 0.3480701603392425484829725455) < 1e-12);
}

TEST_CASE("whittaker_w in arbitrary precision") {
  // Parameters exactly representable in binary, so the reference values are
  // not blurred by double rounding of the index pair.
  BigReal x(1.0, 50);
  BigReal degenerate = whittaker_w(0.75, 0.25, x, 50);  // = x^{3/4} e^{-x/2}
  CHECK(abs(degenerate - exp(BigReal(-0.5, 50))) < BigReal("1e-40", 50));

  BigReal direct = whittaker_w(-0.25, 0.5, x, 50);
  BigReal expected("0.51071469639222603739069823865019093977598911", 50);
  CHECK(abs(direct - expected) < BigReal("1e-40", 50));
}

TEST_CASE("whittaker_w domain checks") {
  WhitIndex bad{1.0, 0.0, 0.0};  // -kappa + mu + 1/2 = -1/2
  CHECK_THROWS_AS(whittaker_w(bad, 1.0), DomainError);
  WhitIndex ok{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(whittaker_w(ok, -1.0), DomainError);
  WhitIndex bad_imag{1.0, 0.0, 0.5};  // imaginary order needs kappa <= 1/2
  CHECK_THROWS_AS(whittaker_w(bad_imag, 1.0), DomainError);
}

TEST_CASE("whittaker_w_deriv reference value and finite-difference agreement") {
  WhitIndex idx{0.7, 0.2, 0.0};
  const double expected = -0.020913261368612469730685991398;
  CHECK(rel_err(whittaker_w_deriv(idx, 1.5), expected) < 1e-11);

  const double h = 1e-5;
  const double fd =
      (whittaker_w(idx, 1.5 + h) - whittaker_w(idx, 1.5 - h)) / (2.0 * h);
  CHECK(std::fabs(whittaker_w_deriv(idx, 1.5) - fd) < 1e-9);
}

TEST_CASE("bessel_k reference values") {
  CHECK(rel_err(bessel_k(0.3, 1.0), 0.435076024208802024348361194201) < 1e-12);
  CHECK(rel_err(bessel_k(0.0, 5.0), 0.00369109833404259427473526100746) < 1e-12);
  // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
  CHECK(rel_err(bessel_k(0.5, 1.0), 0.461068504447894558439575873876) < 1e-12);
}

TEST_CASE("bessel_k ties to whittaker_w at kappa = 0") {
  // K_mu(z) = sqrt(pi/(2z)) W_{0,mu}(2z)
  for (double z : {0.5, 1.0, 2.0}) {
    for (double mu : {0.0, 0.3}) {
      WhitIndex idx{0.0, mu, 0.0};
      const double lhs = bessel_k(mu, z);
      const double rhs = std::sqrt(kPi / (2.0 * z)) * whittaker_w(idx, 2.0 * z);
      CHECK(rel_err(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("bessel_k_imag ties to whittaker_w with imaginary order") {
  for (double z : {0.7, 1.0, 1.8}) {
    for (double m : {0.25, 0.6}) {
      WhitIndex idx{0.0, 0.0, m};
      const double lhs = bessel_k_imag(m, z);
      const double rhs = std::sqrt(kPi / (2.0 * z)) * whittaker_w(idx, 2.0 * z);
      CHECK(rel_err(lhs, rhs) < 1e-11);
    }
  }
}

TEST_CASE("laguerre_fn reference values") {
  CHECK(rel_err(laguerre_fn(2, 0.5, 1.3), -0.315468595683041614357265191255) < 1e-13);
  CHECK(rel_err(laguerre_fn(3, 0.0, 0.7), 0.297495821876250188203460138441) < 1e-13);
  CHECK(rel_err(laguerre_fn(0, 0.5, 1.0), 0.606530659712633423603799534991) < 1e-13);
}

TEST_CASE("monic laguerre recurrence basics") {
  // n = 1: x - (alpha + 1)
  CHECK(std::fabs(monic_laguerre(1, 0.4, 2.0) - (2.0 - 1.4)) < 1e-15);
  BigReal x(0.75, 40);
  BigReal v = monic_laguerre(2, 0.0, x);
  // L2 monic at alpha=0: x^2 - 4x + 2
  CHECK(abs(v - BigReal(0.75 * 0.75 - 4.0 * 0.75 + 2.0, 40)) < BigReal("1e-35", 40));
}

TEST_CASE("log_gamma_complex on the real axis and reflection zone") {
  CHECK(rel_err(std::exp(log_gamma_complex({4.0, 0.0})).real(), 6.0) < 1e-13);
  // |Gamma(-1/2)| = 2 sqrt(pi)
  const double m = std::abs(std::exp(log_gamma_complex({-0.5, 0.0})));
  CHECK(rel_err(m, 2.0 * std::sqrt(kPi)) < 1e-12);
}

TEST_CASE("abs_gamma_squared reference value") {
  CHECK(rel_err(abs_gamma_squared({0.3, 0.5}), 1.8046937779403289785266333948) < 1e-11);
}

TEST_CASE("gamma modulus product identity") {
  // |Gamma(1/2-a+im)|^2 |Gamma(1/2+a+im)|^2 = 2 pi^2 / (cos 2 pi a + cosh 2 pi m)
  const double a = 0.1, m = 0.7;
  const double lhs = abs_gamma_squared({0.5 - a, m}) * abs_gamma_squared({0.5 + a, m});
  CHECK(rel_err(lhs, 0.476004098178611241813896495893) < 1e-10);
  const double rhs = 2.0 * kPi * kPi / (std::cos(2.0 * kPi * a) + std::cosh(2.0 * kPi * m));
  CHECK(rel_err(lhs, rhs) < 1e-10);
}

TEST_CASE("incomplete_gamma_stieltjes reference values") {
  CHECK(rel_err(incomplete_gamma_stieltjes(0.2, 0.5), 1.81080359873078890095546962087) < 1e-11);
  // a = 0 reduces to e^x E_1(x) at x = 1
  CHECK(rel_err(incomplete_gamma_stieltjes(0.0, 1.0), 0.596347362323194074341078499369) < 1e-11);
  CHECK_THROWS_AS(incomplete_gamma_stieltjes(0.7, 1.0), DomainError);
  CHECK_THROWS_AS(incomplete_gamma_stieltjes(0.2, -1.0), DomainError);
}
