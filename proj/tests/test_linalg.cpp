#include "doctest.h"

#include <cmath>

#include "whit/bigreal.hpp"
#include "whit/linalg.hpp"

using namespace whit;

namespace {

template <class T>
Matrix<T> hilbert(std::size_t n) {
  Matrix<T> h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = T(1) / T(static_cast<double>(i + j + 1));
  return h;
}

}  // namespace

TEST_CASE("determinant of the 5x5 Hilbert matrix") {
  // 1 / 266716800000
  const double expected = 3.74929513251508716361324071074637968062e-12;
  const double got = det(hilbert<double>(5));
  CHECK(std::fabs(got - expected) / expected < 1e-9);
}

TEST_CASE("determinant in arbitrary precision") {
  BigReal d = det(hilbert<BigReal>(5));
  BigReal expected("3.74929513251508716361324071074637968062e-12", 120);
  CHECK(abs(d - expected) < BigReal("1e-40", 120));
}

TEST_CASE("LU solve round trip") {
  Matrix<double> a(3, 3);
  a(0, 0) = 4;  a(0, 1) = 1;  a(0, 2) = -1;
  a(1, 0) = 1;  a(1, 1) = 3;  a(1, 2) = 1;
  a(2, 0) = -1; a(2, 1) = 1;  a(2, 2) = 5;
  std::vector<double> b{1.0, -2.0, 3.0};
  auto f = lu_factor(a);
  auto x = lu_solve(f, b);
  for (std::size_t i = 0; i < 3; ++i) {
    double r = 0;
    for (std::size_t j = 0; j < 3; ++j) r += a(i, j) * x[j];
    CHECK(std::fabs(r - b[i]) < 1e-13);
  }
  CHECK(f.max_abs_pivot >= f.min_abs_pivot);
  CHECK(f.min_abs_pivot > 0.0);
}

TEST_CASE("matrix inverse") {
  Matrix<double> a(3, 3);
  a(0, 0) = 2;  a(0, 1) = 1; a(0, 2) = 0;
  a(1, 0) = 1;  a(1, 1) = 3; a(1, 2) = 1;
  a(2, 0) = 0;  a(2, 1) = 1; a(2, 2) = 4;
  Matrix<double> id = a * inverse(a);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(std::fabs(id(i, j) - (i == j ? 1.0 : 0.0)) < 1e-13);
}

TEST_CASE("singular matrix gives zero determinant") {
  Matrix<double> a(2, 2);
  a(0, 0) = 1; a(0, 1) = 2;
  a(1, 0) = 2; a(1, 1) = 4;
  CHECK(det(a) == 0.0);
}

TEST_CASE("symmetric eigendecomposition, closed form 2x2") {
  Matrix<double> a(2, 2);
  a(0, 0) = 2; a(0, 1) = 1;
  a(1, 0) = 1; a(1, 1) = 2;
  SymEig e = sym_eig(a);
  CHECK(std::fabs(e.values[0] - 3.0) < 1e-14);
  CHECK(std::fabs(e.values[1] - 1.0) < 1e-14);
}

TEST_CASE("symmetric eigendecomposition reconstructs the matrix") {
  const std::size_t n = 6;
  Matrix<double> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 1.0 / (1.0 + std::fabs(double(i) - double(j))) + (i == j ? 0.5 * i : 0.0);
  SymEig e = sym_eig(a);

  // A v_k = lambda_k v_k and orthonormality.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      double av = 0;
      for (std::size_t j = 0; j < n; ++j) av += a(i, j) * e.vectors(j, k);
      CHECK(std::fabs(av - e.values[k] * e.vectors(i, k)) < 1e-11);
    }
    for (std::size_t l = 0; l <= k; ++l) {
      double dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += e.vectors(i, k) * e.vectors(i, l);
      CHECK(std::fabs(dot - (k == l ? 1.0 : 0.0)) < 1e-12);
    }
  }
  for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k - 1] >= e.values[k]);
}

TEST_CASE("sym_eig rejects asymmetric input") {
  Matrix<double> a(2, 2);
  a(0, 0) = 1; a(0, 1) = 1.0;
  a(1, 0) = 1.001; a(1, 1) = 1;
  CHECK_THROWS_AS(sym_eig(a), DomainError);
}
