#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "whit/bigreal.hpp"
#include "whit/errors.hpp"

namespace whit {

/// Dense row-major matrix, generic over double and BigReal.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& init = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, init) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transposed() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class T>
T trace(const Matrix<T>& m) {
  T t(0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// LU factorization with partial pivoting, kept around so callers can reuse
/// it for several solves and inspect the pivot spread.
template <class T>
struct LU {
  Matrix<T> m;
  std::vector<std::size_t> perm;
  int parity = 1;       // sign of the permutation
  bool singular = false;
  T min_abs_pivot = T(0);
  T max_abs_pivot = T(0);
};

template <class T>
LU<T> lu_factor(Matrix<T> a) {
  using std::abs;
  const std::size_t n = a.rows();
  LU<T> f;
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    T best = abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      T cand = abs(a(i, k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.parity = -f.parity;
    }
    if (!(best > T(0))) {
      f.singular = true;
      f.min_abs_pivot = T(0);
      f.m = std::move(a);
      return f;
    }
    if (k == 0 || best > f.max_abs_pivot) f.max_abs_pivot = best;
    if (k == 0 || best < f.min_abs_pivot) f.min_abs_pivot = best;

    for (std::size_t i = k + 1; i < n; ++i) {
      a(i, k) /= a(k, k);
      const T& lik = a(i, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
    }
  }
  f.m = std::move(a);
  return f;
}

template <class T>
T lu_det(const LU<T>& f) {
  if (f.singular) return T(0);
  T d(f.parity);
  for (std::size_t i = 0; i < f.m.rows(); ++i) d *= f.m(i, i);
  return d;
}

template <class T>
std::vector<T> lu_solve(const LU<T>& f, const std::vector<T>& b) {
  if (f.singular) throw PrecisionError("lu_solve: singular matrix");
  const std::size_t n = f.m.rows();
  std::vector<T> x(n, T(0));
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.m(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.m(i, j) * x[j];
    x[i] /= f.m(i, i);
  }
  return x;
}

template <class T>
Matrix<T> lu_solve(const LU<T>& f, const Matrix<T>& b) {
  const std::size_t n = f.m.rows(), m = b.cols();
  Matrix<T> x(n, m);
  std::vector<T> col(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    std::vector<T> sol = lu_solve(f, col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

template <class T>
T det(const Matrix<T>& a) {
  return lu_det(lu_factor(a));
}

template <class T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b) {
  return lu_solve(lu_factor(a), b);
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  return solve(a, Matrix<T>::identity(a.rows()));
}

/// Eigendecomposition of a real symmetric matrix (double precision).
struct SymEig {
  std::vector<double> values;  // descending
  Matrix<double> vectors;      // orthonormal columns, aligned with values
};

/// Householder tridiagonalization followed by implicit-shift QL.
/// Rejects input whose asymmetry exceeds `asym_tol` relative to the largest
/// entry.
SymEig sym_eig(const Matrix<double>& a, double asym_tol = 1e-12);

}  // namespace whit
