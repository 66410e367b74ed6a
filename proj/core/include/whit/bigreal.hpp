#pragma once

#include <mpfr.h>

#include <iosfwd>
#include <string>

namespace whit {

/// Arbitrary-precision real backed by MPFR.
///
/// Precision is expressed in decimal digits and is carried by the value:
/// binary operations produce a result at the larger precision of the two
/// operands, so a computation seeded at N digits stays at N digits without
/// global state.  All roundings are to nearest.
class BigReal {
public:
  BigReal() : BigReal(0.0, default_digits()) {}
  BigReal(double v) : BigReal(v, default_digits()) {}
  BigReal(int v) : BigReal(static_cast<double>(v), default_digits()) {}
  BigReal(long v) : BigReal(static_cast<double>(v), default_digits()) {}
  BigReal(double v, int digits);
  explicit BigReal(const std::string& s, int digits = default_digits());
  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  /// Process-wide precision used when a BigReal is created without an
  /// explicit digit count.
  static int default_digits();
  static void set_default_digits(int digits);

  int digits() const;
  double to_double() const;
  std::string str(int significant = 0) const;
  bool is_finite() const;
  int sign() const;  // -1, 0, +1

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }
  BigReal operator-() const;

  friend int compare(const BigReal& a, const BigReal& b);
  friend bool operator<(const BigReal& a, const BigReal& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return compare(a, b) >= 0; }
  friend bool operator==(const BigReal& a, const BigReal& b) { return compare(a, b) == 0; }
  friend bool operator!=(const BigReal& a, const BigReal& b) { return compare(a, b) != 0; }

  friend BigReal abs(const BigReal& x);
  friend BigReal sqrt(const BigReal& x);
  friend BigReal exp(const BigReal& x);
  friend BigReal log(const BigReal& x);
  friend BigReal pow(const BigReal& x, const BigReal& y);
  friend BigReal pow(const BigReal& x, long n);
  friend BigReal sin(const BigReal& x);
  friend BigReal cos(const BigReal& x);
  friend BigReal sinh(const BigReal& x);
  friend BigReal cosh(const BigReal& x);
  friend BigReal tanh(const BigReal& x);
  friend BigReal tgamma(const BigReal& x);
  friend BigReal lgamma(const BigReal& x);

  /// pi at the given number of decimal digits.
  static BigReal pi(int digits);

  friend std::ostream& operator<<(std::ostream& os, const BigReal& x);

private:
  mpfr_t v_;
};

inline BigReal pow(const BigReal& x, int n) { return pow(x, static_cast<long>(n)); }
inline BigReal pow(const BigReal& x, double y) { return pow(x, BigReal(y, x.digits())); }

// Mixed arithmetic keeps the BigReal operand's precision.
inline BigReal operator+(const BigReal& a, double b) { return a + BigReal(b, a.digits()); }
inline BigReal operator+(double a, const BigReal& b) { return BigReal(a, b.digits()) + b; }
inline BigReal operator-(const BigReal& a, double b) { return a - BigReal(b, a.digits()); }
inline BigReal operator-(double a, const BigReal& b) { return BigReal(a, b.digits()) - b; }
inline BigReal operator*(const BigReal& a, double b) { return a * BigReal(b, a.digits()); }
inline BigReal operator*(double a, const BigReal& b) { return BigReal(a, b.digits()) * b; }
inline BigReal operator/(const BigReal& a, double b) { return a / BigReal(b, a.digits()); }
inline BigReal operator/(double a, const BigReal& b) { return BigReal(a, b.digits()) / b; }

inline bool operator<(const BigReal& a, double b) { return a < BigReal(b, a.digits()); }
inline bool operator>(const BigReal& a, double b) { return a > BigReal(b, a.digits()); }
inline bool operator<=(const BigReal& a, double b) { return a <= BigReal(b, a.digits()); }
inline bool operator>=(const BigReal& a, double b) { return a >= BigReal(b, a.digits()); }
inline bool operator==(const BigReal& a, double b) { return a == BigReal(b, a.digits()); }

/// Uniform scalar access for code that is generic over double and BigReal.
inline double as_double(double x) { return x; }
inline double as_double(const BigReal& x) { return x.to_double(); }

}  // namespace whit
