#include "whit/bigreal.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace whit {

namespace {

std::atomic<int> g_default_digits{120};

mpfr_prec_t bits_for(int digits) {
  if (digits < 1) digits = 1;
  // log2(10) = 3.3219..., plus guard bits.
  return static_cast<mpfr_prec_t>(digits * 3.3219280948873626 + 16.0);
}

int digits_for(mpfr_prec_t bits) {
  return static_cast<int>((bits - 16) / 3.3219280948873626);
}

}  // namespace

int BigReal::default_digits() { return g_default_digits.load(); }

void BigReal::set_default_digits(int digits) {
  if (digits < 1) throw std::invalid_argument("BigReal: digits must be positive");
  g_default_digits.store(digits);
}

BigReal::BigReal(double v, int digits) {
  mpfr_init2(v_, bits_for(digits));
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigReal::BigReal(const std::string& s, int digits) {
  mpfr_init2(v_, bits_for(digits));
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("BigReal: cannot parse '" + s + "'");
}

BigReal::BigReal(const BigReal& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

int BigReal::digits() const { return digits_for(mpfr_get_prec(v_)); }

double BigReal::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

std::string BigReal::str(int significant) const {
  if (significant <= 0) significant = digits();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%%.%dRe", significant);
  std::vector<char> out(static_cast<size_t>(significant) + 32);
  mpfr_snprintf(out.data(), out.size(), buf, v_);
  return std::string(out.data());
}

bool BigReal::is_finite() const { return mpfr_number_p(v_) != 0; }

int BigReal::sign() const { return mpfr_sgn(v_); }

namespace {

// Result carries the larger of the two operand precisions.
mpfr_prec_t join_prec(const mpfr_t a, const mpfr_t b) {
  mpfr_prec_t pa = mpfr_get_prec(a), pb = mpfr_get_prec(b);
  return pa > pb ? pa : pb;
}

}  // namespace

BigReal& BigReal::operator+=(const BigReal& o) {
  mpfr_prec_t p = join_prec(v_, o.v_);
  if (mpfr_get_prec(v_) != p) {
    mpfr_t tmp;
    mpfr_init2(tmp, p);
    mpfr_add(tmp, v_, o.v_, MPFR_RNDN);
    mpfr_swap(v_, tmp);
    mpfr_clear(tmp);
  } else {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
  mpfr_prec_t p = join_prec(v_, o.v_);
  if (mpfr_get_prec(v_) != p) {
    mpfr_t tmp;
    mpfr_init2(tmp, p);
    mpfr_sub(tmp, v_, o.v_, MPFR_RNDN);
    mpfr_swap(v_, tmp);
    mpfr_clear(tmp);
  } else {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
  mpfr_prec_t p = join_prec(v_, o.v_);
  if (mpfr_get_prec(v_) != p) {
    mpfr_t tmp;
    mpfr_init2(tmp, p);
    mpfr_mul(tmp, v_, o.v_, MPFR_RNDN);
    mpfr_swap(v_, tmp);
    mpfr_clear(tmp);
  } else {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
  mpfr_prec_t p = join_prec(v_, o.v_);
  if (mpfr_get_prec(v_) != p) {
    mpfr_t tmp;
    mpfr_init2(tmp, p);
    mpfr_div(tmp, v_, o.v_, MPFR_RNDN);
    mpfr_swap(v_, tmp);
    mpfr_clear(tmp);
  } else {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

int compare(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_); }

#define WHIT_BIGREAL_UNARY(name, mpfr_fn)        \
  BigReal name(const BigReal& x) {               \
    BigReal r(0.0, x.digits());                  \
    mpfr_fn(r.v_, x.v_, MPFR_RNDN);              \
    return r;                                    \
  }

WHIT_BIGREAL_UNARY(abs, mpfr_abs)
WHIT_BIGREAL_UNARY(sqrt, mpfr_sqrt)
WHIT_BIGREAL_UNARY(exp, mpfr_exp)
WHIT_BIGREAL_UNARY(log, mpfr_log)
WHIT_BIGREAL_UNARY(sin, mpfr_sin)
WHIT_BIGREAL_UNARY(cos, mpfr_cos)
WHIT_BIGREAL_UNARY(sinh, mpfr_sinh)
WHIT_BIGREAL_UNARY(cosh, mpfr_cosh)
WHIT_BIGREAL_UNARY(tanh, mpfr_tanh)
WHIT_BIGREAL_UNARY(tgamma, mpfr_gamma)

#undef WHIT_BIGREAL_UNARY

BigReal lgamma(const BigReal& x) {
  BigReal r(0.0, x.digits());
  int sign = 0;
  mpfr_lgamma(r.v_, &sign, x.v_, MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r(0.0, digits_for(join_prec(x.v_, y.v_)));
  mpfr_pow(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long n) {
  BigReal r(0.0, x.digits());
  mpfr_pow_si(r.v_, x.v_, n, MPFR_RNDN);
  return r;
}

BigReal BigReal::pi(int digits) {
  BigReal r(0.0, digits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.str(); }

}  // namespace whit
