#pragma once

#include "gkcheck/polynomial.hpp"

#include <set>
#include <string>

namespace gkcheck {

/// Exact element of Q(params): a reduced fraction of polynomials whose
/// denominator has leading coefficient 1. Equal values have identical
/// representations, so `==` is structural.
class Scalar {
 public:
  Scalar() : den_(1L) {}
  Scalar(long value) : num_(value), den_(1L) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& value) : num_(value), den_(1L) {}  // NOLINT
  Scalar(Polynomial value) : num_(std::move(value)), den_(1L) {}  // NOLINT

  /// Reduces num/den to canonical form. Throws DivisionByZero when den = 0.
  static Scalar fraction(const Polynomial& num, const Polynomial& den);
  static Scalar rational(long p, long q) { return Scalar(Rational(p, q)); }
  static Scalar parameter(const std::string& name) { return Scalar(Polynomial::variable(name)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_ == Polynomial(1L); }
  /// No parameter occurs.
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  Rational to_rational() const;  // requires is_rational()
  std::set<std::string> parameters() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar inverse() const;

  bool operator==(const Scalar&) const = default;

  /// Approximate value; for oracle and cross-check paths only.
  double evaluate(const NumericAssignment& values) const;
  /// Exact specialization of some or all parameters.
  Scalar substitute(const ExactAssignment& values) const;

  /// Text such as `1/2*a`, `(a + b)/(a - b)`.
  std::string str() const;
  /// True when str() needs parentheses to act as a factor.
  bool is_compound() const;

 private:
  Scalar(Polynomial num, Polynomial den, int) : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

/// Element of Q(params)[i], i^2 = -1.
class CScalar {
 public:
  CScalar() = default;
  CScalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  CScalar(Scalar re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  CScalar(Scalar re, Scalar im) : re_(std::move(re)), im_(std::move(im)) {}
  static CScalar i() { return {Scalar(0L), Scalar(1L)}; }

  const Scalar& re() const { return re_; }
  const Scalar& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  CScalar conj() const { return {re_, -im_}; }
  /// |z|^2 = re^2 + im^2.
  Scalar norm2() const { return re_ * re_ + im_ * im_; }

  CScalar operator-() const { return {-re_, -im_}; }
  CScalar& operator+=(const CScalar& o);
  CScalar& operator-=(const CScalar& o);
  CScalar& operator*=(const CScalar& o);
  CScalar& operator/=(const CScalar& o);
  friend CScalar operator+(CScalar a, const CScalar& b) { return a += b; }
  friend CScalar operator-(CScalar a, const CScalar& b) { return a -= b; }
  friend CScalar operator*(CScalar a, const CScalar& b) { return a *= b; }
  friend CScalar operator/(CScalar a, const CScalar& b) { return a /= b; }

  bool operator==(const CScalar&) const = default;

  CScalar substitute(const ExactAssignment& values) const {
    return {re_.substitute(values), im_.substitute(values)};
  }

  /// Text such as `1/2*a*i`, `1 + 2*i`, `(a + b)*i`.
  std::string str() const;
  bool is_compound() const;

 private:
  Scalar re_;
  Scalar im_;
};

inline CScalar conj(const CScalar& z) { return z.conj(); }
inline Scalar conj(const Scalar& x) { return x; }

}  // namespace gkcheck
