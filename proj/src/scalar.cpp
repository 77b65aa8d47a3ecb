#include "gkcheck/scalar.hpp"

#include <cmath>

namespace gkcheck {

Scalar Scalar::fraction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DivisionByZero("zero denominator");
  if (num.is_zero()) return Scalar();
  if (den.is_constant()) return Scalar(num.scaled(1 / den.constant_value()));
  const Polynomial g = gcd(num, den);
  Polynomial n = *num.exact_divide(g);
  Polynomial d = *den.exact_divide(g);
  const Rational lc = d.leading_coefficient();
  return Scalar(n.scaled(1 / lc), d.scaled(1 / lc), 0);
}

Rational Scalar::to_rational() const { return num_.constant_value() / den_.constant_value(); }

std::set<std::string> Scalar::parameters() const {
  auto out = num_.variables();
  auto d = den_.variables();
  out.insert(d.begin(), d.end());
  return out;
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_, 0); }

Scalar& Scalar::operator+=(const Scalar& o) {
  if (den_ == o.den_) {
    if (den_.is_constant()) {
      num_ += o.num_;
      return *this;
    }
    *this = fraction(num_ + o.num_, den_);
    return *this;
  }
  *this = fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero() || o.is_zero()) {
    *this = Scalar();
    return *this;
  }
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ *= o.num_;
    return *this;
  }
  *this = fraction(num_ * o.num_, den_ * o.den_);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("division by zero scalar");
  return fraction(den_, num_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

double Scalar::evaluate(const NumericAssignment& values) const {
  const double d = den_.evaluate(values);
  if (std::abs(d) < 1e-12) throw EvaluationError("denominator vanishes at the given parameter values");
  return num_.evaluate(values) / d;
}

Scalar Scalar::substitute(const ExactAssignment& values) const {
  return fraction(num_.substitute(values), den_.substitute(values));
}

bool Scalar::is_compound() const { return num_.size() > 1 || !den_.is_constant(); }

std::string Scalar::str() const {
  if (den_.is_constant()) return num_.str();
  auto wrap = [](const Polynomial& p, bool product_ok) {
    const std::string s = p.str();
    const bool bare = p.size() == 1 && (product_ok || s.find('*') == std::string::npos);
    return bare ? s : "(" + s + ")";
  };
  // a/(a*b), not a/a*b
  return wrap(num_, true) + "/" + wrap(den_, false);
}

// ---------------------------------------------------------------------------

CScalar& CScalar::operator+=(const CScalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

CScalar& CScalar::operator-=(const CScalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

CScalar& CScalar::operator*=(const CScalar& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Scalar re = re_ * o.re_ - im_ * o.im_;
  Scalar im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

CScalar& CScalar::operator/=(const CScalar& o) {
  if (o.is_zero()) throw DivisionByZero("division by zero complex scalar");
  const Scalar n = o.norm2();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

bool CScalar::is_compound() const {
  if (im_.is_zero()) return re_.is_compound();
  if (re_.is_zero()) return im_.is_compound();
  return true;
}

std::string CScalar::str() const {
  if (im_.is_zero()) return re_.str();
  std::string imag;
  if (im_ == Scalar(1L)) {
    imag = "i";
  } else if (im_ == Scalar(-1L)) {
    imag = "-i";
  } else if (im_.is_compound()) {
    imag = "(" + im_.str() + ")*i";
  } else {
    imag = im_.str() + "*i";
  }
  if (re_.is_zero()) return imag;
  const std::string re = re_.is_compound() ? "(" + re_.str() + ")" : re_.str();
  if (imag.front() == '-') return re + " - " + imag.substr(1);
  return re + " + " + imag;
}

}  // namespace gkcheck
