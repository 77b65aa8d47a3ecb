#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gkcheck {

using Rational = mpq_class;
using Integer = mpz_class;

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter name to numeric value, used only by approximate evaluation.
using NumericAssignment = std::map<std::string, double>;
/// Parameter name to exact value, used by specialization.
using ExactAssignment = std::map<std::string, Rational>;

/// A power product of named parameters. Factors are kept sorted by name and
/// every stored exponent is positive, so equal monomials compare equal.
class Monomial {
 public:
  using Factor = std::pair<std::string, unsigned>;

  Monomial() = default;
  static Monomial variable(std::string name, unsigned exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned total_degree() const;
  unsigned exponent(std::string_view var) const;
  bool is_one() const { return factors_.empty(); }

  Monomial operator*(const Monomial& other) const;
  /// True when this monomial divides `other`.
  bool divides(const Monomial& other) const;
  Monomial quotient(const Monomial& divisor) const;
  /// Drops the factor for `var`.
  Monomial without(std::string_view var) const;

  bool operator==(const Monomial&) const = default;

  std::string str() const;

 private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic comparison; variables ordered by name.
int grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_compare(a, b) > 0;
  }
};

/// Sparse multivariate polynomial with rational coefficients. Terms are stored
/// leading-first under graded lex order; zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  Polynomial(long value);  // NOLINT(google-explicit-constructor)
  Polynomial(const Rational& value);  // NOLINT(google-explicit-constructor)
  static Polynomial variable(const std::string& name);
  static Polynomial term(const Monomial& m, const Rational& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  std::size_t size() const { return terms_.size(); }

  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;
  std::set<std::string> variables() const;

  unsigned degree_in(std::string_view var) const;
  /// Coefficient of var^k, as a polynomial free of `var`.
  Polynomial coefficient_in(std::string_view var, unsigned k) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial&) const = default;

  /// Exact quotient, or nothing when `divisor` does not divide this polynomial.
  std::optional<Polynomial> exact_divide(const Polynomial& divisor) const;
  /// Scaled so that the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;

  double evaluate(const NumericAssignment& values) const;
  Polynomial substitute(const ExactAssignment& values) const;

  /// Human/parser-compatible text, e.g. `a^2 - 1/2*a*b + 3`.
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  TermMap terms_;
};

/// Monic greatest common divisor over Q[params]; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

std::string rational_str(const Rational& q);

}  // namespace gkcheck
