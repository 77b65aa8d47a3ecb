#include "gkcheck/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gkcheck {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::string name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(std::move(name), exponent);
  return m;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [_, e] : factors_) d += e;
  return d;
}

unsigned Monomial::exponent(std::string_view var) const {
  for (const auto& [v, e] : factors_)
    if (v == var) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  auto i = factors_.begin();
  auto j = other.factors_.begin();
  while (i != factors_.end() || j != other.factors_.end()) {
    if (j == other.factors_.end() || (i != factors_.end() && i->first < j->first)) {
      out.factors_.push_back(*i++);
    } else if (i == factors_.end() || j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [v, e] : factors_)
    if (other.exponent(v) < e) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial out;
  for (const auto& [v, e] : factors_) {
    const unsigned d = divisor.exponent(v);
    if (e > d) out.factors_.emplace_back(v, e - d);
  }
  return out;
}

Monomial Monomial::without(std::string_view var) const {
  Monomial out;
  for (const auto& f : factors_)
    if (f.first != var) out.factors_.push_back(f);
  return out;
}

std::string Monomial::str() const {
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += '*';
    s += v;
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  const unsigned da = a.total_degree();
  const unsigned db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  // Lex: the first variable (by name) whose exponents differ decides.
  auto i = a.factors().begin();
  auto j = b.factors().begin();
  while (i != a.factors().end() || j != b.factors().end()) {
    if (j == b.factors().end() || (i != a.factors().end() && i->first < j->first)) return 1;
    if (i == a.factors().end() || j->first < i->first) return -1;
    if (i->second != j->second) return i->second < j->second ? -1 : 1;
    ++i;
    ++j;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(long value) {
  if (value != 0) terms_.emplace(Monomial{}, Rational(value));
}

Polynomial::Polynomial(const Rational& value) {
  if (value != 0) terms_.emplace(Monomial{}, value);
}

Polynomial Polynomial::variable(const std::string& name) {
  return term(Monomial::variable(name), 1);
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_.begin()->second;
}

const Monomial& Polynomial::leading_monomial() const { return terms_.begin()->first; }
const Rational& Polynomial::leading_coefficient() const { return terms_.begin()->second; }

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> out;
  for (const auto& [m, _] : terms_)
    for (const auto& [v, e] : m.factors()) out.insert(v);
  return out;
}

unsigned Polynomial::degree_in(std::string_view var) const {
  unsigned d = 0;
  for (const auto& [m, _] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

Polynomial Polynomial::coefficient_in(std::string_view var, unsigned k) const {
  Polynomial out;
  for (const auto& [m, c] : terms_)
    if (m.exponent(var) == k) out.terms_.emplace(m.without(var), c);
  return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [_, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial out = *this;
  for (auto& [_, coef] : out.terms_) coef *= c;
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial out(1L);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) out *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return out;
}

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (divisor.is_constant()) return scaled(1 / divisor.constant_value());
  Polynomial rem = *this;
  Polynomial quot;
  const Monomial& lm = divisor.leading_monomial();
  const Rational& lc = divisor.leading_coefficient();
  while (!rem.is_zero()) {
    const Monomial& rm = rem.leading_monomial();
    if (!lm.divides(rm)) return std::nullopt;
    Polynomial t = term(rm.quotient(lm), rem.leading_coefficient() / lc);
    quot += t;
    rem -= t * divisor;
  }
  return quot;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return scaled(1 / leading_coefficient());
}

double Polynomial::evaluate(const NumericAssignment& values) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (const auto& [v, e] : m.factors()) {
      auto it = values.find(v);
      if (it == values.end()) throw EvaluationError("no value for parameter '" + v + "'");
      t *= std::pow(it->second, static_cast<double>(e));
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::substitute(const ExactAssignment& values) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Rational coef = c;
    Monomial rest;
    for (const auto& [v, e] : m.factors()) {
      auto it = values.find(v);
      if (it == values.end()) {
        rest = rest * Monomial::variable(v, e);
      } else {
        Rational p = 1;
        for (unsigned k = 0; k < e; ++k) p *= it->second;
        coef *= p;
      }
    }
    out.add_term(rest, coef);
  }
  return out;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << rational_str(mag);
    } else if (mag == 1) {
      os << m.str();
    } else {
      os << rational_str(mag) << '*' << m.str();
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Multivariate gcd: recursive primitive remainder sequences.

namespace {

std::string main_variable(const Polynomial& a, const Polynomial& b) {
  auto va = a.variables();
  auto vb = b.variables();
  va.insert(vb.begin(), vb.end());
  return *va.begin();
}

std::vector<Polynomial> coefficients(const Polynomial& p, const std::string& var) {
  const unsigned d = p.degree_in(var);
  std::vector<Polynomial> out(d + 1);
  for (const auto& [m, c] : p.terms()) {
    out[m.exponent(var)] += Polynomial::term(m.without(var), c);
  }
  return out;
}

Polynomial content(const Polynomial& p, const std::string& var) {
  Polynomial g;
  for (const auto& c : coefficients(p, var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial(1L);
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p, const std::string& var) {
  if (p.is_zero()) return p;
  // Rational scaling is a unit, so strip it too to keep coefficients small.
  return p.exact_divide(content(p, var))->monic();
}

// lc(b)^(deg a - deg b + 1) * a mod b, in var.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, const std::string& var) {
  const unsigned db = b.degree_in(var);
  const Polynomial lcb = b.coefficient_in(var, db);
  Polynomial r = a;
  unsigned remaining = a.degree_in(var) - db + 1;
  while (!r.is_zero()) {
    const unsigned dr = r.degree_in(var);
    if (dr < db) break;
    const Polynomial lcr = r.coefficient_in(var, dr);
    r = lcb * r - lcr * Polynomial::term(Monomial::variable(var, dr - db), 1) * b;
    --remaining;
  }
  return r * lcb.pow(remaining);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1L);
  if (a == b) return a.monic();

  const std::string x = main_variable(a, b);
  const unsigned da = a.degree_in(x);
  const unsigned db = b.degree_in(x);
  if (da == 0) return gcd(a, content(b, x));
  if (db == 0) return gcd(content(a, x), b);

  const Polynomial ca = content(a, x);
  const Polynomial cb = content(b, x);
  const Polynomial cg = gcd(ca, cb);

  Polynomial p = *a.exact_divide(ca);
  Polynomial q = *b.exact_divide(cb);
  if (p.degree_in(x) < q.degree_in(x)) std::swap(p, q);
  while (true) {
    Polynomial r = pseudo_remainder(p, q, x);
    if (r.is_zero()) break;
    if (r.degree_in(x) == 0) {
      q = Polynomial(1L);
      break;
    }
    p = std::move(q);
    q = primitive_part(r, x);
  }
  return (cg * primitive_part(q, x)).monic();
}

}  // namespace gkcheck
