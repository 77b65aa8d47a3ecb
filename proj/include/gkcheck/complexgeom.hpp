#pragma once

#include "gkcheck/exterior.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gkcheck {

class DegenerateCoframe : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotIntegrable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MetricMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Almost complex structure on an even-dimensional algebra, given by its
/// (1,0)-forms omega^1..omega^m. Frame forms are expressed in the basis
/// (omega^1..omega^m, conj omega^1..conj omega^m), named w1..wm, wb1..wbm.
class ComplexStructure {
 public:
  static ComplexStructure build(const StructureEquations& g, std::vector<CForm> coframe10);

  const StructureEquations& algebra() const { return g_; }
  int complex_dim() const { return static_cast<int>(omega_.size()); }
  const std::vector<CForm>& coframe() const { return omega_; }
  /// Matrix of J on vectors: (J v)_i = sum_j endo(i,j) v_j.
  const Matrix<Scalar>& endo() const { return j_; }

  Vector apply(const Vector& v) const { return j_.apply(v); }

  /// Rewrites a form in the (omega, conj omega) basis, and back.
  CForm to_frame(const CForm& a) const { return substitute_coframe(a, p_inv_); }
  CForm from_frame(const CForm& a) const { return substitute_coframe(a, p_); }
  std::vector<std::string> frame_names() const;

  /// (J^{-1})^* on forms: (J.a)(X_1..X_k) = a(J^{-1}X_1, .., J^{-1}X_k).
  Form act(const Form& a) const;

 private:
  StructureEquations g_;
  std::vector<CForm> omega_;
  Matrix<Scalar> j_;
  Matrix<CScalar> p_;      // rows: coefficients of omega^r, then conj omega^r
  Matrix<CScalar> p_inv_;
};

/// Plain pullback a(JX_1, .., JX_k).
Form pullback(const Matrix<Scalar>& j, const Form& a);

/// Components of `a` by bidegree (p,q), each written back in the coframe basis.
std::map<std::pair<int, int>, CForm> bidegree_decompose(const ComplexStructure& j, const CForm& a);

struct IntegrabilityResult {
  bool integrable = true;
  bool nijenhuis_vanishes = true;
  /// One line per omega^r: `dw1 = ...` in the frame basis.
  std::vector<std::string> certificate;
};

IntegrabilityResult is_integrable(const ComplexStructure& j);

/// N(X,Y) = [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY].
Vector nijenhuis(const ComplexStructure& j, const Vector& x, const Vector& y);

class HermitianMetric {
 public:
  HermitianMetric() = default;
  explicit HermitianMetric(Matrix<Scalar> gram);
  static HermitianMetric identity(int n) { return HermitianMetric(Matrix<Scalar>::identity(n)); }

  const Matrix<Scalar>& gram() const { return gram_; }
  int dim() const { return static_cast<int>(gram_.rows()); }
  Scalar operator()(const Vector& x, const Vector& y) const;

  /// Decided by leading principal minors when every entry is a rational
  /// number; nothing when the entries involve parameters.
  std::optional<bool> positive_definite() const;
  /// Leading principal minors evaluated at the given parameter values.
  bool positive_definite_at(const NumericAssignment& values, double tol = 1e-9) const;

  bool operator==(const HermitianMetric&) const = default;

 private:
  Matrix<Scalar> gram_;
};

class HermitianPair {
 public:
  /// Throws when J is not g-orthogonal.
  HermitianPair(ComplexStructure j, HermitianMetric g);

  const ComplexStructure& j() const { return j_; }
  const HermitianMetric& g() const { return g_; }
  /// F(X,Y) = g(JX, Y).
  const Form& fundamental_form() const { return f_; }
  Matrix<Scalar> fundamental_matrix() const;

 private:
  ComplexStructure j_;
  HermitianMetric g_;
  Form f_;
};

bool compatible(const ComplexStructure& j, const HermitianMetric& g);

/// d^c F = i((dF)^{1,2} - (dF)^{2,1}), computed from the bidegree splitting.
Form d_c(const HermitianPair& p);
/// The same form via J.dF; must agree with d_c.
Form d_c_via_action(const HermitianPair& p);

bool skt_check(const HermitianPair& p);

struct GKReport {
  Form h;        // d^c_+ F_+
  bool eq3a = false;  // J+ dF+ + J- dF- = 0
  bool eq3b = false;  // d(J+ dF+) = 0
  bool eq3c = false;  // d(J- dF-) = 0
  bool trivial = false;
  bool holds() const { return eq3a && eq3b && eq3c; }
};

GKReport gk_check(const HermitianPair& plus, const HermitianPair& minus);

struct LeeForm {
  Form theta;
  bool closed = false;
};

/// Solves dF = theta ^ F. Nothing when no such theta exists.
std::optional<LeeForm> lee_form(const HermitianPair& p);

}  // namespace gkcheck
