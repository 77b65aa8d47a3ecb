#pragma once

#include "gkcheck/exterior.hpp"

#include <optional>
#include <vector>

namespace gkcheck {

class JacobiFailure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotClosed : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Chevalley-Eilenberg complex of invariant forms.
class CEComplex {
 public:
  /// Throws JacobiFailure when d^2 != 0.
  explicit CEComplex(StructureEquations g);

  const StructureEquations& algebra() const { return g_; }
  int dim() const { return g_.dim(); }
  /// Matrix of d: Lambda^k -> Lambda^{k+1}, columns and rows indexed by basis_tuples.
  /// Degrees outside 0..n give the zero map between the adjacent spaces.
  Matrix<Scalar> d(int k) const;
  std::size_t rank_d(int k) const;

  std::vector<Scalar> coordinates(const Form& a) const;
  Form form_from(int k, const std::vector<Scalar>& coords) const;

 private:
  StructureEquations g_;
  std::vector<Matrix<Scalar>> d_;
  std::vector<std::size_t> ranks_;
};

/// b_k = dim Lambda^k - rank d_k - rank d_{k-1}, for k = 0..n.
std::vector<int> betti_numbers(const CEComplex& c);

struct ExactnessResult {
  bool exact = false;
  std::optional<Form> primitive;   // d(primitive) = alpha
  /// phi with phi(d beta) = 0 for every beta and phi(alpha) != 0, given as
  /// coefficients on the k-monomial basis.
  std::optional<Form> certificate;
};

/// Throws NotClosed when d(alpha) != 0.
ExactnessResult is_exact(const CEComplex& c, const Form& alpha);

/// Sum of coefficient products, i.e. the functional phi applied to a.
Scalar apply_functional(const Form& phi, const Form& a);

}  // namespace gkcheck
