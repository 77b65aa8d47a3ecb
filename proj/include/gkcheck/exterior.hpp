#pragma once

#include "gkcheck/linalg.hpp"
#include "gkcheck/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gkcheck {

/// Strictly increasing 0-based covector indices of a wedge monomial.
using IndexTuple = std::vector<int>;

/// Sorts `idx` in place; returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(IndexTuple& idx);

/// All strictly increasing k-tuples from {0..n-1}, in lexicographic order.
std::vector<IndexTuple> basis_tuples(int n, int k);

/// Sparse alternating k-form on an n-dimensional space, with coefficients in
/// T (Scalar for real forms, CScalar for complexified ones). No stored
/// coefficient is zero.
template <class T>
class BasicForm {
 public:
  using Terms = std::map<IndexTuple, T>;

  BasicForm() = default;
  BasicForm(int dim, int degree) : dim_(dim), degree_(degree) {}

  /// The basis covector e^i (0-based).
  static BasicForm covector(int dim, int i, T coef = T(1L)) {
    BasicForm f(dim, 1);
    f.add_term({i}, std::move(coef));
    return f;
  }
  static BasicForm constant(int dim, T value) {
    BasicForm f(dim, 0);
    f.add_term({}, std::move(value));
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  T coefficient(const IndexTuple& sorted) const {
    auto it = terms_.find(sorted);
    return it == terms_.end() ? T() : it->second;
  }

  /// Adds coef * e^{idx...}; idx need not be sorted.
  void add_term(IndexTuple idx, const T& coef) {
    if (coef.is_zero()) return;
    if (static_cast<int>(idx.size()) != degree_) throw DimensionMismatch("wedge monomial has the wrong degree");
    for (int i : idx)
      if (i < 0 || i >= dim_) throw DimensionMismatch("covector index out of range");
    const int s = sort_with_sign(idx);
    if (s == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(idx), s > 0 ? coef : -coef);
    if (!inserted) {
      if (s > 0) it->second += coef; else it->second -= coef;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  BasicForm operator-() const {
    BasicForm out = *this;
    for (auto& [_, c] : out.terms_) c = -c;
    return out;
  }
  BasicForm& operator+=(const BasicForm& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.terms_) add_sorted(idx, c);
    return *this;
  }
  BasicForm& operator-=(const BasicForm& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.terms_) add_sorted(idx, -c);
    return *this;
  }
  friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
  friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
  friend BasicForm operator*(const T& s, const BasicForm& f) {
    BasicForm out(f.dim_, f.degree_);
    if (s.is_zero()) return out;
    for (const auto& [idx, c] : f.terms_) out.terms_.emplace(idx, s * c);
    return out;
  }

  bool operator==(const BasicForm&) const = default;

  template <class F>
  auto map_coefficients(F&& f) const -> BasicForm<decltype(f(std::declval<const T&>()))> {
    BasicForm<decltype(f(std::declval<const T&>()))> out(dim_, degree_);
    for (const auto& [idx, c] : terms_) out.add_term(idx, f(c));
    return out;
  }

 private:
  void add_sorted(const IndexTuple& idx, const T& c) {
    auto [it, inserted] = terms_.try_emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void check_compatible(const BasicForm& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw DimensionMismatch("adding forms of different dimension or degree");
  }

  int dim_ = 0;
  int degree_ = 0;
  Terms terms_;
};

using Form = BasicForm<Scalar>;
using CForm = BasicForm<CScalar>;

/// Invariant vector field, components in the frame e_1..e_n dual to the coframe.
template <class T>
using BasicVector = std::vector<T>;
using Vector = BasicVector<Scalar>;
using CVector = BasicVector<CScalar>;

template <class T>
BasicVector<T> basis_vector(int dim, int i) {
  BasicVector<T> v(dim);
  v[i] = T(1L);
  return v;
}

template <class T>
BasicForm<T> wedge(const BasicForm<T>& a, const BasicForm<T>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("wedge of forms on different spaces");
  BasicForm<T> out(a.dim(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_term(std::move(idx), ca * cb);
    }
  }
  return out;
}

/// Interior product: (iota_X a)(Y_2..Y_k) = a(X, Y_2..Y_k).
template <class T>
BasicForm<T> contract(const BasicVector<T>& x, const BasicForm<T>& a) {
  if (static_cast<int>(x.size()) != a.dim()) throw DimensionMismatch("contraction by a vector of the wrong dimension");
  if (a.degree() == 0) throw std::invalid_argument("cannot contract a 0-form");
  BasicForm<T> out(a.dim(), a.degree() - 1);
  for (const auto& [idx, c] : a.terms()) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const T& xj = x[idx[j]];
      if (xj.is_zero()) continue;
      IndexTuple rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t l = 0; l < idx.size(); ++l)
        if (l != j) rest.push_back(idx[l]);
      const T v = xj * c;
      out.add_term(std::move(rest), (j % 2 == 0) ? v : -v);
    }
  }
  return out;
}

/// Value of a form on k vectors, with (e^{i1}^...^e^{ik})(e_{i1},...,e_{ik}) = 1.
template <class T>
T evaluate_form(const BasicForm<T>& a, const std::vector<BasicVector<T>>& vectors) {
  if (static_cast<int>(vectors.size()) != a.degree()) throw DimensionMismatch("wrong number of vectors");
  BasicForm<T> cur = a;
  for (const auto& v : vectors) cur = contract(v, cur);
  return cur.coefficient({});
}

/// Linear change of coframe: every e^j is replaced by sum_l s(j,l) e^l.
template <class T>
BasicForm<T> substitute_coframe(const BasicForm<T>& a, const Matrix<T>& s) {
  const int n = a.dim();
  std::vector<BasicForm<T>> images;
  images.reserve(n);
  for (int j = 0; j < n; ++j) {
    BasicForm<T> img(n, 1);
    for (int l = 0; l < n; ++l) img.add_term({l}, s(j, l));
    images.push_back(std::move(img));
  }
  BasicForm<T> out(n, a.degree());
  for (const auto& [idx, c] : a.terms()) {
    BasicForm<T> term = BasicForm<T>::constant(n, c);
    for (int i : idx) term = wedge(term, images[i]);
    out += term;
  }
  return out;
}

inline CForm complexify(const Form& f) {
  return f.map_coefficients([](const Scalar& x) { return CScalar(x); });
}
inline CForm conj(const CForm& f) {
  return f.map_coefficients([](const CScalar& z) { return z.conj(); });
}
/// Real form when every coefficient is real; nothing otherwise.
std::optional<Form> real_part_if_real(const CForm& f);

/// Text `c1 e1^e3 +c2 e2` with monomials in sorted order; zero prints as `0`.
template <class T>
std::string format_form(const BasicForm<T>& f, const std::vector<std::string>& names);
std::vector<std::string> basis_names(const std::string& symbol, int n);

// ---------------------------------------------------------------------------

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Lie algebra given by the exterior derivatives of a fixed coframe
/// e^1..e^n. The bracket is dα(X,Y) = -α([X,Y]).
class StructureEquations {
 public:
  StructureEquations() = default;
  /// `differentials[i]` is de^{i+1}; every coefficient must only involve `params`.
  StructureEquations(int dim, std::vector<std::string> params, std::vector<Form> differentials,
                     std::string basis_symbol = "e");
  static StructureEquations abelian(int dim, std::string basis_symbol = "e");

  int dim() const { return dim_; }
  const std::vector<std::string>& params() const { return params_; }
  const std::string& basis_symbol() const { return symbol_; }
  std::vector<std::string> names() const { return basis_names(symbol_, dim_); }
  const Form& differential(int i) const { return d1_.at(i); }
  const std::vector<Form>& differentials() const { return d1_; }

  /// c^i_{jk}: [e_j, e_k] = sum_i c^i_{jk} e_i.
  const Scalar& bracket_coefficient(int i, int j, int k) const { return brackets_[(j * dim_ + k) * dim_ + i]; }
  Vector bracket(int j, int k) const;
  template <class T>
  BasicVector<T> bracket(const BasicVector<T>& x, const BasicVector<T>& y) const {
    BasicVector<T> out(dim_);
    for (int j = 0; j < dim_; ++j) {
      if (x[j].is_zero()) continue;
      for (int k = 0; k < dim_; ++k) {
        if (y[k].is_zero() || j == k) continue;
        const T xy = x[j] * y[k];
        for (int i = 0; i < dim_; ++i) {
          const Scalar& c = bracket_coefficient(i, j, k);
          if (!c.is_zero()) out[i] += xy * T(c);
        }
      }
    }
    return out;
  }

  StructureEquations substitute(const ExactAssignment& values) const;

  bool operator==(const StructureEquations& o) const {
    return dim_ == o.dim_ && params_ == o.params_ && d1_ == o.d1_ && symbol_ == o.symbol_;
  }

 private:
  int dim_ = 0;
  std::vector<std::string> params_;
  std::vector<Form> d1_;
  std::string symbol_ = "e";
  std::vector<Scalar> brackets_;
};

template <class T>
BasicForm<T> exterior_derivative(const StructureEquations& g, const BasicForm<T>& a);

struct JacobiResult {
  bool holds = true;
  int offending_index = -1;  // 0-based covector whose d(de^i) is nonzero
  Form witness;
};

JacobiResult jacobi_check(const StructureEquations& g);

/// trace(ad_{e_j}) for every j.
std::vector<Scalar> ad_traces(const StructureEquations& g);
bool unimodularity_check(const StructureEquations& g);

/// Dimensions of g, [g,g], [[g,g],[g,g]], ... until the sequence stabilizes.
std::vector<int> derived_series(const StructureEquations& g);
/// Steps to reach 0, or nothing if the series stabilizes at a nonzero algebra.
std::optional<int> solvable_steps(const std::vector<int>& series);

/// Basis of span{[u, v] : u, v in span(basis)} computed exactly.
std::vector<Vector> bracket_span(const StructureEquations& g, const std::vector<Vector>& basis);

}  // namespace gkcheck
