#include "gkcheck/cohomology.hpp"

#include <stdexcept>

namespace gkcheck {

namespace {

// a * b == 0, skipping zero entries of b.
bool composes_to_zero(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  std::vector<std::vector<std::pair<std::size_t, const Scalar*>>> bcol(b.cols());
  for (std::size_t k = 0; k < b.rows(); ++k)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (!b(k, j).is_zero()) bcol[j].emplace_back(k, &b(k, j));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar s;
      for (const auto& [k, v] : bcol[j])
        if (!a(i, k).is_zero()) s += a(i, k) * *v;
      if (!s.is_zero()) return false;
    }
  return true;
}

}  // namespace

CEComplex::CEComplex(StructureEquations g) : g_(std::move(g)) {
  const auto jac = jacobi_check(g_);
  if (!jac.holds) throw JacobiFailure("d^2 != 0 on " + g_.basis_symbol() + std::to_string(jac.offending_index + 1));
  const int n = g_.dim();
  for (int k = 0; k < n; ++k) {
    const auto cols = basis_tuples(n, k);
    const auto rows = basis_tuples(n, k + 1);
    Matrix<Scalar> m(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Form mono(n, k);
      mono.add_term(cols[c], Scalar(1L));
      const Form dm = exterior_derivative(g_, mono);
      for (std::size_t r = 0; r < rows.size(); ++r) m(r, c) = dm.coefficient(rows[r]);
    }
    d_.push_back(std::move(m));
  }
  for (int k = 0; k + 1 < n; ++k)
    if (!composes_to_zero(d_[k + 1], d_[k])) throw std::logic_error("consecutive differentials do not compose to zero");
  for (const auto& m : d_) ranks_.push_back(sparse_rank(m));
}

Matrix<Scalar> CEComplex::d(int k) const {
  const int n = g_.dim();
  if (k >= 0 && k < n) return d_[k];
  return Matrix<Scalar>(basis_tuples(n, k + 1).size(), basis_tuples(n, k).size());
}

std::size_t CEComplex::rank_d(int k) const { return (k >= 0 && k < g_.dim()) ? ranks_[k] : 0; }

std::vector<Scalar> CEComplex::coordinates(const Form& a) const {
  std::vector<Scalar> out;
  for (const auto& t : basis_tuples(g_.dim(), a.degree())) out.push_back(a.coefficient(t));
  return out;
}

Form CEComplex::form_from(int k, const std::vector<Scalar>& coords) const {
  const auto tuples = basis_tuples(g_.dim(), k);
  Form f(g_.dim(), k);
  for (std::size_t i = 0; i < tuples.size(); ++i) f.add_term(tuples[i], coords[i]);
  return f;
}

std::vector<int> betti_numbers(const CEComplex& c) {
  std::vector<int> out;
  for (int k = 0; k <= c.dim(); ++k) {
    const auto dimk = basis_tuples(c.dim(), k).size();
    out.push_back(static_cast<int>(dimk - c.rank_d(k) - c.rank_d(k - 1)));
  }
  return out;
}

Scalar apply_functional(const Form& phi, const Form& a) {
  Scalar s;
  for (const auto& [idx, v] : phi.terms()) s += v * a.coefficient(idx);
  return s;
}

ExactnessResult is_exact(const CEComplex& c, const Form& alpha) {
  const auto& g = c.algebra();
  if (!exterior_derivative(g, alpha).is_zero()) throw NotClosed("form is not closed");
  const int k = alpha.degree();
  ExactnessResult res;
  if (alpha.is_zero()) {
    res.exact = true;
    res.primitive = Form(g.dim(), k - 1 < 0 ? 0 : k - 1);
    return res;
  }
  if (k > 0) {
    const Matrix<Scalar> dk = c.d(k - 1);
    if (auto x = solve(dk, c.coordinates(alpha))) {
      res.exact = true;
      res.primitive = c.form_from(k - 1, *x);
      if (!(exterior_derivative(g, *res.primitive) == alpha)) throw std::logic_error("primitive does not reproduce the form");
      return res;
    }
  }
  // Left kernel of d_{k-1}: functionals vanishing on all exact k-forms.
  const Matrix<Scalar> dk = c.d(k - 1);
  for (const auto& phi : nullspace(dk.transpose())) {
    const Form f = c.form_from(k, phi);
    if (!apply_functional(f, alpha).is_zero()) {
      res.certificate = f;
      return res;
    }
  }
  throw std::logic_error("non-exact form without a separating functional");
}

}  // namespace gkcheck
