#include "gkcheck/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace gkcheck {

int sort_with_sign(IndexTuple& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

std::vector<IndexTuple> basis_tuples(int n, int k) {
  std::vector<IndexTuple> out;
  if (k < 0 || k > n) return out;
  IndexTuple cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int l = pos + 1; l < k; ++l) cur[l] = cur[l - 1] + 1;
  }
  return out;
}

std::optional<Form> real_part_if_real(const CForm& f) {
  Form out(f.dim(), f.degree());
  for (const auto& [idx, c] : f.terms()) {
    if (!c.is_real()) return std::nullopt;
    out.add_term(idx, c.re());
  }
  return out;
}

std::vector<std::string> basis_names(const std::string& symbol, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(symbol + std::to_string(i));
  return out;
}

template <class T>
std::string format_form(const BasicForm<T>& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : f.terms()) {
    std::string coef = c.is_compound() ? "(" + c.str() + ")" : c.str();
    if (!first) os << ' ';
    if (!first && coef.front() != '-') os << '+';
    first = false;
    os << coef;
    if (!idx.empty()) {
      os << ' ';
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (j > 0) os << '^';
        os << names.at(idx[j]);
      }
    }
  }
  return os.str();
}

template std::string format_form(const BasicForm<Scalar>&, const std::vector<std::string>&);
template std::string format_form(const BasicForm<CScalar>&, const std::vector<std::string>&);

// ---------------------------------------------------------------------------

StructureEquations::StructureEquations(int dim, std::vector<std::string> params, std::vector<Form> differentials,
                                       std::string basis_symbol)
    : dim_(dim), params_(std::move(params)), d1_(std::move(differentials)), symbol_(std::move(basis_symbol)) {
  if (dim_ <= 0) throw ValidationError("dimension must be positive");
  if (static_cast<int>(d1_.size()) != dim_) throw ValidationError("need one differential per coframe element");
  for (int i = 0; i < dim_; ++i) {
    const Form& d = d1_[i];
    if (d.is_zero() && (d.dim() != dim_ || d.degree() != 2)) d1_[i] = Form(dim_, 2);
    if (d1_[i].dim() != dim_ || d1_[i].degree() != 2)
      throw ValidationError("d" + symbol_ + std::to_string(i + 1) + " must be a 2-form on the algebra");
    for (const auto& [idx, c] : d1_[i].terms()) {
      for (const auto& p : c.parameters()) {
        if (std::find(params_.begin(), params_.end(), p) == params_.end())
          throw ValidationError("undeclared parameter '" + p + "'");
      }
    }
  }
  brackets_.assign(static_cast<std::size_t>(dim_) * dim_ * dim_, Scalar());
  for (int i = 0; i < dim_; ++i) {
    for (const auto& [idx, c] : d1_[i].terms()) {
      const int j = idx[0];
      const int k = idx[1];
      brackets_[(j * dim_ + k) * dim_ + i] = -c;
      brackets_[(k * dim_ + j) * dim_ + i] = c;
    }
  }
}

StructureEquations StructureEquations::abelian(int dim, std::string basis_symbol) {
  return {dim, {}, std::vector<Form>(dim, Form(dim, 2)), std::move(basis_symbol)};
}

Vector StructureEquations::bracket(int j, int k) const {
  Vector out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = bracket_coefficient(i, j, k);
  return out;
}

StructureEquations StructureEquations::substitute(const ExactAssignment& values) const {
  std::vector<Form> d;
  for (const auto& f : d1_) d.push_back(f.map_coefficients([&](const Scalar& c) { return c.substitute(values); }));
  std::vector<std::string> remaining;
  for (const auto& p : params_)
    if (!values.count(p)) remaining.push_back(p);
  return {dim_, remaining, std::move(d), symbol_};
}

// ---------------------------------------------------------------------------

template <class T>
BasicForm<T> exterior_derivative(const StructureEquations& g, const BasicForm<T>& a) {
  if (a.dim() != g.dim()) throw DimensionMismatch("form and algebra have different dimensions");
  BasicForm<T> out(a.dim(), a.degree() + 1);
  if (a.degree() >= a.dim()) return out;
  // Antiderivation on a monomial: sum_j (-1)^j e^{i1}..(de^{ij})..e^{ik}.
  for (const auto& [idx, c] : a.terms()) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const bool odd = (j % 2) == 1;
      for (const auto& [pair, dc] : g.differential(idx[j]).terms()) {
        IndexTuple next;
        next.reserve(idx.size() + 1);
        next.insert(next.end(), idx.begin(), idx.begin() + static_cast<long>(j));
        next.push_back(pair[0]);
        next.push_back(pair[1]);
        next.insert(next.end(), idx.begin() + static_cast<long>(j) + 1, idx.end());
        T v = c * T(dc);
        out.add_term(std::move(next), odd ? -v : v);
      }
    }
  }
  return out;
}

template Form exterior_derivative(const StructureEquations&, const Form&);
template CForm exterior_derivative(const StructureEquations&, const CForm&);

JacobiResult jacobi_check(const StructureEquations& g) {
  for (int i = 0; i < g.dim(); ++i) {
    Form dd = exterior_derivative(g, g.differential(i));
    if (!dd.is_zero()) return {false, i, std::move(dd)};
  }
  return {};
}

std::vector<Scalar> ad_traces(const StructureEquations& g) {
  std::vector<Scalar> out(g.dim());
  for (int j = 0; j < g.dim(); ++j)
    for (int i = 0; i < g.dim(); ++i) out[j] += g.bracket_coefficient(i, j, i);
  return out;
}

bool unimodularity_check(const StructureEquations& g) {
  for (const auto& t : ad_traces(g))
    if (!t.is_zero()) return false;
  return true;
}

namespace {

std::vector<Vector> independent_subset(const std::vector<Vector>& vecs, int dim) {
  std::vector<Vector> basis;
  for (const auto& v : vecs) {
    Matrix<Scalar> trial(basis.size() + 1, dim);
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (int c = 0; c < dim; ++c) trial(r, c) = basis[r][c];
    for (int c = 0; c < dim; ++c) trial(basis.size(), c) = v[c];
    if (rank(trial) == basis.size() + 1) basis.push_back(v);
    if (static_cast<int>(basis.size()) == dim) break;
  }
  return basis;
}

}  // namespace

std::vector<Vector> bracket_span(const StructureEquations& g, const std::vector<Vector>& basis) {
  std::vector<Vector> brackets;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) brackets.push_back(g.bracket(basis[a], basis[b]));
  return independent_subset(brackets, g.dim());
}

std::vector<int> derived_series(const StructureEquations& g) {
  std::vector<Vector> current;
  for (int i = 0; i < g.dim(); ++i) current.push_back(basis_vector<Scalar>(g.dim(), i));
  std::vector<int> dims{g.dim()};
  while (!current.empty()) {
    auto next = bracket_span(g, current);
    if (next.size() == current.size()) break;
    dims.push_back(static_cast<int>(next.size()));
    current = std::move(next);
  }
  return dims;
}

std::optional<int> solvable_steps(const std::vector<int>& series) {
  if (series.empty() || series.back() != 0) return std::nullopt;
  return static_cast<int>(series.size()) - 1;
}

}  // namespace gkcheck
