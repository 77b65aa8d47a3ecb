#include "gkcheck/catalog.hpp"

#include "gkcheck/group_model.hpp"

#include <algorithm>
#include <cctype>

namespace gkcheck {

namespace {

Form two_form(int n, int j, int k, const Scalar& c) {
  Form f(n, 2);
  f.add_term({j - 1, k - 1}, c);
  return f;
}

/// (1,0)-forms e^{2r-1} + s_r i e^{2r}.
std::vector<CForm> paired_coframe(int n, const std::vector<int>& signs) {
  std::vector<CForm> out;
  for (int r = 0; r < n / 2; ++r) {
    CForm w = CForm::covector(n, 2 * r);
    w.add_term({2 * r + 1}, CScalar(Scalar(0L), Scalar(static_cast<long>(signs[r]))));
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<int> signs(int m, int first) {
  std::vector<int> s(m, 1);
  s[0] = first;
  return s;
}

IntegerMatrix companion() { return IntegerMatrix::from_rows({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}}); }

void require_params(const std::set<std::string>& used, const std::vector<std::string>& params,
                    const std::string& where) {
  for (const auto& p : used)
    if (std::find(params.begin(), params.end(), p) == params.end())
      throw std::invalid_argument(where + " uses undeclared parameter " + p);
}

}  // namespace

ParseError::ParseError(Kind kind, int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column),
      message_(message) {}

GroupPresentation LatticeRecipe::presentation() const {
  if (matrix && p != 0) return inoue_lattice_presentation(*matrix, p);
  if (matrix) return semidirect_presentation(*matrix);
  return semidirect_presentation(rotation_matrix(p));
}

double ParameterValue::value() const { return parse_numeric_value(text); }

NumericAssignment CatalogEntry::numeric_values() const {
  NumericAssignment out;
  for (const auto& v : values) out[v.name] = v.value();
  return out;
}

void validate(const CatalogEntry& e) {
  const auto& g = e.algebra;
  const int n = g.dim();
  for (const auto* side : {&e.j_plus, &e.j_minus}) {
    if (!*side) continue;
    if (n % 2 != 0) throw std::invalid_argument("complex structure on an odd-dimensional algebra");
    for (const auto& w : **side) {
      for (const auto& [_, c] : w.terms()) {
        require_params(c.re().parameters(), g.params(), "complex structure");
        require_params(c.im().parameters(), g.params(), "complex structure");
      }
    }
    ComplexStructure::build(g, **side);
  }
  if (e.j_minus && !e.j_plus) throw std::invalid_argument("J- given without J+");
  if (e.metric) {
    if (e.metric->dim() != n) throw std::invalid_argument("metric has the wrong dimension");
    for (std::size_t i = 0; i < e.metric->gram().rows(); ++i)
      for (std::size_t j = 0; j < e.metric->gram().cols(); ++j)
        require_params(e.metric->gram()(i, j).parameters(), g.params(), "metric");
  }
  if (e.lattice) {
    const auto& l = *e.lattice;
    if (l.p != 0 && l.p != 2 && l.p != 3 && l.p != 4 && l.p != 6)
      throw std::invalid_argument("lattice rotation order must be 2, 3, 4 or 6");
    if (l.matrix && (l.matrix->rows() != 3 || l.matrix->cols() != 3))
      throw std::invalid_argument("lattice matrix must be 3x3");
    if (!l.matrix && l.p == 0) throw std::invalid_argument("lattice needs a matrix or a rotation order");
  }
  if (!e.model.empty()) make_model(e.model, n);
  for (const auto& v : e.values) {
    if (std::find(g.params().begin(), g.params().end(), v.name) == g.params().end())
      throw std::invalid_argument("value given for undeclared parameter " + v.name);
    v.value();
  }
}

CatalogEntry specialize(const CatalogEntry& e, const ExactAssignment& values) {
  CatalogEntry out = e;
  out.algebra = e.algebra.substitute(values);
  auto sub_forms = [&](std::optional<std::vector<CForm>>& side) {
    if (!side) return;
    for (auto& w : *side) w = w.map_coefficients([&](const CScalar& c) { return c.substitute(values); });
  };
  sub_forms(out.j_plus);
  sub_forms(out.j_minus);
  if (e.metric) out.metric = HermitianMetric(e.metric->gram().map([&](const Scalar& x) { return x.substitute(values); }));
  std::erase_if(out.values, [&](const ParameterValue& v) { return values.count(v.name) > 0; });
  return out;
}

std::vector<std::string> catalog_names() { return {"s_ab", "inoue4", "rot3", "l6", "family_n"}; }

std::string catalog_description(const std::string& name) {
  if (name == "s_ab") return "6-dim 2-step solvable, parameters a, b; compact quotient at a = 1, b = pi/2";
  if (name == "inoue4") return "4-dim algebra of the Inoue surface S0";
  if (name == "rot3") return "3-dim rotation algebra, parameter b2 standing for 2*pi";
  if (name == "l6") return "6-dim completely solvable, not unimodular, basis f";
  if (name == "family_n") return "dimension 4 + 2n extension of s_ab, use family_1, family_2, ...";
  throw std::invalid_argument("unknown catalog entry " + name);
}

CatalogEntry family_entry(int n) {
  if (n < 1) throw std::invalid_argument("family needs n >= 1");
  const int dim = 4 + 2 * n;
  const Scalar a = Scalar::parameter("a");
  const Scalar b = Scalar::parameter("b");
  const Scalar half_a = Scalar::rational(1, 2) * a;
  std::vector<Form> d(dim, Form(dim, 2));
  d[0] = two_form(dim, 1, 2, a);
  d[2] = two_form(dim, 2, 3, half_a);
  d[3] = two_form(dim, 2, 4, half_a);
  for (int k = 1; k <= n; ++k) {
    d[2 * k + 2] = two_form(dim, 2, 2 * k + 4, b);
    d[2 * k + 3] = two_form(dim, 2, 2 * k + 3, -b);
  }
  CatalogEntry e;
  e.name = "family_" + std::to_string(n);
  e.algebra = StructureEquations(dim, {"a", "b"}, d);
  e.j_plus = paired_coframe(dim, signs(dim / 2, 1));
  e.j_minus = paired_coframe(dim, signs(dim / 2, -1));
  e.metric = HermitianMetric::identity(dim);
  e.model = "family";
  e.values = {{"a", "1"}, {"b", "pi/2"}};
  return e;
}

CatalogEntry catalog_entry(const std::string& name) {
  CatalogEntry e;
  e.name = name;
  if (name == "s_ab") {
    e = family_entry(1);
    e.name = name;
    e.lattice = LatticeRecipe{companion(), 4};
    e.model = "s_ab";
  } else if (name == "inoue4") {
    const int n = 4;
    const Scalar h = Scalar::rational(1, 2);
    e.algebra = StructureEquations(n, {}, {two_form(n, 1, 2, 1L), Form(n, 2), two_form(n, 2, 3, h), two_form(n, 2, 4, h)});
    e.j_plus = paired_coframe(n, {1, 1});
    e.j_minus = paired_coframe(n, {-1, 1});
    e.metric = HermitianMetric::identity(n);
    e.lattice = LatticeRecipe{companion(), 0};
    e.model = "inoue4";
  } else if (name == "rot3") {
    // e^2, e^5, e^6 of s_ab renamed to e^1, e^2, e^3.
    const int n = 3;
    const Scalar b2 = Scalar::parameter("b2");
    e.algebra = StructureEquations(n, {"b2"}, {Form(n, 2), two_form(n, 1, 3, b2), two_form(n, 1, 2, -b2)});
    e.metric = HermitianMetric::identity(n);
    e.lattice = LatticeRecipe{std::nullopt, 4};
    e.model = "rot3";
    e.values = {{"b2", "2*pi"}};
  } else if (name == "l6") {
    const int n = 6;
    const Scalar h = Scalar::rational(1, 2);
    e.algebra = StructureEquations(n, {},
                                   {two_form(n, 1, 2, 1L), Form(n, 2), two_form(n, 2, 3, h), two_form(n, 2, 4, h),
                                    two_form(n, 2, 5, h), two_form(n, 2, 6, h)},
                                   "f");
    e.j_plus = paired_coframe(n, {1, 1, 1});
    e.j_minus = paired_coframe(n, {-1, 1, 1});
    e.metric = HermitianMetric::identity(n);
    e.model = "l6";
  } else if (name.rfind("family_", 0) == 0) {
    const std::string tail = name.substr(7);
    if (tail.empty() || tail.size() > 3 || !std::all_of(tail.begin(), tail.end(), ::isdigit))
      throw std::invalid_argument("family entries are named family_1, family_2, ...");
    return family_entry(std::stoi(tail));
  } else {
    throw std::invalid_argument("unknown catalog entry " + name);
  }
  validate(e);
  return e;
}

}  // namespace gkcheck
