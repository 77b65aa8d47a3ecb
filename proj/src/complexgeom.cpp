#include "gkcheck/complexgeom.hpp"

#include <stdexcept>

namespace gkcheck {

namespace {

Matrix<Scalar> leading_block(const Matrix<Scalar>& m, std::size_t k) {
  Matrix<Scalar> out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = m(i, j);
  return out;
}

void require_integrable(const ComplexStructure& j) {
  if (!is_integrable(j).integrable) throw NotIntegrable("complex structure is not integrable");
}

}  // namespace

ComplexStructure ComplexStructure::build(const StructureEquations& g, std::vector<CForm> coframe10) {
  const int n = g.dim();
  const int m = static_cast<int>(coframe10.size());
  if (2 * m != n) throw DegenerateCoframe("need dim/2 forms of type (1,0)");
  for (const auto& w : coframe10)
    if (w.dim() != n || w.degree() != 1) throw DegenerateCoframe("(1,0)-forms must be 1-forms on the algebra");

  ComplexStructure cs;
  cs.g_ = g;
  cs.omega_ = std::move(coframe10);
  cs.p_ = Matrix<CScalar>(n, n);
  for (int r = 0; r < m; ++r) {
    for (const auto& [idx, c] : cs.omega_[r].terms()) {
      cs.p_(r, idx[0]) = c;
      cs.p_(m + r, idx[0]) = c.conj();
    }
  }
  if (determinant(cs.p_).is_zero()) throw DegenerateCoframe("forms and their conjugates are not a basis");
  cs.p_inv_ = inverse(cs.p_);

  // omega^r o J = i omega^r, i.e. P J = D P.
  Matrix<CScalar> diag(n, n);
  for (int r = 0; r < m; ++r) {
    diag(r, r) = CScalar::i();
    diag(m + r, m + r) = -CScalar::i();
  }
  const Matrix<CScalar> jc = cs.p_inv_ * diag * cs.p_;
  cs.j_ = Matrix<Scalar>(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (!jc(i, k).is_real()) throw std::logic_error("complex structure has non-real entries");
      cs.j_(i, k) = jc(i, k).re();
    }
  }
  if (!(cs.j_ * cs.j_ == -Matrix<Scalar>::identity(n))) throw std::logic_error("J^2 != -1");
  return cs;
}

std::vector<std::string> ComplexStructure::frame_names() const {
  std::vector<std::string> out;
  for (int r = 1; r <= complex_dim(); ++r) out.push_back("w" + std::to_string(r));
  for (int r = 1; r <= complex_dim(); ++r) out.push_back("wb" + std::to_string(r));
  return out;
}

Form pullback(const Matrix<Scalar>& j, const Form& a) { return substitute_coframe(a, j); }

Form ComplexStructure::act(const Form& a) const {
  // J^{-1} = -J.
  const Form p = pullback(j_, a);
  return a.degree() % 2 == 0 ? p : -p;
}

std::map<std::pair<int, int>, CForm> bidegree_decompose(const ComplexStructure& j, const CForm& a) {
  const int m = j.complex_dim();
  std::map<std::pair<int, int>, CForm> parts;
  const CForm framed = j.to_frame(a);
  for (const auto& [idx, c] : framed.terms()) {
    int p = 0;
    for (int i : idx)
      if (i < m) ++p;
    const std::pair<int, int> key{p, a.degree() - p};
    auto [it, _] = parts.try_emplace(key, CForm(a.dim(), a.degree()));
    it->second.add_term(idx, c);
  }
  for (auto& [_, f] : parts) f = j.from_frame(f);
  return parts;
}

Vector nijenhuis(const ComplexStructure& j, const Vector& x, const Vector& y) {
  const auto& g = j.algebra();
  const Vector jx = j.apply(x);
  const Vector jy = j.apply(y);
  Vector out = g.bracket(jx, jy);
  const Vector b = g.bracket(x, y);
  const Vector t1 = j.apply(g.bracket(jx, y));
  const Vector t2 = j.apply(g.bracket(x, jy));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] - b[i] - t1[i] - t2[i];
  return out;
}

IntegrabilityResult is_integrable(const ComplexStructure& j) {
  IntegrabilityResult res;
  const int m = j.complex_dim();
  const auto names = j.frame_names();
  for (int r = 0; r < m; ++r) {
    const CForm dw = j.to_frame(exterior_derivative(j.algebra(), j.coframe()[r]));
    for (const auto& term : dw.terms())
      if (term.first[0] >= m) res.integrable = false;
    res.certificate.push_back("d" + names[r] + " = " + format_form(dw, names));
  }
  const int n = j.algebra().dim();
  for (int a = 0; a < n && res.nijenhuis_vanishes; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Vector v = nijenhuis(j, basis_vector<Scalar>(n, a), basis_vector<Scalar>(n, b));
      bool zero = true;
      for (const auto& x : v) zero = zero && x.is_zero();
      if (!zero) {
        res.nijenhuis_vanishes = false;
        break;
      }
    }
  }
  if (res.integrable != res.nijenhuis_vanishes)
    throw std::logic_error("(0,2)-components and Nijenhuis tensor disagree");
  return res;
}

// ---------------------------------------------------------------------------

HermitianMetric::HermitianMetric(Matrix<Scalar> gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw DimensionMismatch("metric must be square");
  if (!(gram_ == gram_.transpose())) throw std::invalid_argument("metric is not symmetric");
  if (determinant(gram_).is_zero()) throw std::invalid_argument("metric is degenerate");
}

Scalar HermitianMetric::operator()(const Vector& x, const Vector& y) const {
  const Vector gy = gram_.apply(y);
  Scalar s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) s += x[i] * gy[i];
  return s;
}

std::optional<bool> HermitianMetric::positive_definite() const {
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = 0; j < gram_.cols(); ++j)
      if (!gram_(i, j).is_rational()) return std::nullopt;
  for (std::size_t k = 1; k <= gram_.rows(); ++k)
    if (determinant(leading_block(gram_, k)).to_rational() <= 0) return false;
  return true;
}

bool HermitianMetric::positive_definite_at(const NumericAssignment& values, double tol) const {
  for (std::size_t k = 1; k <= gram_.rows(); ++k)
    if (determinant(leading_block(gram_, k)).evaluate(values) <= tol) return false;
  return true;
}

bool compatible(const ComplexStructure& j, const HermitianMetric& g) {
  return j.endo().transpose() * g.gram() * j.endo() == g.gram();
}

HermitianPair::HermitianPair(ComplexStructure j, HermitianMetric g) : j_(std::move(j)), g_(std::move(g)) {
  const int n = j_.algebra().dim();
  if (g_.dim() != n) throw DimensionMismatch("metric and algebra have different dimensions");
  if (!compatible(j_, g_)) throw std::invalid_argument("metric is not J-invariant");
  const Matrix<Scalar> fm = fundamental_matrix();
  f_ = Form(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) f_.add_term({a, b}, fm(a, b));
}

Matrix<Scalar> HermitianPair::fundamental_matrix() const {
  // F(e_a, e_b) = g(J e_a, e_b) = (J^T G)(a, b).
  return j_.endo().transpose() * g_.gram();
}

Form d_c(const HermitianPair& p) {
  require_integrable(p.j());
  const CForm df = complexify(exterior_derivative(p.j().algebra(), p.fundamental_form()));
  const auto parts = bidegree_decompose(p.j(), df);
  CForm diff(df.dim(), df.degree());
  if (auto it = parts.find({1, 2}); it != parts.end()) diff += it->second;
  if (auto it = parts.find({2, 1}); it != parts.end()) diff -= it->second;
  auto real = real_part_if_real(CScalar::i() * diff);
  if (!real) throw std::logic_error("d^c F has non-real coefficients");
  return *real;
}

Form d_c_via_action(const HermitianPair& p) {
  require_integrable(p.j());
  return p.j().act(exterior_derivative(p.j().algebra(), p.fundamental_form()));
}

bool skt_check(const HermitianPair& p) { return exterior_derivative(p.j().algebra(), d_c(p)).is_zero(); }

GKReport gk_check(const HermitianPair& plus, const HermitianPair& minus) {
  if (!(plus.g() == minus.g())) throw MetricMismatch("the two Hermitian pairs use different metrics");
  require_integrable(plus.j());
  require_integrable(minus.j());
  const auto& g = plus.j().algebra();
  GKReport r;
  r.h = d_c(plus);
  const Form jp = plus.j().act(exterior_derivative(g, plus.fundamental_form()));
  const Form jm = minus.j().act(exterior_derivative(g, minus.fundamental_form()));
  r.eq3a = (jp + jm).is_zero();
  r.eq3b = exterior_derivative(g, jp).is_zero();
  r.eq3c = exterior_derivative(g, jm).is_zero();
  r.trivial = plus.j().endo() == minus.j().endo() || plus.j().endo() == -minus.j().endo();
  return r;
}

std::optional<LeeForm> lee_form(const HermitianPair& p) {
  const auto& g = p.j().algebra();
  const int n = g.dim();
  if (n < 6) throw std::invalid_argument("the Lee form is only unique in dimension >= 6");
  const Form& f = p.fundamental_form();
  const Form df = exterior_derivative(g, f);
  const auto rows = basis_tuples(n, 3);
  Matrix<Scalar> sys(rows.size(), n);
  std::vector<Scalar> rhs(rows.size());
  for (int l = 0; l < n; ++l) {
    const Form col = wedge(Form::covector(n, l), f);
    for (std::size_t r = 0; r < rows.size(); ++r) sys(r, l) = col.coefficient(rows[r]);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) rhs[r] = df.coefficient(rows[r]);
  if (rank(sys) != static_cast<std::size_t>(n)) throw std::logic_error("wedge with F is not injective on 1-forms");
  const auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  LeeForm out;
  out.theta = Form(n, 1);
  for (int l = 0; l < n; ++l) out.theta.add_term({l}, (*x)[l]);
  out.closed = exterior_derivative(g, out.theta).is_zero();
  return out;
}

}  // namespace gkcheck
