#include "gkcheck/generalized.hpp"

#include "gkcheck/cohomology.hpp"

#include <stdexcept>

namespace gkcheck {

namespace {

Matrix<Scalar> assemble(const Matrix<Scalar>& a, const Matrix<Scalar>& pi, const Matrix<Scalar>& sigma,
                        const Matrix<Scalar>& d) {
  const std::size_t n = a.rows();
  Matrix<Scalar> m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      m(i, n + j) = pi(i, j);
      m(n + i, j) = sigma(i, j);
      m(n + i, n + j) = d(i, j);
    }
  return m;
}

Matrix<Scalar> symplectic_blocks(const Form& w) {
  const int n = w.dim();
  const Matrix<Scalar> flat = flat_map(w);
  const Matrix<Scalar> zero(n, n);
  return assemble(zero, -inverse(flat), flat, zero);
}

Matrix<Scalar> complex_blocks(const ComplexStructure& j) {
  const int n = j.algebra().dim();
  return assemble(-j.endo(), Matrix<Scalar>(n, n), Matrix<Scalar>(n, n), j.endo().transpose());
}

void require_closed(const StructureEquations& g, const BasicForm<Scalar>& h) {
  if (!exterior_derivative(g, h).is_zero()) throw NotClosed("H is not closed");
}
void require_closed(const StructureEquations& g, const BasicForm<CScalar>& h) {
  if (!exterior_derivative(g, h).is_zero()) throw NotClosed("H is not closed");
}

}  // namespace

GeneralizedVector tangent(const Vector& x) { return {x, Form(static_cast<int>(x.size()), 1)}; }
GeneralizedVector cotangent(const Form& xi) { return {Vector(xi.dim()), xi}; }

Scalar pairing(const GeneralizedVector& u, const GeneralizedVector& v) {
  return Scalar::rational(1, 2) * (evaluate_form(v.covec, {u.vec}) + evaluate_form(u.covec, {v.vec}));
}

Matrix<Scalar> pairing_gram(int n) {
  Matrix<Scalar> g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    g(i, n + i) = Scalar::rational(1, 2);
    g(n + i, i) = Scalar::rational(1, 2);
  }
  return g;
}

bool squares_to_minus_one(const Matrix<Scalar>& m) { return m * m == -Matrix<Scalar>::identity(m.rows()); }

bool preserves_pairing(const Matrix<Scalar>& m) {
  const Matrix<Scalar> g = pairing_gram(static_cast<int>(m.rows()) / 2);
  return m.transpose() * g * m == g;
}

GeneralizedStructure::GeneralizedStructure(Matrix<Scalar> m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() % 2 != 0) throw DimensionMismatch("generalized structure must be 2n x 2n");
  if (!squares_to_minus_one(m_)) throw std::invalid_argument("generalized structure does not square to -1");
  if (!preserves_pairing(m_)) throw std::invalid_argument("generalized structure does not preserve the pairing");
}

Matrix<Scalar> GeneralizedStructure::block(int row, int col) const {
  const int n = dim();
  Matrix<Scalar> b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = m_(row * n + i, col * n + j);
  return b;
}

Matrix<Scalar> flat_map(const Form& w) {
  if (w.degree() != 2) throw std::invalid_argument("flat map needs a 2-form");
  const int n = w.dim();
  Matrix<Scalar> m(n, n);
  for (const auto& [idx, c] : w.terms()) {
    // iota_{e_i}(c e^i^e^j) = c e^j.
    m(idx[1], idx[0]) = c;
    m(idx[0], idx[1]) = -c;
  }
  return m;
}

GeneralizedStructure from_complex(const ComplexStructure& j) { return GeneralizedStructure(complex_blocks(j)); }

GeneralizedStructure from_symplectic(const StructureEquations& g, const Form& w) {
  if (determinant(flat_map(w)).is_zero()) throw std::invalid_argument("2-form is degenerate");
  require_closed(g, w);
  return GeneralizedStructure(symplectic_blocks(w));
}

template <class T>
BasicGeneralizedVector<T> courant_bracket(const StructureEquations& g, const BasicForm<T>& h,
                                          const BasicGeneralizedVector<T>& u, const BasicGeneralizedVector<T>& v) {
  require_closed(g, h);
  const int n = g.dim();
  BasicGeneralizedVector<T> out{g.bracket(u.vec, v.vec), BasicForm<T>(n, 1)};
  out.covec += contract(u.vec, exterior_derivative(g, v.covec));
  out.covec -= contract(v.vec, exterior_derivative(g, u.covec));
  out.covec += contract(v.vec, contract(u.vec, h));
  return out;
}

template GeneralizedVector courant_bracket(const StructureEquations&, const Form&, const GeneralizedVector&,
                                           const GeneralizedVector&);
template CGeneralizedVector courant_bracket(const StructureEquations&, const CForm&, const CGeneralizedVector&,
                                            const CGeneralizedVector&);

GualtieriPair gualtieri_pair(const HermitianPair& plus, const HermitianPair& minus) {
  if (!(plus.g() == minus.g())) throw MetricMismatch("the two Hermitian pairs use different metrics");
  if (!is_integrable(plus.j()).integrable || !is_integrable(minus.j()).integrable)
    throw NotIntegrable("complex structure is not integrable");
  const Matrix<Scalar> cp = complex_blocks(plus.j());
  const Matrix<Scalar> cm = complex_blocks(minus.j());
  const Matrix<Scalar> sp = symplectic_blocks(plus.fundamental_form());
  const Matrix<Scalar> sm = symplectic_blocks(minus.fundamental_form());
  const Scalar half = Scalar::rational(1, 2);
  GeneralizedStructure j1(half * (cp + cm + sp - sm));
  GeneralizedStructure j2(half * (cp - cm + sp + sm));
  if (!(j1.matrix() * j2.matrix() == j2.matrix() * j1.matrix())) throw std::logic_error("Gualtieri pair does not commute");
  const Matrix<Scalar> p = j1.matrix() * j2.matrix();
  const Matrix<Scalar> g = pairing_gram(plus.g().dim());
  const Matrix<Scalar> pg = p.transpose() * g;
  return {std::move(j1), std::move(j2), half * (pg + pg.transpose())};
}

namespace {

Matrix<Scalar> leading(const Matrix<Scalar>& m, std::size_t k) {
  Matrix<Scalar> out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = m(i, j);
  return out;
}

// Sign pattern of leading principal minors: all positive, or alternating from negative.
template <class Sign>
int classify(std::size_t n, Sign sign_of_minor) {
  bool pos = true;
  bool neg = true;
  for (std::size_t k = 1; k <= n; ++k) {
    const int s = sign_of_minor(k);
    if (s <= 0) pos = false;
    if (s != (k % 2 == 1 ? -1 : 1)) neg = false;
  }
  return pos ? 1 : (neg ? -1 : 0);
}

}  // namespace

std::optional<int> definiteness(const Matrix<Scalar>& q) {
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j)
      if (!q(i, j).is_rational()) return std::nullopt;
  return classify(q.rows(), [&](std::size_t k) { return sgn(determinant(leading(q, k)).to_rational()); });
}

int definiteness_at(const Matrix<Scalar>& q, const NumericAssignment& values, double tol) {
  return classify(q.rows(), [&](std::size_t k) {
    const double v = determinant(leading(q, k)).evaluate(values);
    return v > tol ? 1 : (v < -tol ? -1 : 0);
  });
}

InvolutivityResult involutivity_check(const StructureEquations& g, const GeneralizedStructure& j, const Form& h) {
  require_closed(g, h);
  const std::size_t n2 = j.matrix().rows();
  const Matrix<CScalar> shifted = complexify(j.matrix()) - CScalar::i() * Matrix<CScalar>::identity(n2);
  InvolutivityResult res;
  res.eigenbasis = nullspace(shifted);
  if (res.eigenbasis.size() != n2 / 2) throw std::logic_error("+i eigenspace is not maximal");
  const CForm hc = complexify(h);
  for (std::size_t a = 0; a < res.eigenbasis.size(); ++a) {
    for (std::size_t b = a + 1; b < res.eigenbasis.size(); ++b) {
      const auto w = courant_bracket(g, hc, from_coordinates(res.eigenbasis[a]), from_coordinates(res.eigenbasis[b]));
      for (const auto& x : shifted.apply(coordinates(w))) {
        if (!x.is_zero()) {
          res.involutive = false;
          res.failing_pair = {static_cast<int>(a), static_cast<int>(b)};
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace gkcheck
