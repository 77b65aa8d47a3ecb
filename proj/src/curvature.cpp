#include "gkcheck/curvature.hpp"

#include <stdexcept>

namespace gkcheck {

Vector Connection::covariant(const Vector& x, const Vector& y) const {
  const int n = algebra.dim();
  Vector out(n);
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    const Vector gy = gamma[i].apply(y);
    for (int k = 0; k < n; ++k) out[k] += x[i] * gy[k];
  }
  return out;
}

Connection levi_civita(const StructureEquations& g, const HermitianMetric& metric) {
  const int n = g.dim();
  if (metric.dim() != n) throw DimensionMismatch("metric and algebra have different dimensions");
  const Matrix<Scalar> ginv = inverse(metric.gram());
  const auto e = [&](int i) { return basis_vector<Scalar>(n, i); };

  // 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
  Connection c{g, std::vector<Matrix<Scalar>>(n, Matrix<Scalar>(n, n))};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vector k(n);
      for (int l = 0; l < n; ++l) {
        k[l] = Scalar::rational(1, 2) *
               (metric(g.bracket(i, j), e(l)) - metric(g.bracket(j, l), e(i)) + metric(g.bracket(l, i), e(j)));
      }
      const Vector col = ginv.apply(k);
      for (int m = 0; m < n; ++m) c.gamma[i](m, j) = col[m];
    }
  }
  if (!is_metric(c, metric) || !is_torsion_free(c)) throw std::logic_error("Koszul connection check failed");
  return c;
}

bool is_metric(const Connection& c, const HermitianMetric& metric) {
  // (nabla_i g)(e_j, e_k) = -g(nabla_i e_j, e_k) - g(e_j, nabla_i e_k).
  const Matrix<Scalar>& gram = metric.gram();
  for (const auto& gi : c.gamma) {
    const Matrix<Scalar> t = gi.transpose() * gram;
    if (!(t + t.transpose()).is_zero()) return false;
  }
  return true;
}

bool is_torsion_free(const Connection& c) {
  const int n = c.algebra.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vector br = c.algebra.bracket(i, j);
      for (int k = 0; k < n; ++k)
        if (!(c.gamma[i](k, j) - c.gamma[j](k, i) - br[k]).is_zero()) return false;
    }
  }
  return true;
}

Matrix<Scalar> curvature(const Connection& c, int i, int j) {
  const int n = c.algebra.dim();
  Matrix<Scalar> r = c.gamma[i] * c.gamma[j] - c.gamma[j] * c.gamma[i];
  for (int k = 0; k < n; ++k) {
    const Scalar& ck = c.algebra.bracket_coefficient(k, i, j);
    if (!ck.is_zero()) r -= ck * c.gamma[k];
  }
  return r;
}

Matrix<Scalar> ricci(const Connection& c) {
  const int n = c.algebra.dim();
  Matrix<Scalar> ric(n, n);
  for (int z = 0; z < n; ++z) {
    for (int x = 0; x < n; ++x) {
      const Matrix<Scalar> r = curvature(c, z, x);
      for (int y = 0; y < n; ++y) ric(x, y) += r(z, y);
    }
  }
  if (!(ric == ric.transpose())) throw std::logic_error("Ricci tensor is not symmetric");
  return ric;
}

std::optional<std::array<int, 4>> curvature_witness(const Connection& c) {
  const int n = c.algebra.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Matrix<Scalar> r = curvature(c, i, j);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (!r(l, k).is_zero()) return std::array<int, 4>{i, j, k, l};
    }
  return std::nullopt;
}

bool first_bianchi_holds(const Connection& c) {
  const int n = c.algebra.dim();
  std::vector<Matrix<Scalar>> r(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i * n + j] = curvature(c, i, j);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          // R(e_i,e_j)e_k + R(e_j,e_k)e_i + R(e_k,e_i)e_j
          const Scalar s = r[i * n + j](l, k) + r[j * n + k](l, i) + r[k * n + i](l, j);
          if (!s.is_zero()) return false;
        }
  return true;
}

}  // namespace gkcheck
