#pragma once

#include "gkcheck/complexgeom.hpp"

#include <optional>
#include <vector>

namespace gkcheck {

/// Invariant section X + xi of T + T*.
template <class T>
struct BasicGeneralizedVector {
  BasicVector<T> vec;
  BasicForm<T> covec;

  bool operator==(const BasicGeneralizedVector&) const = default;
};
using GeneralizedVector = BasicGeneralizedVector<Scalar>;
using CGeneralizedVector = BasicGeneralizedVector<CScalar>;

GeneralizedVector tangent(const Vector& x);
GeneralizedVector cotangent(const Form& xi);

/// Coordinates (X^1..X^n, xi_1..xi_n).
template <class T>
BasicVector<T> coordinates(const BasicGeneralizedVector<T>& u) {
  BasicVector<T> out = u.vec;
  for (int i = 0; i < u.covec.dim(); ++i) out.push_back(u.covec.coefficient({i}));
  return out;
}
template <class T>
BasicGeneralizedVector<T> from_coordinates(const BasicVector<T>& c) {
  const int n = static_cast<int>(c.size()) / 2;
  BasicGeneralizedVector<T> u{BasicVector<T>(c.begin(), c.begin() + n), BasicForm<T>(n, 1)};
  for (int i = 0; i < n; ++i) u.covec.add_term({i}, c[n + i]);
  return u;
}

/// <X + xi, Y + eta> = 1/2 (eta(X) + xi(Y)).
Scalar pairing(const GeneralizedVector& u, const GeneralizedVector& v);
/// Gram matrix of the pairing on the basis (e_1..e_n, e^1..e^n).
Matrix<Scalar> pairing_gram(int n);

/// Endomorphism of T + T* acting on coordinates, block form (A, pi; sigma, -A^T).
class GeneralizedStructure {
 public:
  /// Throws unless the matrix squares to -1 and preserves the pairing.
  explicit GeneralizedStructure(Matrix<Scalar> m);

  const Matrix<Scalar>& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()) / 2; }
  Matrix<Scalar> block(int row, int col) const;

  bool operator==(const GeneralizedStructure&) const = default;

 private:
  Matrix<Scalar> m_;
};

bool squares_to_minus_one(const Matrix<Scalar>& m);
bool preserves_pairing(const Matrix<Scalar>& m);

/// Matrix of X -> iota_X w.
Matrix<Scalar> flat_map(const Form& w);

/// (-J, 0; 0, J^T).
GeneralizedStructure from_complex(const ComplexStructure& j);
/// (0, -w^{-1}; w, 0). Throws when w is degenerate or not closed.
GeneralizedStructure from_symplectic(const StructureEquations& g, const Form& w);

/// [X,Y] + iota_X d eta - iota_Y d xi + iota_Y iota_X H on invariant sections.
/// Throws NotClosed when dH != 0.
template <class T>
BasicGeneralizedVector<T> courant_bracket(const StructureEquations& g, const BasicForm<T>& h,
                                          const BasicGeneralizedVector<T>& u, const BasicGeneralizedVector<T>& v);

struct GualtieriPair {
  GeneralizedStructure j1;
  GeneralizedStructure j2;
  /// Symmetric matrix of u -> <J1 J2 u, u>.
  Matrix<Scalar> product_form;
};

/// J_{1,2} = 1/2 (J_{J+} +- J_{J-} + J_{F+} -+ J_{F-}).
GualtieriPair gualtieri_pair(const HermitianPair& plus, const HermitianPair& minus);

/// +1 / -1 when definite, 0 when indefinite; decided exactly via leading
/// principal minors when the matrix is parameter-free, nothing otherwise.
std::optional<int> definiteness(const Matrix<Scalar>& q);
/// The same decision with the minors evaluated numerically.
int definiteness_at(const Matrix<Scalar>& q, const NumericAssignment& values, double tol = 1e-9);

struct InvolutivityResult {
  bool involutive = true;
  std::vector<CVector> eigenbasis;  // coordinates of a basis of the +i eigenspace
  std::optional<std::pair<int, int>> failing_pair;
};

InvolutivityResult involutivity_check(const StructureEquations& g, const GeneralizedStructure& j, const Form& h);

}  // namespace gkcheck
