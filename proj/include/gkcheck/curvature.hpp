#pragma once

#include "gkcheck/complexgeom.hpp"

#include <array>
#include <optional>
#include <vector>

namespace gkcheck {

/// Left-invariant connection: gamma[i](k, j) = Gamma^k_{ij}, so that
/// nabla_{e_i} e_j = sum_k Gamma^k_{ij} e_k.
struct Connection {
  StructureEquations algebra;
  std::vector<Matrix<Scalar>> gamma;

  Vector covariant(const Vector& x, const Vector& y) const;
};

/// Koszul formula; asserts metric compatibility and zero torsion.
Connection levi_civita(const StructureEquations& g, const HermitianMetric& metric);

bool is_metric(const Connection& c, const HermitianMetric& metric);
bool is_torsion_free(const Connection& c);

/// R(e_i, e_j) = nabla_i nabla_j - nabla_j nabla_i - nabla_{[e_i, e_j]}, as a matrix.
Matrix<Scalar> curvature(const Connection& c, int i, int j);

/// Ric(X, Y) = tr(Z -> R(Z, X) Y) in the frame basis.
Matrix<Scalar> ricci(const Connection& c);

/// First frame index tuple (i, j, k, l) with R(e_i, e_j) e_k having nonzero e_l-component.
std::optional<std::array<int, 4>> curvature_witness(const Connection& c);

bool first_bianchi_holds(const Connection& c);

}  // namespace gkcheck
