#pragma once

#include "gkcheck/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkcheck {

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows);
  /// Rows separated by `;`, entries by `,` or whitespace, e.g. "0,0,1; 1,0,1; 0,1,0".
  static IntegerMatrix parse(const std::string& text);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntegerMatrix transpose() const;
  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
  bool operator==(const IntegerMatrix&) const = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Integer determinant(const IntegerMatrix& m);
std::size_t rank(const IntegerMatrix& m);

/// U * M * V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal.
struct SmithForm {
  IntegerMatrix u;
  IntegerMatrix d;
  IntegerMatrix v;
  std::vector<Integer> diagonal() const;
};

/// Verifies the reconstruction and unimodularity before returning.
SmithForm smith_normal_form(const IntegerMatrix& m);

struct LatticeCheck {
  Integer det;
  /// Characteristic polynomial x^3 + c2 x^2 + c1 x + c0.
  Integer c2, c1, c0;
  Integer discriminant;
  bool rational_root = false;
  double c = 0;              // the real eigenvalue, when the discriminant is negative
  bool c_greater_than_one = false;
  double alpha_norm2 = 0;    // |alpha|^2 of the complex pair
  double alpha_norm2_times_c = 0;
  bool accepted = false;
  std::vector<std::string> failures;
};

/// det M = 1, one real and two complex eigenvalues, real eigenvalue c > 1.
LatticeCheck lattice_matrix_check(const IntegerMatrix& m);

struct Letter {
  int generator;
  long exponent;
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

/// Merges adjacent powers of the same generator and drops trivial letters.
Word reduce(const Word& w);

class PresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int index_of(const std::string& name) const;
  /// Text form: `generators g0 g1 ...` then one relator per line, e.g. `g0 g1 g0^-1 g1^-1`.
  std::string str() const;
  static GroupPresentation parse(const std::string& text);
  bool operator==(const GroupPresentation&) const = default;
};

/// Integer matrix of the rotation w -> zeta w on the lattice Z[zeta], p in {2,3,4,6}.
IntegerMatrix rotation_matrix(int p);

/// g0 acting on the free abelian group on g1..gk by the rows of `action`:
/// g0 g_j g0^-1 = prod_k g_k^{action(j,k)}.
GroupPresentation semidirect_presentation(const IntegerMatrix& action);

/// Generators g0..g5 for M (3x3) and the order-p rotation on the last two.
GroupPresentation inoue_lattice_presentation(const IntegerMatrix& m, int p);

/// Sets one generator to the identity.
GroupPresentation kill_generator(const GroupPresentation& p, const std::string& name);

/// Exponent-sum matrix: one row per relator, one column per generator.
IntegerMatrix relation_matrix(const GroupPresentation& p);

struct Abelianization {
  int free_rank = 0;
  std::vector<Integer> torsion;
  SmithForm snf;
};

Abelianization abelianization(const GroupPresentation& p);

/// Rank of [G,G] for presentations of the shape produced by
/// semidirect_presentation (g0 acting on an abelian normal subgroup).
int derived_subgroup_rank(const GroupPresentation& p);

}  // namespace gkcheck
