#pragma once

#include "gkcheck/exterior.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gkcheck {

using Point = std::vector<long double>;

/// Simply-connected group R x| R^{n-1} in global coordinates (t, x_1, ..)
/// where t acts on the remaining coordinates by exponential scalings and
/// rotations. The coframe is given by explicit coefficient functions; the
/// abelian model has no t coordinate.
class GroupModel {
 public:
  struct Block {
    enum class Kind { scaling, rotation } kind;
    int first;   // 0-based coframe index
    int second;  // second index of a rotation block, unused otherwise
    /// Rate as a function of the parameters: e^first = exp(rate t) dx for a
    /// scaling, cos(rate t) dx + sin(rate t) dy for a rotation.
    long double (*rate)(const NumericAssignment&);
  };

  GroupModel(std::string name, int dim, int t_index, std::vector<Block> blocks);
  static GroupModel abelian(int dim);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  Point identity() const { return Point(dim_, 0.0L); }
  Point product(const Point& x, const Point& y, const NumericAssignment& v) const;
  /// Row i holds the coefficients of e^{i+1} on dx_1..dx_n at the point.
  std::vector<Point> coframe(const Point& x, const NumericAssignment& v) const;
  /// Coordinate slot of coframe index i (t comes first, the rest in order).
  int coordinate_of(int i) const { return slot_[i]; }

 private:
  std::string name_;
  int dim_;
  int t_index_;  // -1 for the abelian model
  std::vector<Block> blocks_;
  std::vector<int> slot_;
};

/// Built-in models: s_ab, inoue4, rot3, l6, family (dimension 4 + 2n) and
/// abelian. Throws std::invalid_argument for an unknown name or dimension.
GroupModel make_model(const std::string& name, int dim);
bool is_model_name(const std::string& name);

struct CoframeCheck {
  long double max_deviation = 0;
  int samples = 0;
};

/// Central finite differences of the coordinate coframe against the
/// structure equations evaluated at `values`, at random points in [-1,1]^n.
CoframeCheck numeric_coframe_check(const GroupModel& model, const StructureEquations& g,
                                   const NumericAssignment& values, int samples, long double step,
                                   std::uint32_t seed = 20240613);

/// Max |(xy)z - x(yz)| over random triples.
long double associativity_deviation(const GroupModel& model, const NumericAssignment& values, int samples,
                                    std::uint32_t seed = 7);
/// Max |ex - x| + |xe - x| over random points.
long double identity_deviation(const GroupModel& model, const NumericAssignment& values, int samples,
                               std::uint32_t seed = 11);
/// Max deviation of L_g^* e^i - e^i, with dL_g approximated by central differences.
long double left_invariance_deviation(const GroupModel& model, const NumericAssignment& values, int samples,
                                      long double step, std::uint32_t seed = 13);

}  // namespace gkcheck
