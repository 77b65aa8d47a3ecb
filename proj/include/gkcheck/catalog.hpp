#pragma once

#include "gkcheck/complexgeom.hpp"
#include "gkcheck/groups.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkcheck {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, index, unknown_parameter, invalid };

  ParseError(Kind kind, int line, int column, const std::string& message);

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  Kind kind_;
  int line_;
  int column_;
  std::string message_;
};

/// Lattice data for the group presentation: the SL(3,Z) action on the Inoue
/// factor (absent for a bare rotation group) and the rotation order p.
struct LatticeRecipe {
  std::optional<IntegerMatrix> matrix;
  int p = 0;

  GroupPresentation presentation() const;
  bool operator==(const LatticeRecipe&) const = default;
};

/// Intended numeric value of a parameter, kept as written (`1`, `pi/2`).
struct ParameterValue {
  std::string name;
  std::string text;

  double value() const;
  bool operator==(const ParameterValue&) const = default;
};

struct CatalogEntry {
  std::string name;
  StructureEquations algebra;
  std::optional<std::vector<CForm>> j_plus;
  std::optional<std::vector<CForm>> j_minus;
  std::optional<HermitianMetric> metric;
  std::optional<LatticeRecipe> lattice;
  std::string model;  // coordinate model name, empty when none
  std::vector<ParameterValue> values;

  ComplexStructure complex_plus() const { return ComplexStructure::build(algebra, j_plus.value()); }
  ComplexStructure complex_minus() const { return ComplexStructure::build(algebra, j_minus.value()); }
  NumericAssignment numeric_values() const;

  bool operator==(const CatalogEntry&) const = default;
};

/// Throws std::invalid_argument when a component does not fit the algebra.
void validate(const CatalogEntry& e);

/// Exact specialization of some parameters in every component.
CatalogEntry specialize(const CatalogEntry& e, const ExactAssignment& values);

/// Built-in entries: s_ab, inoue4, rot3, l6 and family_<n> for n >= 1.
std::vector<std::string> catalog_names();
std::string catalog_description(const std::string& name);
CatalogEntry catalog_entry(const std::string& name);
CatalogEntry family_entry(int n);

/// Line-oriented definition format; a missing `d e<i>` line means de^i = 0.
CatalogEntry parse_definition(const std::string& text);
std::string print_definition(const CatalogEntry& e);

/// A scalar expression that may use `pi`, evaluated numerically (`pi/2`).
double parse_numeric_value(const std::string& text);
/// A parameter-free scalar expression such as `3/4`. Throws ParseError.
Rational parse_rational_value(const std::string& text);

}  // namespace gkcheck
