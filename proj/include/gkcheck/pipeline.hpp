#pragma once

#include "gkcheck/catalog.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gkcheck {

enum class Check { jacobi, unimodular, solvable, integrable, compatible, gk, skt, lee, ricci, cohomology, gualtieri, group };

std::string check_name(Check c);
const std::vector<Check>& all_checks();

struct CheckSelection {
  std::set<Check> checks;
  /// Named on the command line: a missing component then counts as a failure.
  bool explicit_selection = false;

  static CheckSelection all();
  static CheckSelection none() { return {}; }
  /// Comma-separated names, e.g. "jacobi,ricci"; "all" selects everything
  /// and "none" nothing.
  static CheckSelection parse(const std::string& text);
  bool has(Check c) const { return checks.count(c) > 0; }
};

enum class Status { pass, fail, skipped, error };
std::string status_name(Status s);

struct Outcome {
  std::string check;
  Status status;
  std::string detail;
};

struct Report {
  std::string entry;
  std::vector<std::string> basis;

  std::optional<bool> jacobi;
  std::optional<bool> unimodular;
  std::optional<int> solvable_steps;
  std::optional<bool> integrable_plus;
  std::optional<bool> integrable_minus;
  std::optional<bool> gk_eq3;
  std::optional<bool> skt;
  std::optional<std::string> torsion_class;  // zero, exact, non-exact
  std::optional<Form> h;
  std::optional<std::vector<int>> betti;
  std::optional<Matrix<Scalar>> ricci;
  std::optional<Form> lee_form;
  std::optional<bool> lck;
  std::optional<int> b1_group;
  std::vector<std::string> annotations;

  std::vector<std::string> certificates;
  std::vector<Outcome> outcomes;

  /// Every requested check passed or was skipped without being named.
  bool passed() const;
};

/// Runs the selected checks in dependency order: jacobi, unimodularity,
/// derived series, integrability, compatibility, gk, skt, lee form, ricci,
/// cohomology, gualtieri pair, group abelianization.
Report verify_pipeline(const CatalogEntry& entry, const CheckSelection& checks);

enum class ReportFormat { human, machine };

std::string emit_report(const Report& r, ReportFormat format);

}  // namespace gkcheck
