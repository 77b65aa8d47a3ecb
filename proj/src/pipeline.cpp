#include "gkcheck/pipeline.hpp"

#include "gkcheck/cohomology.hpp"
#include "gkcheck/curvature.hpp"
#include "gkcheck/generalized.hpp"

#include "json.hpp"

#include <iomanip>
#include <sstream>

namespace gkcheck {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::vector<std::string> s;
  for (int x : v) s.push_back(std::to_string(x));
  return join(s, " ");
}

bool is_nilpotent_algebra(const StructureEquations& g) {
  // Lower central series g, [g,g], [g,[g,g]], ... until it stops shrinking.
  const int n = g.dim();
  std::vector<Vector> current;
  for (int i = 0; i < n; ++i) current.push_back(basis_vector<Scalar>(n, i));
  for (int step = 0; step <= n; ++step) {
    if (current.empty()) return true;
    Matrix<Scalar> m(n * current.size(), n);
    std::size_t row = 0;
    for (int j = 0; j < n; ++j) {
      for (const auto& v : current) {
        const Vector w = g.bracket(basis_vector<Scalar>(n, j), v);
        for (int i = 0; i < n; ++i) m(row, i) = w[i];
        ++row;
      }
    }
    rref(m);
    std::vector<Vector> next;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Vector v(n);
      bool zero = true;
      for (int i = 0; i < n; ++i) {
        v[i] = m(r, i);
        zero = zero && v[i].is_zero();
      }
      if (!zero) next.push_back(v);
    }
    if (next.size() == current.size()) return false;
    current = std::move(next);
  }
  return current.empty();
}

/// Names of a span when its reduced basis consists of coordinate vectors.
std::optional<std::vector<std::string>> coordinate_span(const std::vector<Vector>& basis,
                                                        const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  Matrix<Scalar> m(basis.size(), n);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (int i = 0; i < n; ++i) m(r, i) = basis[r][i];
  const auto pivots = rref(m);
  std::vector<std::string> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    for (int i = 0; i < n; ++i)
      if (i != static_cast<int>(pivots[r]) && !m(r, i).is_zero()) return std::nullopt;
    out.push_back(names[pivots[r]]);
  }
  return out;
}

std::string matrix_row(const Matrix<Scalar>& m, std::size_t r) {
  std::vector<std::string> s;
  for (std::size_t c = 0; c < m.cols(); ++c) s.push_back(m(r, c).str());
  return "[" + join(s, ", ") + "]";
}

bool covers_params(const CatalogEntry& e) {
  const auto v = e.numeric_values();
  for (const auto& p : e.algebra.params())
    if (!v.count(p)) return false;
  return true;
}

std::string values_text(const CatalogEntry& e) {
  std::vector<std::string> s;
  for (const auto& v : e.values) s.push_back(v.name + " = " + v.text);
  return join(s, ", ");
}

}  // namespace

std::string check_name(Check c) {
  switch (c) {
    case Check::jacobi: return "jacobi";
    case Check::unimodular: return "unimodular";
    case Check::solvable: return "solvable";
    case Check::integrable: return "integrable";
    case Check::compatible: return "compatible";
    case Check::gk: return "gk";
    case Check::skt: return "skt";
    case Check::lee: return "lee";
    case Check::ricci: return "ricci";
    case Check::cohomology: return "cohomology";
    case Check::gualtieri: return "gualtieri";
    case Check::group: return "group";
  }
  return "";
}

const std::vector<Check>& all_checks() {
  static const std::vector<Check> all{Check::jacobi, Check::unimodular, Check::solvable, Check::integrable,
                                      Check::compatible, Check::gk, Check::skt, Check::lee,
                                      Check::ricci, Check::cohomology, Check::gualtieri, Check::group};
  return all;
}

CheckSelection CheckSelection::all() {
  CheckSelection s;
  s.checks.insert(all_checks().begin(), all_checks().end());
  return s;
}

CheckSelection CheckSelection::parse(const std::string& text) {
  CheckSelection s;
  s.explicit_selection = true;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    if (item == "none") continue;
    if (item == "all") {
      s.checks.insert(all_checks().begin(), all_checks().end());
      continue;
    }
    bool found = false;
    for (Check c : all_checks()) {
      if (check_name(c) == item) {
        s.checks.insert(c);
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("unknown check '" + item + "'");
  }
  return s;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::error: return "error";
  }
  return "";
}

bool Report::passed() const {
  for (const auto& o : outcomes)
    if (o.status == Status::fail || o.status == Status::error) return false;
  return true;
}

Report verify_pipeline(const CatalogEntry& entry, const CheckSelection& sel) {
  Report r;
  r.entry = entry.name;
  const auto& g = entry.algebra;
  const int n = g.dim();
  const auto names = g.names();
  r.basis = names;

  auto record = [&](Check c, Status s, const std::string& detail) {
    r.outcomes.push_back({check_name(c), s, detail});
  };
  auto missing = [&](Check c, const std::string& what) {
    record(c, sel.explicit_selection ? Status::fail : Status::skipped, "entry has no " + what);
  };
  auto guarded = [&](Check c, auto&& body) {
    if (!sel.has(c)) return;
    try {
      body();
    } catch (const std::exception& ex) {
      record(c, Status::error, ex.what());
    }
  };

  const JacobiResult jac = jacobi_check(g);
  const bool lie = jac.holds;

  guarded(Check::jacobi, [&] {
    r.jacobi = jac.holds;
    if (jac.holds) {
      record(Check::jacobi, Status::pass, "d(d " + names[0] + ") = .. = 0 for all " + std::to_string(n) + " generators");
    } else {
      r.certificates.push_back("d(d " + names[jac.offending_index] + ") = " + format_form(jac.witness, names));
      record(Check::jacobi, Status::fail, "d^2 != 0 on " + names[jac.offending_index]);
    }
  });

  if (!lie) {
    for (Check c : all_checks())
      if (c != Check::jacobi && sel.has(c)) record(c, Status::error, "not a Lie algebra: Jacobi identity fails");
    return r;
  }

  const bool unimodular = unimodularity_check(g);
  guarded(Check::unimodular, [&] {
    r.unimodular = unimodular;
    record(Check::unimodular, Status::pass, unimodular ? "tr ad = 0" : "tr ad != 0");
    if (!unimodular) r.annotations.push_back("not unimodular: no lattice exists, so the group has no compact quotient");
  });

  guarded(Check::solvable, [&] {
    const auto series = derived_series(g);
    r.certificates.push_back("derived series dimensions: " + join_ints(series));
    const auto steps = solvable_steps(series);
    if (steps) r.solvable_steps = *steps;
    record(Check::solvable, Status::pass, steps ? std::to_string(*steps) + "-step solvable" : "not solvable");
    // Mostow: an abelian codimension-one nilradical gives a torus bundle over S^1.
    std::vector<Vector> frame;
    for (int i = 0; i < n; ++i) frame.push_back(basis_vector<Scalar>(n, i));
    const auto derived = bracket_span(g, frame);
    if (unimodular && static_cast<int>(derived.size()) == n - 1 && bracket_span(g, derived).empty() &&
        !is_nilpotent_algebra(g)) {
      const auto span = coordinate_span(derived, names);
      r.annotations.push_back("nilradical " + (span ? "span(" + join(*span, ", ") + ")" : std::string("[g,g]")) +
                              " is abelian of codimension one: a compact quotient fibres over S^1 with fibre T^" +
                              std::to_string(n - 1) + " (annotation, not verified topology)");
    }
    if (entry.lattice && entry.lattice->matrix && n > 4)
      r.annotations.push_back("projection onto the first four coordinates: T^" + std::to_string(n - 4) +
                              "-bundle over the Inoue surface (annotation, not verified topology)");
  });

  // Complex structures and Hermitian pairs, built on demand.
  std::optional<ComplexStructure> jp, jm;
  std::optional<IntegrabilityResult> ip, im;
  if (entry.j_plus) {
    jp = entry.complex_plus();
    ip = is_integrable(*jp);
  }
  if (entry.j_minus) {
    jm = entry.complex_minus();
    im = is_integrable(*jm);
  }
  const bool compatible_plus = jp && entry.metric && compatible(*jp, *entry.metric);
  const bool compatible_minus = jm && entry.metric && compatible(*jm, *entry.metric);
  std::optional<HermitianPair> pp, pm;
  if (compatible_plus) pp.emplace(*jp, *entry.metric);
  if (compatible_minus) pm.emplace(*jm, *entry.metric);

  guarded(Check::integrable, [&] {
    if (!jp) return missing(Check::integrable, "complex structure");
    r.integrable_plus = ip->integrable;
    for (const auto& line : ip->certificate) r.certificates.push_back("J+ " + line);
    bool ok = ip->integrable;
    if (jm) {
      r.integrable_minus = im->integrable;
      for (const auto& line : im->certificate) r.certificates.push_back("J- " + line);
      ok = ok && im->integrable;
    }
    record(Check::integrable, ok ? Status::pass : Status::fail,
           ok ? "no (0,2)-components, Nijenhuis tensor vanishes" : "some d(omega) has a (0,2)-component");
  });

  guarded(Check::compatible, [&] {
    if (!jp) return missing(Check::compatible, "complex structure");
    if (!entry.metric) return missing(Check::compatible, "metric");
    const bool ok = compatible_plus && (!jm || compatible_minus);
    const auto pd = entry.metric->positive_definite();
    if (!pd) r.annotations.push_back("metric assumed positive-definite");
    const bool definite = pd.value_or(true);
    record(Check::compatible, ok && definite ? Status::pass : Status::fail,
           !ok ? "metric is not J-invariant" : definite ? "g(J.,J.) = g" : "metric is not positive-definite");
  });

  // H = d^c_+ F_+, shared by the gk, cohomology and gualtieri checks.
  std::optional<Form> h;
  auto need_pairs = [&](Check c, bool both) -> bool {
    if (!jp || (both && !jm)) {
      missing(c, both ? "pair of complex structures" : "complex structure");
      return false;
    }
    if (!entry.metric) {
      missing(c, "metric");
      return false;
    }
    if (!ip->integrable || (both && !im->integrable)) {
      record(c, Status::fail, "complex structure is not integrable");
      return false;
    }
    if (!pp || (both && !pm)) {
      record(c, Status::fail, "metric is not J-invariant");
      return false;
    }
    return true;
  };

  guarded(Check::gk, [&] {
    if (!need_pairs(Check::gk, true)) return;
    const GKReport gk = gk_check(*pp, *pm);
    r.gk_eq3 = gk.holds();
    h = gk.h;
    r.h = gk.h;
    r.certificates.push_back("H = J+ dF+ = " + format_form(gk.h, names));
    r.certificates.push_back(std::string("J+ dF+ + J- dF- = 0: ") + (gk.eq3a ? "yes" : "no") +
                             ", d(J+ dF+) = 0: " + (gk.eq3b ? "yes" : "no") + ", d(J- dF-) = 0: " +
                             (gk.eq3c ? "yes" : "no"));
    if (gk.trivial) r.annotations.push_back("J- = +-J+: the generalized Kahler structure is trivial");
    record(Check::gk, gk.holds() ? Status::pass : Status::fail,
           gk.holds() ? "bi-Hermitian equations hold" : "bi-Hermitian equations fail");
  });

  guarded(Check::skt, [&] {
    if (!need_pairs(Check::skt, false)) return;
    bool ok = skt_check(*pp);
    if (pm) ok = ok && skt_check(*pm);
    r.skt = ok;
    record(Check::skt, ok ? Status::pass : Status::fail, ok ? "d d^c F = 0" : "d d^c F != 0");
  });

  guarded(Check::lee, [&] {
    if (!need_pairs(Check::lee, false)) return;
    if (n < 6) {
      r.annotations.push_back("Lee form not computed: theta is not unique below dimension 6");
      record(Check::lee, Status::skipped, "dimension " + std::to_string(n) + " < 6");
      return;
    }
    const auto plus = lee_form(*pp);
    std::optional<LeeForm> minus;
    if (pm) minus = lee_form(*pm);
    if (plus) {
      r.lee_form = plus->theta;
      r.certificates.push_back("dF+ = theta ^ F+ with theta = " + format_form(plus->theta, names));
    } else {
      r.certificates.push_back("dF+ = theta ^ F+ has no solution");
    }
    const bool lck = plus && plus->closed && (!pm || (minus && minus->closed));
    r.lck = lck;
    if (lck) r.annotations.push_back("locally conformally Kahler: Lee form exists and is closed");
    record(Check::lee, Status::pass, plus ? (plus->closed ? "closed Lee form" : "Lee form not closed") : "no Lee form");
  });

  guarded(Check::ricci, [&] {
    if (!entry.metric) return missing(Check::ricci, "metric");
    const Connection c = levi_civita(g, *entry.metric);
    r.ricci = ricci(c);
    record(Check::ricci, Status::pass, "Levi-Civita connection, Ric(X,Y) = tr(Z -> R(Z,X)Y)");
  });

  std::optional<CEComplex> ce;
  guarded(Check::cohomology, [&] {
    ce.emplace(g);
    r.betti = betti_numbers(*ce);
    std::string detail = "b = " + join_ints(*r.betti);
    if (unimodular)
      r.annotations.push_back(
          "Betti numbers are Lie algebra cohomology; they match de Rham cohomology of a compact quotient only "
          "under extra hypotheses such as complete solvability");
    if (!h && pp && ip->integrable) h = d_c(*pp);
    if (h) {
      r.h = *h;
      if (h->is_zero()) {
        r.torsion_class = "zero";
      } else {
        const auto ex = is_exact(*ce, *h);
        r.torsion_class = ex.exact ? "exact" : "non-exact";
        if (ex.exact)
          r.certificates.push_back("H = d(" + format_form(*ex.primitive, names) + ")");
        else
          r.certificates.push_back("H not exact: phi = " + format_form(*ex.certificate, names) +
                                   " kills every exact 3-form, phi(H) = " + apply_functional(*ex.certificate, *h).str());
      }
      if (!unimodular)
        r.annotations.push_back(std::string("H is ") + (*r.torsion_class == "non-exact" ? "not " : "") +
                                "d of an invariant 2-form (Lie algebra cohomology only, no compact quotient)");
      else
        r.annotations.push_back(*r.torsion_class == "non-exact" ? "twisted: [H] != 0" : "untwisted: [H] = 0");
      detail += ", H " + *r.torsion_class;
    }
    record(Check::cohomology, Status::pass, detail);
  });

  guarded(Check::gualtieri, [&] {
    if (!need_pairs(Check::gualtieri, true)) return;
    const GualtieriPair gp = gualtieri_pair(*pp, *pm);
    std::optional<int> sign = definiteness(gp.product_form);
    if (!sign) {
      if (!covers_params(entry)) {
        record(Check::gualtieri, Status::fail, "product pairing depends on parameters without given values");
        return;
      }
      sign = definiteness_at(gp.product_form, entry.numeric_values());
      r.annotations.push_back("<J1 J2 u, u> definiteness decided numerically at " + values_text(entry));
    }
    const Form hh = h ? *h : d_c(*pp);
    const bool inv1 = involutivity_check(g, gp.j1, hh).involutive;
    const bool inv2 = involutivity_check(g, gp.j2, hh).involutive;
    r.certificates.push_back("J1, J2 commute, square to -1 and preserve the pairing; <J1 J2 u, u> sign " +
                             std::to_string(*sign));
    r.certificates.push_back(std::string("H-involutive: J1 ") + (inv1 ? "yes" : "no") + ", J2 " + (inv2 ? "yes" : "no"));
    const bool ok = *sign != 0 && inv1 && inv2;
    record(Check::gualtieri, ok ? Status::pass : Status::fail,
           ok ? "generalized Kahler pair" : *sign == 0 ? "product pairing indefinite" : "not H-involutive");
  });

  guarded(Check::group, [&] {
    if (!entry.lattice) return missing(Check::group, "lattice");
    if (entry.lattice->matrix) {
      const LatticeCheck lc = lattice_matrix_check(*entry.lattice->matrix);
      std::ostringstream os;
      os << std::setprecision(10) << "lattice matrix " << entry.lattice->matrix->str() << ": det " << lc.det.get_str()
         << ", discriminant " << lc.discriminant.get_str() << ", c = " << lc.c;
      r.certificates.push_back(os.str());
      if (!lc.accepted) {
        record(Check::group, Status::fail, "lattice matrix rejected: " + join(lc.failures, "; "));
        return;
      }
    }
    const GroupPresentation p = entry.lattice->presentation();
    const Abelianization ab = abelianization(p);
    r.b1_group = ab.free_rank;
    std::vector<std::string> torsion;
    for (const auto& t : ab.torsion) torsion.push_back("Z/" + t.get_str());
    std::vector<std::string> diag;
    for (const auto& x : ab.snf.diagonal()) diag.push_back(x.get_str());
    r.certificates.push_back("relation matrix SNF diagonal: " + join(diag, " ") + " (U M V = D checked)");
    r.certificates.push_back("abelianization: Z^" + std::to_string(ab.free_rank) +
                             (torsion.empty() ? "" : " + " + join(torsion, " + ")));
    const int derived = derived_subgroup_rank(p);
    r.certificates.push_back("rank [G,G] = " + std::to_string(derived) + ", rank G = " +
                             std::to_string(ab.free_rank) + " + " + std::to_string(derived) + " = " +
                             std::to_string(ab.free_rank + derived) + " generators " +
                             std::to_string(p.generators.size()));
    bool ok = ab.free_rank + derived == static_cast<int>(p.generators.size());
    std::string detail = "b1 = " + std::to_string(ab.free_rank);
    if (r.betti) {
      const bool agree = (*r.betti)[1] == ab.free_rank;
      detail += agree ? ", agrees with CE b1" : ", disagrees with CE b1 = " + std::to_string((*r.betti)[1]);
      ok = ok && agree;
    }
    record(Check::group, ok ? Status::pass : Status::fail, detail);
  });

  return r;
}

std::string emit_report(const Report& r, ReportFormat format) {
  const auto& names = r.basis;
  if (format == ReportFormat::machine) {
    using nlohmann::ordered_json;
    ordered_json j;
    auto opt = [](const auto& o) { return o ? ordered_json(*o) : ordered_json(nullptr); };
    j["jacobi"] = opt(r.jacobi);
    j["unimodular"] = opt(r.unimodular);
    j["solvable_steps"] = opt(r.solvable_steps);
    j["integrable_plus"] = opt(r.integrable_plus);
    j["integrable_minus"] = opt(r.integrable_minus);
    j["gk_eq3"] = opt(r.gk_eq3);
    j["skt"] = opt(r.skt);
    j["torsion_class"] = opt(r.torsion_class);
    j["H"] = r.h ? ordered_json(format_form(*r.h, names)) : ordered_json(nullptr);
    j["betti"] = opt(r.betti);
    if (r.ricci) {
      ordered_json rows = ordered_json::array();
      for (std::size_t i = 0; i < r.ricci->rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < r.ricci->cols(); ++k) row.push_back((*r.ricci)(i, k).str());
        rows.push_back(row);
      }
      j["ricci"] = rows;
    } else {
      j["ricci"] = nullptr;
    }
    j["lee_form"] = r.lee_form ? ordered_json(format_form(*r.lee_form, names)) : ordered_json(nullptr);
    j["lck"] = opt(r.lck);
    j["b1_group"] = opt(r.b1_group);
    j["annotations"] = r.annotations.empty() ? ordered_json(nullptr) : ordered_json(r.annotations);
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "entry " << (r.entry.empty() ? "(unnamed)" : r.entry) << "\n\n";
  os << std::left << std::setw(12) << "check" << std::setw(9) << "status" << "detail\n";
  for (const auto& o : r.outcomes)
    os << std::setw(12) << o.check << std::setw(9) << status_name(o.status) << o.detail << "\n";
  os << "\n";
  auto line = [&](const std::string& key, const std::string& value) { os << std::setw(16) << key << value << "\n"; };
  auto yn = [](const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : "-"; };
  line("jacobi", yn(r.jacobi));
  line("unimodular", yn(r.unimodular));
  line("solvable_steps", r.solvable_steps ? std::to_string(*r.solvable_steps) : "-");
  line("integrable", std::string(yn(r.integrable_plus)) + " / " + yn(r.integrable_minus));
  line("gk_eq3", yn(r.gk_eq3));
  line("skt", yn(r.skt));
  line("H", r.h ? format_form(*r.h, names) : "-");
  line("torsion_class", r.torsion_class.value_or("-"));
  line("betti", r.betti ? join_ints(*r.betti) : "-");
  if (r.ricci) {
    for (std::size_t i = 0; i < r.ricci->rows(); ++i) line(i == 0 ? "ricci" : "", matrix_row(*r.ricci, i));
  } else {
    line("ricci", "-");
  }
  line("lee_form", r.lee_form ? format_form(*r.lee_form, names) : "-");
  line("lck", yn(r.lck));
  line("b1_group", r.b1_group ? std::to_string(*r.b1_group) : "-");
  if (!r.certificates.empty()) {
    os << "\ncertificates\n";
    for (const auto& c : r.certificates) os << "  " << c << "\n";
  }
  if (!r.annotations.empty()) {
    os << "\nannotations\n";
    for (const auto& a : r.annotations) os << "  " << a << "\n";
  }
  os << "\n" << (r.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace gkcheck
