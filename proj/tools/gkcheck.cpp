// gkcheck: verify the catalog's Lie algebras and their bi-Hermitian data.
// Exit status: 0 when every requested check passes, 1 when one fails,
// 2 on usage, parse or input errors.

#include "gkcheck/cohomology.hpp"
#include "gkcheck/curvature.hpp"
#include "gkcheck/group_model.hpp"
#include "gkcheck/pipeline.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace gkcheck;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CatalogEntry load_entry(const std::string& name_or_path) {
  if (std::filesystem::is_regular_file(name_or_path)) {
    CatalogEntry e = parse_definition(read_file(name_or_path));
    if (e.name.empty()) e.name = std::filesystem::path(name_or_path).stem().string();
    return e;
  }
  return catalog_entry(name_or_path);
}

/// `a=1,b=pi/2` split into name and value text.
std::vector<std::pair<std::string, std::string>> split_assignments(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected name=value in '" + item + "'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(' ');
      const auto e = s.find_last_not_of(' ');
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }
  return out;
}

CatalogEntry apply_set(const CatalogEntry& e, const std::string& set) {
  if (set.empty()) return e;
  ExactAssignment values;
  for (const auto& [name, text] : split_assignments(set)) {
    const auto& params = e.algebra.params();
    if (std::find(params.begin(), params.end(), name) == params.end())
      throw std::invalid_argument("entry has no parameter " + name);
    values[name] = parse_rational_value(text);
  }
  return specialize(e, values);
}

int cmd_list() {
  for (const auto& name : catalog_names()) std::cout << std::left << std::setw(10) << name << catalog_description(name) << "\n";
  return 0;
}

int cmd_verify(const std::string& target, const std::string& checks, bool machine, const std::string& set) {
  const CatalogEntry e = apply_set(load_entry(target), set);
  const CheckSelection sel = checks.empty() ? CheckSelection::all() : CheckSelection::parse(checks);
  const Report r = verify_pipeline(e, sel);
  std::cout << emit_report(r, machine ? ReportFormat::machine : ReportFormat::human);
  return r.passed() ? 0 : 1;
}

int cmd_cohomology(const std::string& target, int max_degree, const std::string& set) {
  const CatalogEntry e = apply_set(load_entry(target), set);
  const CEComplex ce(e.algebra);
  const auto b = betti_numbers(ce);
  const int top = max_degree < 0 ? e.algebra.dim() : std::min(max_degree, e.algebra.dim());
  long chi = 0;
  for (int k = 0; k <= top; ++k) {
    std::cout << "b" << k << " = " << b[k] << "   (rank d" << k << " = " << ce.rank_d(k) << ")\n";
  }
  for (int k = 0; k <= e.algebra.dim(); ++k) chi += (k % 2 ? -1 : 1) * b[k];
  std::cout << "euler characteristic " << chi << "\n";
  return 0;
}

int cmd_ricci(const std::string& target, const std::string& set) {
  const CatalogEntry e = apply_set(load_entry(target), set);
  if (!e.metric) throw std::invalid_argument("entry has no metric");
  const Matrix<Scalar> ric = ricci(levi_civita(e.algebra, *e.metric));
  const auto names = e.algebra.names();
  for (std::size_t i = 0; i < ric.rows(); ++i)
    for (std::size_t j = i; j < ric.cols(); ++j)
      if (!ric(i, j).is_zero())
        std::cout << "Ric(" << names[i] << ", " << names[j] << ") = " << ric(i, j).str() << "\n";
  if (ric.is_zero()) std::cout << "Ric = 0\n";
  return 0;
}

int cmd_lattice(const std::string& matrix_file, int p) {
  // One row per line, or rows separated by ';'.
  std::string text;
  std::istringstream lines(read_file(matrix_file));
  for (std::string line; std::getline(lines, line);) {
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!text.empty() && text.back() != ';') text += ';';
    text += line;
  }
  const IntegerMatrix m = IntegerMatrix::parse(text);
  const LatticeCheck lc = lattice_matrix_check(m);
  std::cout << "matrix          " << m.str() << "\n";
  std::cout << "det             " << lc.det.get_str() << "\n";
  std::cout << "charpoly        x^3 + (" << lc.c2.get_str() << ") x^2 + (" << lc.c1.get_str() << ") x + ("
            << lc.c0.get_str() << ")\n";
  std::cout << "discriminant    " << lc.discriminant.get_str() << "\n";
  std::cout << std::setprecision(12) << "c               " << lc.c << "\n";
  std::cout << "|alpha|^2 c     " << lc.alpha_norm2_times_c << "\n";
  std::cout << "accepted        " << (lc.accepted ? "true" : "false") << "\n";
  for (const auto& f : lc.failures) std::cout << "  " << f << "\n";
  if (!lc.accepted) return 1;
  const GroupPresentation pres = inoue_lattice_presentation(m, p);
  const Abelianization ab = abelianization(pres);
  const int derived = derived_subgroup_rank(pres);
  std::cout << "\npresentation\n" << pres.str();
  std::cout << "\nabelianization  Z^" << ab.free_rank;
  for (const auto& t : ab.torsion) std::cout << " + Z/" << t.get_str();
  std::cout << "\nb1              " << ab.free_rank << "\n";
  std::cout << "rank [G,G]      " << derived << "\n";
  std::cout << "rank G          " << ab.free_rank + derived << " (generators " << pres.generators.size() << ")\n";
  return ab.free_rank + derived == static_cast<int>(pres.generators.size()) ? 0 : 1;
}

int cmd_coframe(const std::string& target, const std::string& assign, int samples, double step, double tolerance) {
  const CatalogEntry e = load_entry(target);
  if (e.model.empty()) throw std::invalid_argument("entry has no coordinate model");
  NumericAssignment values = e.numeric_values();
  if (!assign.empty()) {
    for (const auto& [name, text] : split_assignments(assign)) values[name] = parse_numeric_value(text);
  }
  const GroupModel model = make_model(e.model, e.algebra.dim());
  const auto full = numeric_coframe_check(model, e.algebra, values, samples, step);
  const auto half = numeric_coframe_check(model, e.algebra, values, samples, step / 2);
  const long double ratio = half.max_deviation > 0 ? full.max_deviation / half.max_deviation : 0;
  const long double assoc = associativity_deviation(model, values, samples);
  const long double ident = identity_deviation(model, values, samples);
  const long double inv = left_invariance_deviation(model, values, samples, step);
  std::cout << std::setprecision(6);
  std::cout << "model             " << model.name() << "\n";
  std::cout << "samples           " << samples << "\n";
  std::cout << "step              " << step << "\n";
  std::cout << "max deviation     " << static_cast<double>(full.max_deviation) << "\n";
  std::cout << "at step/2         " << static_cast<double>(half.max_deviation) << "\n";
  std::cout << "ratio             " << static_cast<double>(ratio) << "\n";
  std::cout << "associativity     " << static_cast<double>(assoc) << "\n";
  std::cout << "identity          " << static_cast<double>(ident) << "\n";
  std::cout << "left invariance   " << static_cast<double>(inv) << "\n";
  const bool ok = full.max_deviation <= tolerance && assoc <= 1e-9 && ident <= 1e-9 && inv <= tolerance;
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic checks for invariant generalized Kahler structures on Lie groups"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List built-in catalog entries");

  std::string target, checks, set;
  bool machine = false;
  auto* verify = app.add_subcommand("verify", "Run the verification pipeline");
  verify->add_option("entry", target, "Catalog entry or definition file")->required();
  verify->add_option("--checks", checks, "Comma-separated checks (default: all)");
  verify->add_flag("--machine", machine, "JSON report");
  verify->add_option("--set", set, "Exact parameter values, e.g. a=1");

  int max_degree = -1;
  auto* coh = app.add_subcommand("cohomology", "Chevalley-Eilenberg Betti numbers");
  coh->add_option("entry", target, "Catalog entry or definition file")->required();
  coh->add_option("--max-degree", max_degree, "Highest degree to print");
  coh->add_option("--set", set, "Exact parameter values");

  auto* ric = app.add_subcommand("ricci", "Ricci tensor of the entry's metric");
  ric->add_option("entry", target, "Catalog entry or definition file")->required();
  ric->add_option("--set", set, "Exact parameter values");

  std::string matrix_file;
  int p = 4;
  auto* lat = app.add_subcommand("lattice", "Check an SL(3,Z) matrix and abelianize the lattice");
  lat->add_option("--matrix", matrix_file, "File with the 3x3 integer matrix")->required()->check(CLI::ExistingFile);
  lat->add_option("--p", p, "Rotation order")->check(CLI::IsMember({2, 3, 4, 6}));

  std::string assign;
  int samples = 100;
  double step = 1e-5, tolerance = 1e-6;
  auto* cf = app.add_subcommand("coframe-check", "Finite-difference check of the coordinate coframe");
  cf->add_option("entry", target, "Catalog entry or definition file")->required();
  cf->add_option("--assign", assign, "Numeric parameter values, e.g. a=1,b=pi/2");
  cf->add_option("--samples", samples, "Random points")->check(CLI::PositiveNumber);
  cf->add_option("--step", step, "Finite-difference step")->check(CLI::PositiveNumber);
  cf->add_option("--tolerance", tolerance, "Largest accepted deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) return cmd_list();
    if (verify->parsed()) return cmd_verify(target, checks, machine, set);
    if (coh->parsed()) return cmd_cohomology(target, max_degree, set);
    if (ric->parsed()) return cmd_ricci(target, set);
    if (lat->parsed()) return cmd_lattice(matrix_file, p);
    if (cf->parsed()) return cmd_coframe(target, assign, samples, step, tolerance);
  } catch (const std::exception& ex) {
    std::cerr << "gkcheck: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
