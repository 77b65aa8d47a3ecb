#include "gkcheck/groups.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gkcheck {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged integer matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix IntegerMatrix::parse(const std::string& text) {
  std::vector<std::vector<long>> rows;
  std::stringstream all(text);
  std::string row;
  while (std::getline(all, row, ';')) {
    for (char& ch : row)
      if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
    std::istringstream in(row);
    std::vector<long> r;
    std::string tok;
    while (in >> tok) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw std::invalid_argument("bad matrix entry '" + tok + "'");
      r.push_back(v);
    }
    if (!r.empty()) rows.push_back(std::move(r));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  return from_rows(rows);
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("integer matrix product shape mismatch");
  IntegerMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("integer matrix shape mismatch");
  IntegerMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

std::string IntegerMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i > 0) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) os << (j > 0 ? "," : "") << (*this)(i, j).get_str();
  }
  return os.str();
}

namespace {

// Bareiss elimination over Z; returns the rank and (for square input) the determinant.
std::size_t bareiss(IntegerMatrix m, Integer* det) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Integer prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  if (det != nullptr) *det = (rows == cols && r == rows) ? Integer(sign * prev) : Integer(0);
  return r;
}

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_a -= q * row_b
void add_row(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= q * m(b, j);
}
void add_col(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) -= q * m(i, b);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  Integer d;
  bareiss(m, &d);
  return d;
}

std::size_t rank(const IntegerMatrix& m) { return bareiss(m, nullptr); }

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntegerMatrix d = m;
  IntegerMatrix u = IntegerMatrix::identity(rows);
  IntegerMatrix v = IntegerMatrix::identity(cols);

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows;
      std::size_t pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (pr == rows || abs(d(i, j)) < abs(d(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) break;
      swap_rows(d, t, pr);
      swap_rows(u, t, pr);
      swap_cols(d, t, pc);
      swap_cols(v, t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        const Integer q = floor_div(d(i, t), d(t, t));
        add_row(d, i, t, q);
        add_row(u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        const Integer q = floor_div(d(t, j), d(t, t));
        add_col(d, j, t, q);
        add_col(v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and go again.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row(d, t, bad, Integer(-1));
      add_row(u, t, bad, Integer(-1));
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }

  if (!(u * m * v == d)) throw std::logic_error("Smith form reconstruction failed");
  if (abs(determinant(u)) != 1 || abs(determinant(v)) != 1) throw std::logic_error("Smith transform not unimodular");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (i != j && d(i, j) != 0) throw std::logic_error("Smith form not diagonal");
  for (std::size_t i = 0; i + 1 < std::min(rows, cols); ++i) {
    if (d(i, i) == 0) {
      if (d(i + 1, i + 1) != 0) throw std::logic_error("Smith form zeros out of order");
    } else if (d(i + 1, i + 1) % d(i, i) != 0) {
      throw std::logic_error("Smith form divisibility chain broken");
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

// ---------------------------------------------------------------------------

namespace {

Rational cubic_at(const LatticeCheck& r, const Rational& x) { return ((x + r.c2) * x + r.c1) * x + r.c0; }

}  // namespace

LatticeCheck lattice_matrix_check(const IntegerMatrix& m) {
  if (m.rows() != 3 || m.cols() != 3) throw std::invalid_argument("lattice check needs a 3x3 matrix");
  LatticeCheck r;
  r.det = determinant(m);
  const Integer tr = m(0, 0) + m(1, 1) + m(2, 2);
  Integer s2 = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) s2 += m(i, i) * m(j, j) - m(i, j) * m(j, i);
  r.c2 = -tr;
  r.c1 = s2;
  r.c0 = -r.det;
  const Integer& b = r.c2;
  const Integer& c = r.c1;
  const Integer& d = r.c0;
  r.discriminant = 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;

  // Rational roots of a monic integer cubic are integer divisors of c0.
  const Integer bound = abs(d);
  if (d == 0) r.rational_root = true;
  for (Integer k = 1; k <= bound && !r.rational_root; ++k) {
    if (d % k != 0) continue;
    if (cubic_at(r, Rational(k)) == 0 || cubic_at(r, Rational(-k)) == 0) r.rational_root = true;
  }

  if (r.det != 1) r.failures.push_back("det = " + r.det.get_str() + ", expected 1");
  if (r.discriminant >= 0) r.failures.push_back("discriminant " + r.discriminant.get_str() + " is not negative");
  if (r.rational_root) r.failures.push_back("characteristic polynomial has a rational root");

  if (r.discriminant < 0) {
    // Exact sign-change bracket from the Cauchy bound, then bisection.
    Integer cb = 1 + std::max({abs(b), abs(c), abs(d)});
    Rational lo(-cb);
    Rational hi(cb);
    while (hi - lo > Rational(1, 1L << 40)) {
      Rational mid = (lo + hi) / 2;
      if (sgn(cubic_at(r, mid)) == 0) {
        lo = hi = mid;
        break;
      }
      if (sgn(cubic_at(r, mid)) < 0) lo = mid; else hi = mid;
    }
    r.c = Rational((lo + hi) / 2).get_d();
    // Monic cubic with a single real root exceeds 1 exactly when p(1) < 0.
    r.c_greater_than_one = cubic_at(r, Rational(1)) < 0;
    // p(x) = (x - c)(x^2 + q1 x + q0) with q0 = |alpha|^2.
    const double q1 = b.get_d() + r.c;
    const double q0 = c.get_d() + r.c * q1;
    r.alpha_norm2 = q0;
    r.alpha_norm2_times_c = q0 * r.c;
    if (!r.c_greater_than_one) r.failures.push_back("real eigenvalue is not greater than 1");
  }
  r.accepted = r.failures.empty();
  return r;
}

// ---------------------------------------------------------------------------

Word reduce(const Word& w) {
  Word out;
  for (const auto& l : w) {
    if (l.exponent == 0) continue;
    if (!out.empty() && out.back().generator == l.generator) {
      out.back().exponent += l.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

int GroupPresentation::index_of(const std::string& name) const {
  auto it = std::find(generators.begin(), generators.end(), name);
  return it == generators.end() ? -1 : static_cast<int>(it - generators.begin());
}

std::string GroupPresentation::str() const {
  std::ostringstream os;
  os << "generators";
  for (const auto& g : generators) os << ' ' << g;
  os << '\n';
  for (const auto& w : relators) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) os << ' ';
      os << generators.at(w[i].generator);
      if (w[i].exponent != 1) os << '^' << w[i].exponent;
    }
    os << '\n';
  }
  return os.str();
}

GroupPresentation GroupPresentation::parse(const std::string& text) {
  GroupPresentation p;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_generators = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!have_generators) {
      if (tok != "generators") throw PresentationError(where + "expected 'generators'");
      while (ls >> tok) {
        if (p.index_of(tok) >= 0) throw PresentationError(where + "duplicate generator '" + tok + "'");
        p.generators.push_back(tok);
      }
      have_generators = true;
      continue;
    }
    Word w;
    do {
      std::string name = tok;
      long exp = 1;
      if (auto caret = tok.find('^'); caret != std::string::npos) {
        name = tok.substr(0, caret);
        const std::string e = tok.substr(caret + 1);
        std::size_t used = 0;
        try {
          exp = std::stol(e, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (e.empty() || used != e.size()) throw PresentationError(where + "bad exponent in '" + tok + "'");
      }
      const int g = p.index_of(name);
      if (g < 0) throw PresentationError(where + "unknown generator '" + name + "'");
      w.push_back({g, exp});
    } while (ls >> tok);
    p.relators.push_back(std::move(w));
  }
  if (!have_generators) throw PresentationError("missing 'generators' line");
  return p;
}

IntegerMatrix rotation_matrix(int p) {
  // Rows are the images of the lattice basis under w -> zeta w.
  switch (p) {
    case 2:  // Z[i], basis (1, i)
      return IntegerMatrix::from_rows({{-1, 0}, {0, -1}});
    case 4:  // Z[i]: 1 -> i, i -> -1
      return IntegerMatrix::from_rows({{0, 1}, {-1, 0}});
    case 3:  // Z[w], w^2 = -1 - w: 1 -> w, w -> -1 - w
      return IntegerMatrix::from_rows({{0, 1}, {-1, -1}});
    case 6:  // zeta = 1 + w: 1 -> 1 + w, w -> -1
      return IntegerMatrix::from_rows({{1, 1}, {-1, 0}});
    default:
      throw std::invalid_argument("rotation order must be 2, 3, 4 or 6");
  }
}

GroupPresentation semidirect_presentation(const IntegerMatrix& action) {
  if (action.rows() != action.cols()) throw std::invalid_argument("action matrix must be square");
  const int k = static_cast<int>(action.rows());
  GroupPresentation p;
  for (int i = 0; i <= k; ++i) p.generators.push_back("g" + std::to_string(i));
  for (int j = 1; j <= k; ++j)
    for (int l = j + 1; l <= k; ++l) p.relators.push_back({{j, 1}, {l, 1}, {j, -1}, {l, -1}});
  for (int j = 1; j <= k; ++j) {
    // [g0, g_j] g_j prod_l g_l^{-a_jl}, i.e. g0 g_j g0^-1 = prod_l g_l^{a_jl}.
    Word w{{0, 1}, {j, 1}, {0, -1}, {j, -1}, {j, 1}};
    for (int l = 1; l <= k; ++l) w.push_back({l, -action(j - 1, l - 1).get_si()});
    p.relators.push_back(reduce(w));
  }
  return p;
}

GroupPresentation inoue_lattice_presentation(const IntegerMatrix& m, int p) {
  const IntegerMatrix rot = rotation_matrix(p);
  if (!lattice_matrix_check(m).accepted) throw std::invalid_argument("matrix fails the lattice check");
  IntegerMatrix a(5, 5);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = m(i, j);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(3 + i, 3 + j) = rot(i, j);
  return semidirect_presentation(a);
}

GroupPresentation kill_generator(const GroupPresentation& p, const std::string& name) {
  const int g = p.index_of(name);
  if (g < 0) throw PresentationError("unknown generator '" + name + "'");
  GroupPresentation out;
  for (const auto& n : p.generators)
    if (n != name) out.generators.push_back(n);
  for (const auto& w : p.relators) {
    Word nw;
    for (const auto& l : w)
      if (l.generator != g) nw.push_back({l.generator > g ? l.generator - 1 : l.generator, l.exponent});
    nw = reduce(nw);
    if (!nw.empty()) out.relators.push_back(std::move(nw));
  }
  return out;
}

IntegerMatrix relation_matrix(const GroupPresentation& p) {
  IntegerMatrix m(p.relators.size(), p.generators.size());
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (const auto& l : p.relators[r]) m(r, l.generator) += l.exponent;
  return m;
}

Abelianization abelianization(const GroupPresentation& p) {
  Abelianization a;
  const IntegerMatrix rel = relation_matrix(p);
  int nonzero = 0;
  if (rel.rows() > 0) {
    a.snf = smith_normal_form(rel);
    for (const auto& x : a.snf.diagonal()) {
      if (x == 0) continue;
      ++nonzero;
      if (x > 1) a.torsion.push_back(x);
    }
  }
  a.free_rank = static_cast<int>(p.generators.size()) - nonzero;
  return a;
}

int derived_subgroup_rank(const GroupPresentation& p) {
  const int k = static_cast<int>(p.generators.size()) - 1;
  if (k < 0 || p.generators[0] != "g0") throw PresentationError("expected g0 as the first generator");
  const IntegerMatrix rel = relation_matrix(p);
  for (std::size_t r = 0; r < rel.rows(); ++r)
    if (rel(r, 0) != 0) throw PresentationError("g0 has nonzero exponent sum in a relator");
  for (int j = 1; j <= k; ++j)
    for (int l = j + 1; l <= k; ++l) {
      const Word c{{j, 1}, {l, 1}, {j, -1}, {l, -1}};
      if (std::find(p.relators.begin(), p.relators.end(), c) == p.relators.end())
        throw PresentationError("normal subgroup generators do not commute");
    }
  return static_cast<int>(rank(rel));
}

}  // namespace gkcheck
