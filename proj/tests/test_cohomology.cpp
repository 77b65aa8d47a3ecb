#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gkcheck/cohomology.hpp"
#include "test_algebras.hpp"

#include <cmath>

using namespace gkcheck;
using namespace gkcheck::testing;

namespace {

// Numeric rank by Gaussian elimination with partial pivoting.
std::size_t numeric_rank(const Matrix<Scalar>& m, const NumericAssignment& at) {
  std::vector<std::vector<double>> a(m.rows(), std::vector<double>(m.cols()));
  double scale = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      a[i][j] = m(i, j).evaluate(at);
      scale = std::max(scale, std::abs(a[i][j]));
    }
  const double tol = 1e-9 * (1 + scale);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    for (std::size_t i = r + 1; i < m.rows(); ++i)
      if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
    if (std::abs(a[p][c]) <= tol) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const double f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

std::size_t binomial(int n, int k) { return basis_tuples(n, k).size(); }

Form mono(int dim, IndexTuple one_based, Scalar c = Scalar(1L)) {
  Form f(dim, static_cast<int>(one_based.size()));
  for (auto& i : one_based) --i;
  f.add_term(one_based, c);
  return f;
}

}  // namespace

TEST_CASE("build_complex") {
  const CEComplex ab(StructureEquations::abelian(5));
  for (int k = 0; k < 5; ++k) CHECK(ab.d(k).is_zero());

  const CEComplex s(s_ab());
  CHECK(s.rank_d(1) == 5);
  CHECK(s.d(0).is_zero());
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> val(0.3, 3.0);
  for (int t = 0; t < 5; ++t) {
    const NumericAssignment at{{"a", val(rng)}, {"b", val(rng)}};
    CHECK(numeric_rank(s.d(1), at) == 5);
  }
  const CEComplex l(l6());
  CHECK(l.rank_d(1) == 5);
  CHECK(numeric_rank(l.d(1), {}) == 5);

  auto d = s_ab().differentials();
  d[4] = e(6, 1, 6, b());
  CHECK_THROWS_AS(CEComplex(StructureEquations(6, {"a", "b"}, d)), JacobiFailure);
}

TEST_CASE("betti_numbers") {
  const auto ab = betti_numbers(CEComplex(StructureEquations::abelian(6)));
  for (int k = 0; k <= 6; ++k) CHECK(ab[k] == static_cast<int>(binomial(6, k)));

  const CEComplex s(s_ab());
  const auto b = betti_numbers(s);
  REQUIRE(b.size() == 7);
  CHECK(b[0] == 1);
  CHECK(b[1] == 1);
  int euler = 0;
  for (int k = 0; k <= 6; ++k) {
    euler += (k % 2 == 0 ? 1 : -1) * b[k];
    CHECK(b[k] == b[6 - k]);
  }
  CHECK(euler == 0);

  // Oracle: numeric ranks at random parameter values.
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> val(0.3, 3.0);
  const NumericAssignment at{{"a", val(rng)}, {"b", val(rng)}};
  for (int k = 0; k <= 6; ++k) {
    const std::size_t rk = k < 6 ? numeric_rank(s.d(k), at) : 0;
    const std::size_t rk1 = k > 0 ? numeric_rank(s.d(k - 1), at) : 0;
    CHECK(b[k] == static_cast<int>(binomial(6, k) - rk - rk1));
  }

  const auto bl = betti_numbers(CEComplex(l6()));
  int el = 0;
  for (int k = 0; k <= 6; ++k) el += (k % 2 == 0 ? 1 : -1) * bl[k];
  CHECK(el == 0);
  CHECK(bl[1] == 1);
}

TEST_CASE("is_exact") {
  const CEComplex s(s_ab());
  const Form h = mono(6, {1, 3, 4});
  const auto r = is_exact(s, h);
  CHECK_FALSE(r.exact);
  REQUIRE(r.certificate.has_value());
  CHECK_FALSE(apply_functional(*r.certificate, h).is_zero());
  // The functional kills every exact 3-form d(e^i^e^j).
  for (const auto& t : basis_tuples(6, 2)) {
    Form m(6, 2);
    m.add_term(t, Scalar(1L));
    CHECK(apply_functional(*r.certificate, exterior_derivative(s_ab(), m)).is_zero());
  }

  const auto ex = is_exact(s, mono(6, {1, 2}, a()));
  CHECK(ex.exact);
  REQUIRE(ex.primitive.has_value());
  CHECK(*ex.primitive == covector(6, 1));

  const CEComplex ab(StructureEquations::abelian(4));
  CHECK_FALSE(is_exact(ab, mono(4, {1, 2})).exact);
  CHECK(is_exact(ab, Form(4, 2)).exact);
  CHECK_FALSE(is_exact(ab, Form::constant(4, Scalar(1L))).exact);

  CHECK_THROWS_AS(is_exact(s, covector(6, 1)), NotClosed);
}

TEST_CASE("exactness is stable under rational specialization") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> num(1, 9);
  for (int t = 0; t < 5; ++t) {
    const Rational av(num(rng), num(rng));
    const Rational bv(-num(rng), num(rng));
    const auto g = s_ab().substitute({{"a", av}, {"b", bv}});
    const CEComplex c(g);
    CHECK_FALSE(is_exact(c, mono(6, {1, 3, 4})).exact);
    CHECK(is_exact(c, mono(6, {1, 2}, Scalar(av))).exact);
  }
}

TEST_CASE("property: Euler characteristic and Poincare duality over random specializations") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> num(1, 12);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int t = 0; t < 200; ++t) {
    const Rational av((sign(rng) ? 1 : -1) * num(rng), num(rng));
    const Rational bv((sign(rng) ? 1 : -1) * num(rng), num(rng));
    const auto b = betti_numbers(CEComplex(s_ab().substitute({{"a", av}, {"b", bv}})));
    int euler = 0;
    for (int k = 0; k <= 6; ++k) euler += (k % 2 == 0 ? 1 : -1) * b[k];
    CHECK(euler == 0);
    for (int k = 0; k <= 6; ++k) CHECK(b[k] == b[6 - k]);
    CHECK(b[1] == 1);
  }
}

TEST_CASE("property: sparse rank agrees with Bareiss") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> dim(1, 7), coin(0, 3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = dim(rng), c = dim(rng);
    Matrix<Scalar> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (coin(rng) == 0) m(i, j) = random_scalar(rng, t % 2 == 0);
    // Dependent rows make low rank likely.
    if (r > 2)
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * a() - m(1, j);
    // Oracle: clear denominators row by row, then Bareiss on polynomials.
    Matrix<Scalar> poly = m;
    for (std::size_t i = 0; i < r; ++i) {
      Scalar den(1L);
      for (std::size_t j = 0; j < c; ++j) den *= Scalar(m(i, j).denominator());
      for (std::size_t j = 0; j < c; ++j) poly(i, j) *= den;
    }
    CAPTURE(t);
    CHECK(sparse_rank(m) == rank(poly));
  }
  // The CE differentials of the largest family entry used in the catalog.
  std::vector<Form> d(8, Form(8, 2));
  d[0] = e(8, 1, 2, a());
  d[2] = e(8, 2, 3, Scalar::rational(1, 2) * a());
  d[3] = e(8, 2, 4, Scalar::rational(1, 2) * a());
  d[4] = e(8, 2, 6, b());
  d[5] = e(8, 2, 5, -b());
  d[6] = e(8, 2, 8, b());
  d[7] = e(8, 2, 7, -b());
  const CEComplex ce(StructureEquations(8, {"a", "b"}, d));
  // Bareiss over Q at two points where no coefficient vanishes.
  for (const ExactAssignment& at : {ExactAssignment{{"a", 1}, {"b", 2}}, ExactAssignment{{"a", 3}, {"b", Rational(-1, 2)}}})
    for (int k = 0; k < 8; ++k)
      CHECK(ce.rank_d(k) == rank(ce.d(k).map([&](const Scalar& x) { return x.substitute(at); })));
}
