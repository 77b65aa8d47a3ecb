#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gkcheck/complexgeom.hpp"
#include "test_algebras.hpp"

using namespace gkcheck;
using namespace gkcheck::testing;

namespace {

Form mono(int dim, IndexTuple one_based, Scalar c = Scalar(1L)) {
  Form f(dim, static_cast<int>(one_based.size()));
  for (auto& i : one_based) --i;
  f.add_term(one_based, c);
  return f;
}

HermitianPair pair_on(const StructureEquations& g, const std::vector<int>& signs) {
  return {ComplexStructure::build(g, standard_coframe(g.dim(), signs)), HermitianMetric::identity(g.dim())};
}

// Value of a complex 2-form on two complex vectors, expanded by hand from the
// coefficient definition (e^j^e^k)(X,Y) = X^j Y^k - X^k Y^j.
CScalar eval2(const CForm& f, const CVector& x, const CVector& y) {
  CScalar s;
  for (const auto& [idx, c] : f.terms()) s += c * (x[idx[0]] * y[idx[1]] - x[idx[1]] * y[idx[0]]);
  return s;
}

}  // namespace

TEST_CASE("build_complex_structure") {
  const auto g = s_ab();
  const auto jp = ComplexStructure::build(g, standard_coframe(6, {1, 1, 1}));
  const auto jm = ComplexStructure::build(g, standard_coframe(6, {-1, 1, 1}));
  const auto id = Matrix<Scalar>::identity(6);
  CHECK(jp.endo() * jp.endo() == -id);
  CHECK(jm.endo() * jm.endo() == -id);
  CHECK(jp.endo() * jm.endo() == jm.endo() * jp.endo());
  CHECK_FALSE(jp.endo() == jm.endo());
  CHECK_FALSE(jp.endo() == -jm.endo());

  // omega o J = i omega on every (1,0)-form.
  for (const auto& w : jp.coframe()) {
    for (int k = 0; k < 6; ++k) {
      const Vector jk = jp.apply(basis_vector<Scalar>(6, k));
      CScalar lhs;
      for (const auto& [idx, c] : w.terms()) lhs += c * CScalar(jk[idx[0]]);
      CHECK(lhs == CScalar::i() * w.coefficient({k}));
    }
  }
  // e^1 + i e^2 of type (1,0) forces J e_1 = e_2.
  CHECK(jp.apply(basis_vector<Scalar>(6, 0)) == basis_vector<Scalar>(6, 1));

  const auto jl = ComplexStructure::build(l6(), standard_coframe(6, {1, 1, 1}));
  CHECK(jl.endo() * jl.endo() == -id);

  std::vector<CForm> bad{ccovector(4, 1), ccovector(4, 2)};
  CHECK_THROWS_AS(ComplexStructure::build(StructureEquations::abelian(4), bad), DegenerateCoframe);
  CHECK_THROWS_AS(ComplexStructure::build(StructureEquations::abelian(4), {ccovector(4, 1)}), DegenerateCoframe);
}

TEST_CASE("integrability certificates") {
  const auto g = s_ab();
  const auto jp = ComplexStructure::build(g, standard_coframe(6, {1, 1, 1}));
  const auto r = is_integrable(jp);
  CHECK(r.integrable);
  CHECK(r.nijenhuis_vanishes);
  REQUIRE(r.certificate.size() == 3);
  CHECK(r.certificate[0] == "dw1 = 1/2*a*i w1^wb1");
  CHECK(r.certificate[1] == "dw2 = -1/4*a*i w1^w2 -1/4*a*i w2^wb1");
  CHECK(r.certificate[2] == "dw3 = -1/2*b w1^w3 -1/2*b w3^wb1");

  const auto r1 = is_integrable(ComplexStructure::build(s_1b(), standard_coframe(6, {1, 1, 1})));
  CHECK(r1.certificate[0] == "dw1 = 1/2*i w1^wb1");
  const auto rm = is_integrable(ComplexStructure::build(s_1b(), standard_coframe(6, {-1, 1, 1})));
  CHECK(rm.integrable);
  CHECK(rm.certificate[0] == "dw1 = -1/2*i w1^wb1");

  CHECK(is_integrable(ComplexStructure::build(l6(), standard_coframe(6, {1, 1, 1}))).integrable);
  CHECK(is_integrable(ComplexStructure::build(l6(), standard_coframe(6, {-1, 1, 1}))).integrable);
}

TEST_CASE("integrability against (0,1)-vector evaluation") {
  // (0,1)-vectors for the coframe (e1 + i e2, e3 + i e4) are e1 + i e2 and e3 + i e4.
  const CVector z1{CScalar(1L), CScalar::i(), CScalar(), CScalar()};
  const CVector z2{CScalar(), CScalar(), CScalar(1L), CScalar::i()};

  // de4 = e1^e3: d(e3 + i e4)(z1, z2) = i != 0, so J is not integrable.
  std::vector<Form> d(4, Form(4, 2));
  d[3] = e(4, 1, 3);
  const StructureEquations bad(4, {}, d);
  const auto jb = ComplexStructure::build(bad, standard_coframe(4, {1, 1}));
  CHECK(eval2(exterior_derivative(bad, jb.coframe()[1]), z1, z2) == CScalar::i());
  const auto rb = is_integrable(jb);
  CHECK_FALSE(rb.integrable);
  CHECK_FALSE(rb.nijenhuis_vanishes);
  CHECK_FALSE(nijenhuis(jb, basis_vector<Scalar>(4, 0), basis_vector<Scalar>(4, 2)) == Vector(4));

  // de3 = e1^e2 with the same coframe: the only (0,1) pairing gives 0, so it is integrable.
  std::vector<Form> d2(4, Form(4, 2));
  d2[2] = e(4, 1, 2);
  const StructureEquations h(4, {}, d2);
  const auto jh = ComplexStructure::build(h, standard_coframe(4, {1, 1}));
  CHECK(eval2(exterior_derivative(h, jh.coframe()[1]), z1, z2).is_zero());
  CHECK(is_integrable(jh).integrable);

  // Pairing e1 with e3 instead breaks integrability on that algebra.
  std::vector<CForm> w{ccovector(4, 1) + ccovector(4, 3, CScalar::i()), ccovector(4, 2) + ccovector(4, 4, CScalar::i())};
  CHECK_FALSE(is_integrable(ComplexStructure::build(h, w)).integrable);
}

TEST_CASE("bidegree_decompose") {
  const auto pp = pair_on(s_1b(), {1, 1, 1});
  const auto& j = pp.j();
  const auto f_parts = bidegree_decompose(j, complexify(pp.fundamental_form()));
  REQUIRE(f_parts.size() == 1);
  CHECK(f_parts.begin()->first == std::pair{1, 1});

  const Form df = exterior_derivative(s_1b(), pp.fundamental_form());
  CHECK(df == mono(6, {2, 3, 4}));
  const auto parts = bidegree_decompose(j, complexify(df));
  CHECK(parts.size() == 2);
  CHECK(parts.count({2, 1}) == 1);
  CHECK(parts.count({1, 2}) == 1);

  const CForm w = j.coframe()[0];
  const auto ww = bidegree_decompose(j, wedge(w, conj(w)));
  REQUIRE(ww.size() == 1);
  CHECK(ww.begin()->first == std::pair{1, 1});
}

TEST_CASE("property: bidegree components sum back and are idempotent") {
  std::mt19937 rng(5);
  const auto j = ComplexStructure::build(s_ab(), standard_coframe(6, {1, 1, 1}));
  std::uniform_int_distribution<int> deg(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = deg(rng);
    const CForm a = complexify(random_form(rng, 6, k)) +
                    CScalar::i() * complexify(random_form(rng, 6, k));
    const auto parts = bidegree_decompose(j, a);
    CForm sum(6, k);
    for (const auto& [pq, c] : parts) {
      sum += c;
      const auto again = bidegree_decompose(j, c);
      REQUIRE(again.size() == 1);
      CHECK(again.begin()->first == pq);
      CHECK(again.begin()->second == c);
    }
    CHECK(sum == a);
  }
}

TEST_CASE("Hermitian pairs") {
  const auto pp = pair_on(s_ab(), {1, 1, 1});
  // F(e_1, e_2) = g(J e_1, e_2) = g(e_2, e_2) = 1.
  CHECK(pp.fundamental_form() == mono(6, {1, 2}) + mono(6, {3, 4}) + mono(6, {5, 6}));
  const auto fm = pp.fundamental_matrix();
  CHECK(fm == -fm.transpose());
  CHECK(pp.j().act(pp.fundamental_form()) == pp.fundamental_form());
  CHECK(HermitianMetric::identity(6).positive_definite() == std::optional<bool>(true));

  Matrix<Scalar> gram = Matrix<Scalar>::identity(6);
  gram(0, 0) = Scalar(2L);
  const auto j = ComplexStructure::build(s_ab(), standard_coframe(6, {1, 1, 1}));
  CHECK_THROWS_AS(HermitianPair(j, HermitianMetric(gram)), std::invalid_argument);

  Matrix<Scalar> pg = Matrix<Scalar>::identity(2);
  pg(0, 0) = a();
  const HermitianMetric param(pg);
  CHECK_FALSE(param.positive_definite().has_value());
  CHECK(param.positive_definite_at({{"a", 1.0}}));
  CHECK_FALSE(param.positive_definite_at({{"a", -1.0}}));
}

TEST_CASE("d_c and the J action") {
  const auto plus = pair_on(s_1b(), {1, 1, 1});
  const auto minus = pair_on(s_1b(), {-1, 1, 1});
  CHECK(d_c(plus) == mono(6, {1, 3, 4}, Scalar(-1L)));
  CHECK(d_c(minus) == mono(6, {1, 3, 4}));
  CHECK(d_c_via_action(plus) == d_c(plus));
  CHECK(d_c_via_action(minus) == d_c(minus));

  const auto sym = pair_on(s_ab(), {1, 1, 1});
  CHECK(d_c(sym) == mono(6, {1, 3, 4}, -a()));

  const auto kahler = pair_on(StructureEquations::abelian(6), {1, 1, 1});
  CHECK(d_c(kahler).is_zero());

  std::vector<Form> d(4, Form(4, 2));
  d[3] = e(4, 1, 3);
  const auto nonint = pair_on(StructureEquations(4, {}, d), {1, 1});
  CHECK_THROWS_AS(d_c(nonint), NotIntegrable);
}

TEST_CASE("property: J.alpha matches the bidegree weights") {
  // On a (p,q)-form, (J^{-1})^* multiplies by (-i)^p i^q.
  std::mt19937 rng(17);
  const auto j = ComplexStructure::build(s_ab(), standard_coframe(6, {1, -1, 1}));
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + trial % 4;
    const Form a = random_form(rng, 6, k);
    CForm expected(6, k);
    for (const auto& [pq, c] : bidegree_decompose(j, complexify(a))) {
      CScalar w(1L);
      for (int s = 0; s < pq.first; ++s) w *= -CScalar::i();
      for (int s = 0; s < pq.second; ++s) w *= CScalar::i();
      expected += w * c;
    }
    CHECK(complexify(j.act(a)) == expected);
  }
}

TEST_CASE("skt_check") {
  CHECK(skt_check(pair_on(s_1b(), {1, 1, 1})));
  CHECK(skt_check(pair_on(l6(), {1, 1, 1})));
  CHECK(skt_check(pair_on(StructureEquations::abelian(4), {1, 1})));
}

TEST_CASE("gk_check") {
  const auto r = gk_check(pair_on(s_1b(), {1, 1, 1}), pair_on(s_1b(), {-1, 1, 1}));
  CHECK(r.holds());
  CHECK_FALSE(r.trivial);
  CHECK(r.h == mono(6, {1, 3, 4}, Scalar(-1L)));
  CHECK(format_form(r.h, basis_names("e", 6)) == "-1 e1^e3^e4");

  const auto rs = gk_check(pair_on(s_ab(), {1, 1, 1}), pair_on(s_ab(), {-1, 1, 1}));
  CHECK(rs.holds());
  CHECK(rs.h == mono(6, {1, 3, 4}, -a()));

  const auto rl = gk_check(pair_on(l6(), {1, 1, 1}), pair_on(l6(), {-1, 1, 1}));
  CHECK(rl.holds());
  CHECK(format_form(rl.h, basis_names("f", 6)) == "-1 f1^f3^f4 -1 f1^f5^f6");

  const auto ab = StructureEquations::abelian(4);
  const auto rk = gk_check(pair_on(ab, {1, 1}), pair_on(ab, {1, 1}));
  CHECK(rk.holds());
  CHECK(rk.trivial);
  CHECK(rk.h.is_zero());

  Matrix<Scalar> gram = Matrix<Scalar>::identity(4);
  gram(0, 0) = Scalar(2L);
  gram(1, 1) = Scalar(2L);
  const HermitianPair other(ComplexStructure::build(ab, standard_coframe(4, {1, 1})), HermitianMetric(gram));
  CHECK_THROWS_AS(gk_check(pair_on(ab, {1, 1}), other), MetricMismatch);
}

TEST_CASE("lee_form") {
  CHECK_FALSE(lee_form(pair_on(s_1b(), {1, 1, 1})).has_value());
  CHECK_FALSE(lee_form(pair_on(s_ab(), {1, 1, 1})).has_value());

  const auto pl = pair_on(l6(), {1, 1, 1});
  const auto th = lee_form(pl);
  REQUIRE(th.has_value());
  CHECK(th->theta == covector(6, 2));
  CHECK(th->closed);
  CHECK(exterior_derivative(l6(), pl.fundamental_form()) == wedge(covector(6, 2), pl.fundamental_form()));

  const auto tk = lee_form(pair_on(StructureEquations::abelian(6), {1, 1, 1}));
  REQUIRE(tk.has_value());
  CHECK(tk->theta.is_zero());
}
