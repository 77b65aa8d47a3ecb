#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gkcheck/cohomology.hpp"
#include "gkcheck/generalized.hpp"
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

Vector ev(int n, int i) { return basis_vector<Scalar>(n, i - 1); }

GeneralizedVector random_gv(std::mt19937& rng, int n) { return {random_vector(rng, n), random_form(rng, n, 1)}; }

}  // namespace

TEST_CASE("pairing") {
  const int n = 6;
  CHECK(pairing(tangent(ev(n, 1)), cotangent(covector(n, 1))) == Scalar::rational(1, 2));
  CHECK(pairing(tangent(ev(n, 1)), tangent(ev(n, 2))).is_zero());
  CHECK(pairing(cotangent(covector(n, 3)), tangent(ev(n, 3))) == Scalar::rational(1, 2));

  // e_i +- e^i diagonalize the Gram matrix to diag(1,..,1,-1,..,-1): signature (6,6).
  Matrix<Scalar> basis(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    basis(i, i) = Scalar(1L);
    basis(n + i, i) = Scalar(1L);
    basis(i, n + i) = Scalar(1L);
    basis(n + i, n + i) = Scalar(-1L);
  }
  Matrix<Scalar> expected(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    expected(i, i) = Scalar(1L);
    expected(n + i, n + i) = Scalar(-1L);
  }
  CHECK(basis.transpose() * pairing_gram(n) * basis == expected);

  std::mt19937 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto u = random_gv(rng, n);
    const auto v = random_gv(rng, n);
    CHECK(pairing(u, v) == pairing(v, u));
    const auto cu = coordinates(u);
    const auto cv = coordinates(v);
    Scalar s;
    const auto gv = pairing_gram(n).apply(cv);
    for (int i = 0; i < 2 * n; ++i) s += cu[i] * gv[i];
    CHECK(s == pairing(u, v));
    CHECK(from_coordinates(cu) == u);
  }
}

TEST_CASE("from_complex and from_symplectic") {
  const auto jp = ComplexStructure::build(s_1b(), standard_coframe(6, {1, 1, 1}));
  const auto gj = from_complex(jp);
  CHECK(gj.block(0, 0) == -jp.endo());
  CHECK(gj.block(0, 1).is_zero());
  CHECK(gj.block(1, 0).is_zero());
  CHECK(gj.block(1, 1) == jp.endo().transpose());
  CHECK(squares_to_minus_one(gj.matrix()));
  CHECK(preserves_pairing(gj.matrix()));

  const auto ab = StructureEquations::abelian(6);
  const Form w = mono(6, {1, 2}) + mono(6, {3, 4}) + mono(6, {5, 6});
  const auto gw = from_symplectic(ab, w);
  CHECK(gw.block(0, 0).is_zero());
  CHECK(gw.block(1, 1).is_zero());
  CHECK(gw.block(1, 0) == flat_map(w));
  CHECK(gw.block(0, 1) == -inverse(flat_map(w)));
  // The flat map sends e_1 to iota_{e_1} w = e^2.
  CHECK(flat_map(w).apply(ev(6, 1)) == ev(6, 2));

  CHECK_THROWS_AS(from_symplectic(ab, mono(6, {1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(from_symplectic(s_1b(), w), NotClosed);
  CHECK_THROWS_AS(GeneralizedStructure(Matrix<Scalar>::identity(12)), std::invalid_argument);
}

TEST_CASE("courant_bracket") {
  const auto g = s_1b();
  const Form zero3(6, 3);
  const auto r = courant_bracket(g, zero3, tangent(ev(6, 1)), tangent(ev(6, 2)));
  CHECK(r.vec == g.bracket(0, 1));
  CHECK(r.vec == Vector{Scalar(-1L), 0L, 0L, 0L, 0L, 0L});
  CHECK(r.covec.is_zero());

  const Form h = mono(6, {1, 3, 4}, Scalar(-1L));
  const auto t = courant_bracket(g, h, tangent(ev(6, 3)), tangent(ev(6, 4)));
  CHECK(t.covec == -covector(6, 1));
  // Brute force: (iota_Y iota_X H)(Z) = H(X, Y, Z).
  for (int z = 1; z <= 6; ++z)
    CHECK(evaluate_form(t.covec, {ev(6, z)}) == evaluate_form(h, {ev(6, 3), ev(6, 4), ev(6, z)}));

  std::mt19937 rng(4);
  const auto u = random_gv(rng, 6);
  const auto self = courant_bracket(g, h, u, u);
  CHECK(self.vec == Vector(6));
  CHECK(self.covec.is_zero());

  CHECK_THROWS_AS(courant_bracket(g, mono(6, {3, 4, 5}), u, u), NotClosed);
}

TEST_CASE("property: Courant bracket is bilinear and antisymmetric") {
  std::mt19937 rng(12);
  const auto g = s_ab();
  const Form h = mono(6, {1, 3, 4}, -a());
  for (int t = 0; t < 200; ++t) {
    const auto u = random_gv(rng, 6);
    const auto v = random_gv(rng, 6);
    const auto w = random_gv(rng, 6);
    const auto uv = courant_bracket(g, h, u, v);
    const auto vu = courant_bracket(g, h, v, u);
    auto neg = coordinates(vu);
    for (auto& x : neg) x = -x;
    CHECK(coordinates(uv) == neg);
    const GeneralizedVector sum{[&] {
                                  Vector s = v.vec;
                                  for (int i = 0; i < 6; ++i) s[i] += w.vec[i];
                                  return s;
                                }(),
                                v.covec + w.covec};
    const auto lhs = coordinates(courant_bracket(g, h, u, sum));
    const auto a1 = coordinates(uv);
    const auto a2 = coordinates(courant_bracket(g, h, u, w));
    for (int i = 0; i < 12; ++i) CHECK(lhs[i] == a1[i] + a2[i]);
    // Pure vectors with H = 0 give the Lie bracket.
    const auto lie = courant_bracket(g, Form(6, 3), tangent(u.vec), tangent(v.vec));
    CHECK(lie.vec == g.bracket(u.vec, v.vec));
    CHECK(lie.covec.is_zero());
  }
}

TEST_CASE("gualtieri_pair") {
  for (const auto& g : {s_1b(), l6()}) {
    const auto gp = gualtieri_pair(pair_on(g, {1, 1, 1}), pair_on(g, {-1, 1, 1}));
    const auto& m1 = gp.j1.matrix();
    const auto& m2 = gp.j2.matrix();
    CHECK(m1 * m2 == m2 * m1);
    CHECK(squares_to_minus_one(m1));
    CHECK(squares_to_minus_one(m2));
    CHECK(preserves_pairing(m1));
    CHECK(preserves_pairing(m2));
    const auto sign = definiteness(gp.product_form);
    REQUIRE(sign.has_value());
    CHECK(*sign != 0);
    CHECK(definiteness_at(gp.product_form, {}) == *sign);
  }
  const auto sym = gualtieri_pair(pair_on(s_ab(), {1, 1, 1}), pair_on(s_ab(), {-1, 1, 1}));
  CHECK(definiteness_at(sym.product_form, {{"a", 1.0}, {"b", 1.5707963267948966}}) != 0);

  const auto ab = StructureEquations::abelian(6);
  const auto k = pair_on(ab, {1, 1, 1});
  const auto gk = gualtieri_pair(k, k);
  CHECK(gk.j1 == from_complex(k.j()));
  CHECK(gk.j2 == from_symplectic(ab, k.fundamental_form()));
}

TEST_CASE("definiteness") {
  CHECK(definiteness(Matrix<Scalar>::identity(3)) == std::optional<int>(1));
  CHECK(definiteness(-Matrix<Scalar>::identity(3)) == std::optional<int>(-1));
  CHECK(definiteness(pairing_gram(2)) == std::optional<int>(0));
  Matrix<Scalar> p = Matrix<Scalar>::identity(2);
  p(1, 1) = a();
  CHECK_FALSE(definiteness(p).has_value());
  CHECK(definiteness_at(p, {{"a", 2.0}}) == 1);
}

TEST_CASE("involutivity_check") {
  const auto g = s_1b();
  const auto plus = pair_on(g, {1, 1, 1});
  const auto minus = pair_on(g, {-1, 1, 1});
  const Form h = gk_check(plus, minus).h;
  CHECK(involutivity_check(g, from_complex(plus.j()), h).involutive);
  CHECK(involutivity_check(g, from_complex(minus.j()), h).involutive);

  const auto gp = gualtieri_pair(plus, minus);
  CHECK(involutivity_check(g, gp.j1, h).involutive);
  CHECK(involutivity_check(g, gp.j2, h).involutive);
  // J1 is complex on e3..e6 and symplectic on e1,e2; iota_Y iota_X of any
  // multiple of e1^e3^e4 stays in its eigenspace, so only J2 sees the sign of H.
  CHECK(involutivity_check(g, gp.j1, -h).involutive);
  const auto wrong = involutivity_check(g, gp.j2, -h);
  CHECK_FALSE(wrong.involutive);
  CHECK(wrong.failing_pair.has_value());

  // A closed 3-form of type (2,1)+(1,2) keeps the complex structure involutive.
  CHECK(involutivity_check(g, from_complex(plus.j()), mono(6, {2, 3, 4})).involutive);

  const auto ab = StructureEquations::abelian(6);
  const Form w = mono(6, {1, 2}) + mono(6, {3, 4}) + mono(6, {5, 6});
  const auto sw = involutivity_check(ab, from_symplectic(ab, w), Form(6, 3));
  CHECK(sw.involutive);
  // L = {X - i iota_X w}.
  const Matrix<Scalar> flat = flat_map(w);
  for (const auto& u : sw.eigenbasis) {
    const CVector x(u.begin(), u.begin() + 6);
    const CVector xi(u.begin() + 6, u.end());
    const CVector fx = complexify(flat).apply(x);
    for (int i = 0; i < 6; ++i) CHECK(xi[i] == -CScalar::i() * fx[i]);
  }

  // Re(w1^w2^w3) has a (3,0)+(0,3) part, which breaks involutivity.
  const auto jab = ComplexStructure::build(ab, standard_coframe(6, {1, 1, 1}));
  const CForm top = wedge(wedge(jab.coframe()[0], jab.coframe()[1]), jab.coframe()[2]);
  const Form re = *real_part_if_real(CScalar(Scalar::rational(1, 2)) * (top + conj(top)));
  CHECK_FALSE(involutivity_check(ab, from_complex(jab), re).involutive);
  CHECK(involutivity_check(ab, from_complex(jab), Form(6, 3)).involutive);

  const auto l = l6();
  const auto lp = pair_on(l, {1, 1, 1});
  const auto lm = pair_on(l, {-1, 1, 1});
  const Form hl = gk_check(lp, lm).h;
  const auto gl = gualtieri_pair(lp, lm);
  CHECK(involutivity_check(l, gl.j1, hl).involutive);
  CHECK(involutivity_check(l, gl.j2, hl).involutive);
}
