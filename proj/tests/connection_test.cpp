#include "doctest.h"
#include "fixtures.hpp"
#include "gen_geom.hpp"
#include "symcartan/connection/derivations.hpp"
#include "symcartan/connection/identities.hpp"
#include "symcartan/errors.hpp"

using namespace symcartan;
using fixtures::one_form;
using fixtures::vf;

namespace {

ScalarField e(const ChartPtr& c, const char* s) { return parse_expr(c, s); }

SymField dx(const ChartPtr& c, int i) { return SymField::dx(c, i); }

std::vector<SymField> test_forms(const ChartPtr& c) {
  std::vector<SymField> out;
  int n = c->dim();
  for (int i = 0; i < n; ++i) {
    out.push_back(dx(c, i));
    for (int j = 0; j < n; ++j) {
      out.push_back(dx(c, i).scaled(ScalarField::coordinate(c, j)));
      if (j >= i) out.push_back(dx(c, i) * dx(c, j));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("torsion examples") {
  auto c = fixtures::plane();
  CHECK(torsion(Connection(c)).is_zero());
  Tensor3 g(c);
  g(0, 0, 1) = ScalarField(c, 1);
  Connection nabla(g);
  Tensor3 t = torsion(nabla);
  // T(d1, d2) = d1
  CHECK(t(0, 0, 1) == ScalarField(c, 1));
  CHECK(t(0, 1, 0) == ScalarField(c, -1));
  CHECK(t(1, 0, 1).is_zero());
  CHECK(!nabla.is_torsion_free());
  gen::Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) CHECK(torsion(gen::connection(c, rng, true)).is_zero());
}

TEST_CASE("torsion-free part") {
  auto c = fixtures::plane();
  gen::Rng rng(22);
  Connection sym = gen::connection(c, rng, true);
  CHECK(torsion_free_part(sym) == sym);
  Tensor3 g(c);
  g(0, 0, 1) = ScalarField(c, 1);
  Connection tf = torsion_free_part(Connection(g));
  CHECK(tf.gamma(0, 0, 1) == ScalarField(c, Rational(1, 2)));
  CHECK(tf.gamma(0, 1, 0) == ScalarField(c, Rational(1, 2)));
  CHECK(torsion_free_part(tf) == tf);
  Connection t = gen::connection(c, rng, false, 2, 5);
  Connection t0 = torsion_free_part(t);
  for (int trial = 0; trial < 20; ++trial) {
    SymField a = gen::sym_field(c, rng, 1);
    CHECK(sym_derivative(t, a) == sym_derivative(t0, a));
  }
}

TEST_CASE("sym_derivative examples") {
  auto c = fixtures::plane();
  Connection euc(c);
  CHECK(sym_derivative(euc, one_form(c, {"0", "x"})) == dx(c, 0) * dx(c, 1));
  CHECK(sym_derivative(euc, one_form(c, {"-y", "x"})).is_zero());
  // Degree 0 gives the differential.
  ScalarField f = e(c, "x^2*y + 1/(1+y^2)");
  CHECK(sym_derivative(euc, SymField::scalar(f)) == one_form(c, {"2*x*y", "x^2 - 2*y/(1+y^2)^2"}));

  auto s1 = make_chart({{"t", CoordKind::Angle}});
  // alpha_1 = 1/(2 + cos t) solves d alpha_1 = f alpha_1 for f = sin t / (2 + cos t).
  Tensor3 g(s1);
  g(0, 0, 0) = e(s1, "sin(t)/(2+cos(t))");
  Connection nf(g);
  SymField alpha = SymField::dx(s1, 0).scaled(e(s1, "1/(2+cos(t))"));
  CHECK(sym_derivative(nf, alpha).is_zero());
  SymField beta = SymField::dx(s1, 0).scaled(e(s1, "cos(t)"));
  // nabla^s (a dt) = 2 (a' - f a) dt (x) dt, component form.
  ScalarField expect = (e(s1, "-sin(t)") - g(0, 0, 0) * e(s1, "cos(t)")).scaled(Rational(2));
  CHECK(sym_derivative(nf, beta).component({0, 0}) == expect);
}

TEST_CASE("sym_derivative spray and component formulas agree") {
  gen::Rng rng(23);
  auto c2 = fixtures::plane();
  auto c3 = affine_chart({"x", "y", "z"});
  auto cyl = make_chart({{"t", CoordKind::Angle}, {"x", CoordKind::Affine}});
  for (const auto& c : {c2, c3, cyl}) {
    for (int trial = 0; trial < 15; ++trial) {
      Connection nabla = gen::connection(c, rng, trial % 2 == 0, 2, 4);
      int r = gen::uniform(rng, 0, 3);
      SymField phi = gen::sym_field(c, rng, r);
      CHECK(sym_derivative(nabla, phi) == sym_derivative_components(nabla, phi));
    }
  }
  // Rational coefficients.
  Connection rat = fixtures::rational_example(c2);
  for (int trial = 0; trial < 5; ++trial) {
    SymField phi = gen::sym_field(c2, rng, gen::uniform(rng, 1, 2));
    CHECK(sym_derivative(rat, phi) == sym_derivative_components(rat, phi));
  }
}

TEST_CASE("sym_derivative is a degree-one derivation") {
  auto c = fixtures::plane();
  gen::Rng rng(24);
  for (int trial = 0; trial < 15; ++trial) {
    Connection nabla = gen::connection(c, rng, false, 1, 4);
    SymField a = gen::sym_field(c, rng, gen::uniform(rng, 0, 2));
    SymField b = gen::sym_field(c, rng, gen::uniform(rng, 0, 2));
    CHECK(sym_derivative(nabla, a * b) == sym_derivative(nabla, a) * b + a * sym_derivative(nabla, b));
  }
}

TEST_CASE("sym_lie examples") {
  auto c = fixtures::plane();
  Connection euc(c);
  gen::Rng rng(25);
  VecSymField ddx = VecSymField::coordinate_vector(c, 0);
  for (int trial = 0; trial < 10; ++trial) {
    SymField phi = gen::sym_field(c, rng, gen::uniform(rng, 0, 3));
    CHECK(sym_lie(euc, ddx, phi) == phi.partial_x(0));
  }
  SymField g = dx(c, 0) * dx(c, 0) + dx(c, 1) * dx(c, 1);
  VecSymField rot = vf(c, {"y", "-x"});
  CHECK(sym_lie(euc, rot, g).is_zero());
  CHECK(lie_derivative(rot, g).is_zero());
  ScalarField f = e(c, "x*y^2");
  CHECK(sym_lie(euc, rot, SymField::scalar(f)).as_scalar() == apply(rot, f));
}

TEST_CASE("torsion-free covariant derivative averages the two Lie derivatives") {
  auto c = fixtures::plane();
  gen::Rng rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    Connection nabla = gen::connection(c, rng, false, 1, 4);
    Connection n0 = torsion_free_part(nabla);
    VecSymField x = gen::vector_field(c, rng);
    SymField phi = gen::sym_field(c, rng, trial < 10 ? 1 : 2);
    SymField lhs = covariant_derivative(n0, x, phi).scaled(Rational(2));
    SymField rhs = sym_lie(nabla, x, phi) + lie_derivative(x, phi);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("sym_bracket examples") {
  auto c = fixtures::plane();
  Connection euc(c);
  CHECK(sym_bracket(euc, vf(c, {"0", "x"}), vf(c, {"1", "0"})) == vf(c, {"0", "1"}));
  gen::Rng rng(27);
  for (int trial = 0; trial < 15; ++trial) {
    Connection nabla = gen::connection(c, rng, trial % 2 == 0, 1, 4);
    VecSymField x = gen::vector_field(c, rng), y = gen::vector_field(c, rng);
    CHECK(sym_bracket(nabla, x, x) == covariant_derivative(nabla, x, x).scaled(Rational(2)));
    CHECK(sym_bracket(nabla, x, y) == sym_bracket(nabla, y, x));
    // Symmetric Lie derivative of a vector field: 2 nabla0_X Y - [X, Y].
    Connection n0 = torsion_free_part(nabla);
    VecSymField ls = covariant_derivative(n0, x, y).scaled(Rational(2)) - lie_bracket(x, y);
    CHECK(ls == sym_bracket(nabla, x, y));
    // iota_{[X,Y]_s} = [L^s_X, iota_Y] on a 2-form.
    SymField phi = gen::sym_field(c, rng, 2);
    CHECK(contract(sym_bracket(nabla, x, y), phi) ==
          sym_lie(nabla, x, contract(y, phi)) - contract(y, sym_lie(nabla, x, phi)));
  }
}

TEST_CASE("curvature examples") {
  auto c = fixtures::plane();
  CHECK(riemann(Connection(c)).is_zero());

  auto line = affine_chart({"x"});
  VecSymField x2 = VecSymField::vector_field(line, {e(line, "x^2")});
  VecSymField rs = sym_curvature(Connection(line), x2);
  CHECK(rs.comp(0).component({0, 0}) == ScalarField(line, 4));

  Connection triv = fixtures::trivial_example(c);
  CurvatureField r = riemann(triv);
  CHECK(!r.is_zero());
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          CHECK(r.op(l, i, j, k) == -r.op(l, j, i, k));
          CHECK((r.op(l, i, j, k) + r.op(l, j, k, i) + r.op(l, k, i, j)).is_zero());
          CHECK(r.appendix(l, k, i, j) == r.op(l, i, j, k));
        }
}

TEST_CASE("curvature invariants on random connections") {
  gen::Rng rng(28);
  auto c = affine_chart({"x", "y", "z"});
  for (int trial = 0; trial < 8; ++trial) {
    Connection nabla = gen::connection(c, rng, true, 2, 5);
    CurvatureField r = riemann(nabla);
    int n = 3;
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            CHECK(r.op(l, i, j, k) == -r.op(l, j, i, k));
            CHECK((r.op(l, i, j, k) + r.op(l, j, k, i) + r.op(l, k, i, j)).is_zero());
          }
    // (nabla^2 X)(Y, Z) = (R(Y, Z) X + (R^s X)(Y, Z)) / 2
    VecSymField x = gen::vector_field(c, rng);
    Tensor3 s = second_cov(nabla, x);
    VecSymField rs = sym_curvature(nabla, x);
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          ScalarField rx(c);
          for (int k = 0; k < n; ++k) rx += r.op(l, i, j, k) * x.scalar(k);
          CHECK(s(l, i, j) == (rx + rs.comp(l).component({i, j})).scaled(Rational(1, 2)));
        }
  }
}

TEST_CASE("a_sym_derivative examples") {
  auto c = fixtures::plane();
  gen::Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    Connection nabla = gen::connection(c, rng, trial % 2 == 0, 1, 4);
    SymField phi = gen::sym_field(c, rng, gen::uniform(rng, 0, 2));
    CHECK(a_sym_derivative(nabla, VecSymField::identity(c), phi) == sym_derivative(nabla, phi));
    CHECK(a_sym_derivative(nabla, VecSymField(c, 1), phi).is_zero());
    VecSymField a = gen::vec_sym_field(c, rng, 1);
    ScalarField f = gen::field(c, rng);
    SymField df = sym_derivative(nabla, SymField::scalar(f));
    SymField lhs = a_sym_derivative(nabla, a, SymField::scalar(f));
    for (int j = 0; j < 2; ++j) {
      ScalarField v(c);
      for (int m = 0; m < 2; ++m) v += f.partial(m) * a.endo(m, j);
      CHECK(lhs.component({j}) == v);
    }
    CHECK(lhs == sym_contract(a, df));
  }
}

TEST_CASE("general derivation") {
  auto c = fixtures::plane();
  gen::Rng rng(30);
  Connection nabla = gen::connection(c, rng, true);
  auto geo = general_derivation(VecSymField::identity(c), VecSymField(c, 2), nabla);
  auto zero = general_derivation(VecSymField(c, 1), VecSymField(c, 2), nabla);
  for (int trial = 0; trial < 10; ++trial) {
    ScalarField f = gen::field(c, rng);
    CHECK(geo(SymField::scalar(f)) == sym_derivative(Connection(c), SymField::scalar(f)));
    SymField phi = gen::sym_field(c, rng, gen::uniform(rng, 0, 2));
    CHECK(geo(phi) == sym_derivative(nabla, phi));
    CHECK(zero(phi).is_zero());
  }
  CHECK_THROWS_AS(general_derivation(VecSymField(c, 2), VecSymField(c, 2), nabla), ComputationError);
}

TEST_CASE("variation of the connection") {
  auto c = fixtures::plane();
  gen::Rng rng(31);
  Connection euc(c);
  CHECK(variation_sigma(euc, euc).is_zero());
  std::vector<VecSymField> vecs;
  std::vector<SymField> forms;
  for (int k = 0; k < 3; ++k) vecs.push_back(gen::vector_field(c, rng));
  for (int k = 0; k < 10; ++k) forms.push_back(gen::sym_field(c, rng, 1));
  IdentityReport same = variation_check(euc, euc, forms, vecs);
  CHECK(same.passed());
  Connection two = fixtures::constant_example(c, "1", "2");
  IdentityReport rep = variation_check(euc, two, forms, vecs);
  for (const auto& ch : rep.checks) CHECK_MESSAGE(ch.passed, ch.name << " " << ch.detail);
  for (int trial = 0; trial < 5; ++trial) {
    Connection a = gen::connection(c, rng, false, 1, 4), b = gen::connection(c, rng, false, 1, 4);
    CHECK(variation_check(a, b, {gen::sym_field(c, rng, 2)}, {vecs[0], vecs[1]}).passed());
  }
}

TEST_CASE("commutator identities") {
  auto c = fixtures::plane();
  Connection euc(c);
  std::vector<SymField> forms = {dx(c, 0), dx(c, 1), dx(c, 0) * dx(c, 1)};
  VecSymField ddx = VecSymField::coordinate_vector(c, 0);
  for (const auto& phi : forms)
    CHECK((sym_derivative(euc, sym_lie(euc, ddx, phi)) - sym_lie(euc, ddx, sym_derivative(euc, phi))).is_zero());
  VecSymField xdx = vf(c, {"x", "0"});
  FieldMatrix m = zero_matrix(c, 2, 2);
  m[0][0] = ScalarField(c, 1);
  VecSymField nx = VecSymField::endomorphism(c, m);
  CHECK(nabla_endomorphism(euc, xdx) == nx);
  for (const auto& phi : forms) {
    SymField lhs = sym_derivative(euc, sym_lie(euc, xdx, phi)) - sym_lie(euc, xdx, sym_derivative(euc, phi));
    CHECK(lhs == a_sym_derivative(euc, nx, phi).scaled(Rational(2)));
  }

  gen::Rng rng(32);
  for (int trial = 0; trial < 6; ++trial) {
    Connection nabla = gen::connection(c, rng, true, 1, 4);
    VecSymField x = gen::vector_field(c, rng, 1), y = gen::vector_field(c, rng, 1);
    std::vector<SymField> fs = {gen::sym_field(c, rng, 0), gen::sym_field(c, rng, 1), gen::sym_field(c, rng, 2)};
    IdentityReport rep = commutator_identities(nabla, x, y, fs);
    for (const auto& ch : rep.checks) CHECK_MESSAGE(ch.passed, ch.name << " " << ch.detail);
  }
  Tensor3 g(c);
  g(0, 0, 1) = ScalarField(c, 1);
  CHECK_THROWS_AS(commutator_identities(Connection(g), ddx, ddx, forms), ComputationError);
}

TEST_CASE("affine vector fields: curvature condition matches commutation with L_X") {
  auto c = fixtures::plane();
  gen::Rng rng(33);
  std::vector<SymField> span = test_forms(c);
  auto commutes = [&](const Connection& nabla, const VecSymField& x) {
    for (const auto& phi : span)
      if (sym_derivative(nabla, lie_derivative(x, phi)) != lie_derivative(x, sym_derivative(nabla, phi)))
        return false;
    return true;
  };
  auto curvature_condition = [](const Connection& nabla, const VecSymField& x) {
    return (sym_iota_curvature(riemann(nabla), x) + sym_curvature(nabla, x)).is_zero();
  };
  Connection euc(c);
  int agree_true = 0;
  std::vector<std::pair<Connection, VecSymField>> cases = {
      {euc, vf(c, {"2*x - y + 1", "x/3"})},
      {euc, vf(c, {"x^2", "0"})},
      {fixtures::constant_example(c, "1", "2"), vf(c, {"1", "0"})},
      {fixtures::constant_example(c, "1", "2"), vf(c, {"0", "1"})},
      {fixtures::trivial_example(c), vf(c, {"1", "0"})},
  };
  for (int trial = 0; trial < 10; ++trial) cases.emplace_back(gen::connection(c, rng, true, 1, 3), gen::vector_field(c, rng, 1));
  for (const auto& [nabla, x] : cases) {
    bool a = curvature_condition(nabla, x);
    CHECK(a == commutes(nabla, x));
    agree_true += a;
  }
  CHECK(agree_true >= 3);
}

TEST_CASE("levi-civita check") {
  auto c = fixtures::plane();
  SymField g = dx(c, 0) * dx(c, 0) + dx(c, 1) * dx(c, 1);
  gen::Rng rng(34);
  std::vector<SymField> forms;
  for (int k = 0; k < 5; ++k) forms.push_back(gen::sym_field(c, rng, 1));
  CHECK(levi_civita_check(Connection(c), g, forms));

  auto line = affine_chart({"x"});
  SymField h = SymField::from_components(line, 2, {{{0, 0}, e(line, "1+x^2")}});
  Tensor3 gam(line);
  gam(0, 0, 0) = e(line, "x/(1+x^2)");
  std::vector<SymField> lf = {SymField::dx(line, 0), SymField::dx(line, 0).scaled(e(line, "x^3 - 1"))};
  CHECK(levi_civita_check(Connection(gam), h, lf));

  SymField h0 = SymField::from_components(line, 2, {{{0, 0}, ScalarField(line, 1)}});
  Tensor3 one(line);
  one(0, 0, 0) = ScalarField(line, 1);
  CHECK(!levi_civita_check(Connection(one), h0));
  CHECK_THROWS_AS(levi_civita_check(Connection(c), dx(c, 0) * dx(c, 0)), ComputationError);
}

TEST_CASE("matrix inverse and determinant") {
  auto c = fixtures::plane();
  gen::Rng rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    FieldMatrix m = zero_matrix(c, 3, 3);
    for (auto& row : m)
      for (auto& f : row) f = gen::field(c, rng, 1);
    if (determinant(m).is_zero()) continue;
    FieldMatrix inv = inverse(m);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        ScalarField s(c);
        for (int k = 0; k < 3; ++k) s += m[i][k] * inv[k][j];
        CHECK(s == ScalarField(c, i == j ? 1 : 0));
      }
  }
  FieldMatrix sing = zero_matrix(c, 2, 2);
  sing[0][0] = e(c, "x");
  sing[0][1] = e(c, "y");
  sing[1][0] = e(c, "x^2");
  sing[1][1] = e(c, "x*y");
  CHECK(determinant(sing).is_zero());
  CHECK_THROWS_AS(inverse(sing), ComputationError);
}

TEST_CASE("square-zero degree-1 derivations are trivial") {
  auto s1 = make_chart({{"t", CoordKind::Angle}});
  for (const ChartPtr& c : {affine_chart({"x"}), fixtures::plane(), s1}) {
    SquareZeroReport rep = square_zero_derivations(c, 2, 4, 7);
    CHECK(rep.a_unknowns > 0);
    CHECK(rep.sigma_unknowns > 0);
    CHECK(rep.a_kernel == 0);
    CHECK(rep.sigma_kernel == 0);
    CHECK(rep.joint_nullity == 0);
    CHECK(rep.identities_hold);
    CHECK(rep.samples_square_nonzero);
    CHECK(rep.only_trivial());
  }
  // The geometric derivation acts as d on functions.
  auto c = fixtures::plane();
  FieldMatrix id = zero_matrix(c, 2, 2);
  id[0][0] = id[1][1] = ScalarField(c, 1);
  GeneralDerivation d = general_derivation(VecSymField::endomorphism(c, id), VecSymField(c, 2), Connection(c));
  ScalarField f = e(c, "x^2*y + y");
  CHECK(d(SymField::scalar(f)) == one_form(c, {"2*x*y", "x^2 + 1"}));
}
