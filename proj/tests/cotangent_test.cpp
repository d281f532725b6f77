#include "doctest.h"
#include "fixtures.hpp"
#include "gen_geom.hpp"
#include "symcartan/connection/identities.hpp"
#include "symcartan/cotangent/cotangent.hpp"
#include "symcartan/errors.hpp"

using namespace symcartan;
using fixtures::one_form;
using fixtures::vf;

namespace {

ScalarField e(const ChartPtr& c, const char* s) { return parse_expr(c, s); }

// Lift of a base vector field acting on a function of the total chart.
ScalarField act(const VecSymField& v, const ScalarField& f) { return apply(v, f); }

FieldMatrix random_bivector(const ChartPtr& c, gen::Rng& rng) {
  int n = c->dim();
  FieldMatrix pi = zero_matrix(c, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pi[i][j] = gen::field(c, rng, 1);
      pi[j][i] = -pi[i][j];
    }
  return pi;
}

std::vector<Connection> corpus(const ChartPtr& c) {
  return {Connection(c), fixtures::trivial_example(c), fixtures::constant_example(c, "1", "2"),
          fixtures::rational_example(c)};
}

}  // namespace

TEST_CASE("cotangent chart naming") {
  CotangentChart cc(fixtures::plane());
  CHECK(cc.total()->dim() == 4);
  CHECK(cc.total()->coord(2).name == "p_x");
  CHECK(CotangentChart::base_name("p_y") == "y");
  CHECK(CotangentChart::base_name("y").empty());
  CotangentChart cs(make_chart({{"t", CoordKind::Angle}}));
  CHECK(cs.total()->is_angle(0));
  CHECK(!cs.total()->is_angle(1));
  ScalarField f = e(cs.base(), "sin(t)/(2+cos(t))");
  CHECK(cs.pull(f) == e(cs.total(), "sin(t)/(2+cos(t))"));
}

TEST_CASE("lift examples") {
  auto line = affine_chart({"x"});
  CotangentChart c1(line);
  Connection flat(line);
  CHECK(lift_complete(c1, VecSymField::vector_field(line, {e(line, "x")})) == vf(c1.total(), {"x", "-p_x"}));

  auto c = fixtures::plane();
  CotangentChart cc(c);
  CHECK(lift_vertical_1form(cc, SymField::dx(c, 1)) == VecSymField::coordinate_vector(cc.total(), 3));
  FieldMatrix pi = zero_matrix(c, 2, 2);
  pi[0][1] = ScalarField(c, 1);
  pi[1][0] = ScalarField(c, -1);
  CHECK(lift_horizontal_bivec(cc, Connection(c), pi) == vf(cc.total(), {"-p_y", "p_x", "0", "0"}));
}

TEST_CASE("horizontal and vertical lift relations") {
  auto c = fixtures::plane();
  CotangentChart cc(c);
  gen::Rng rng(41);
  SymField acan = canonical_one_form(cc);
  for (const auto& nabla : {gen::connection(c, rng, false, 1, 4), gen::connection(c, rng, true, 1, 4),
                            fixtures::rational_example(c)}) {
    for (int trial = 0; trial < 4; ++trial) {
      VecSymField x = gen::vector_field(c, rng, 1), y = gen::vector_field(c, rng, 1);
      SymField alpha = gen::sym_field(c, rng, 1, 1), beta = gen::sym_field(c, rng, 1, 1);
      VecSymField xh = lift_horizontal_vec(cc, nabla, x), yh = lift_horizontal_vec(cc, nabla, y);
      VecSymField av = lift_vertical_1form(cc, alpha), bv = lift_vertical_1form(cc, beta);
      ScalarField yv = lift_vertical_vec(cc, y);
      CHECK(act(xh, yv) == lift_vertical_vec(cc, covariant_derivative(nabla, x, y)));
      CHECK(act(av, yv) == cc.pull(contract(y, alpha).as_scalar()));
      CHECK(act(lift_complete(cc, x), yv) == lift_vertical_vec(cc, lie_bracket(x, y)));
      CHECK(contract(xh, acan).as_scalar() == lift_vertical_vec(cc, x));
      if (nabla.is_torsion_free())
        CHECK(lift_complete(cc, x) == xh - lift_endo(cc, nabla_endomorphism(nabla, x)));
      ScalarField f = gen::field(c, rng);
      CHECK(act(xh, cc.pull(f)) == cc.pull(apply(x, f)));
      CHECK(act(av, cc.pull(f)).is_zero());
      // Brackets of lifts.
      CurvatureField r = riemann(nabla);
      FieldMatrix rm = zero_matrix(c, 2, 2);
      for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 2; ++k)
          rm[l][k] = r.apply(x, y, VecSymField::coordinate_vector(c, k)).scalar(l);
      VecSymField rxy = VecSymField::endomorphism(c, rm);
      CHECK(lie_bracket(xh, yh) == lift_horizontal_vec(cc, nabla, lie_bracket(x, y)) + lift_endo(cc, rxy));
      CHECK(lie_bracket(xh, av) == lift_vertical_1form(cc, covariant_derivative(nabla, x, alpha)));
      CHECK(lie_bracket(av, bv).is_zero());
    }
  }
}

TEST_CASE("patterson-walker metric") {
  auto line = affine_chart({"x"});
  CotangentChart c1(line);
  SymField dpdx = SymField::dx(c1.total(), 1) * SymField::dx(c1.total(), 0);
  CHECK(patterson_walker(c1, Connection(line)) == dpdx);

  auto c = fixtures::plane();
  CotangentChart cc(c);
  const ChartPtr& t = cc.total();
  SymField g = patterson_walker(cc, fixtures::trivial_example(c));
  // Gamma^1_12 = xy/2, Gamma^2_12 = y/2: the dx dy component is -(p_x x y + p_y y).
  CHECK(g.component({0, 1}) == e(t, "-p_x*x*y - p_y*y"));
  CHECK(g.component({0, 0}).is_zero());
  CHECK(g.component({0, 2}) == ScalarField(t, 1));
  CHECK(g.component({2, 3}).is_zero());

  gen::Rng rng(42);
  for (int trial = 0; trial < 6; ++trial) {
    Connection nabla = gen::connection(c, rng, false, 1, 4);
    SymField pw = patterson_walker(cc, nabla);
    CHECK(pw == patterson_walker(cc, torsion_free_part(nabla)));
    FieldMatrix m = zero_matrix(t, 4, 4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) m[a][b] = pw.component({a, b});
    CHECK(!determinant(m).is_zero());
    for (int a = 2; a < 4; ++a)
      for (int b = 2; b < 4; ++b) CHECK(pw.component({a, b}).is_zero());
    VecSymField x = gen::vector_field(c, rng, 1), y = gen::vector_field(c, rng, 1);
    VecSymField xc = lift_complete(cc, x), yc = lift_complete(cc, y);
    ScalarField lhs = contract(yc, contract(xc, pw)).as_scalar();
    CHECK(lhs == -lift_vertical_vec(cc, sym_bracket(nabla, x, y)));
    // g(pi^h, alpha^v) = (pi(alpha))^v
    FieldMatrix pi = random_bivector(c, rng);
    SymField alpha = gen::sym_field(c, rng, 1, 1);
    ScalarField gpa =
        contract(lift_vertical_1form(cc, alpha), contract(lift_horizontal_bivec(cc, nabla, pi), pw)).as_scalar();
    CHECK(gpa == lift_vertical_vec(cc, apply_bivector(pi, alpha)));
  }
}

TEST_CASE("canonical forms") {
  auto line = affine_chart({"x"});
  CotangentChart c1(line);
  CHECK(canonical_one_form(c1) == SymField::dx(c1.total(), 0).scaled(e(c1.total(), "p_x")));
  auto c = fixtures::plane();
  CotangentChart cc(c);
  CHECK(exterior_derivative(canonical_one_form(cc)) == canonical_symplectic(cc));
  CHECK(exterior_derivative(canonical_one_form(c1)) == canonical_symplectic(c1));
  gen::Rng rng(43);
  TwoForm w = canonical_symplectic(cc);
  for (int trial = 0; trial < 10; ++trial) {
    VecSymField x = gen::vector_field(c, rng), y = gen::vector_field(c, rng);
    // With (a ^ b) = a (x) b - b (x) a and the standard exterior derivative the
    // pairing of complete lifts carries a plus sign.
    CHECK(w.evaluate(lift_complete(cc, x), lift_complete(cc, y)) == lift_vertical_vec(cc, lie_bracket(x, y)));
  }
}

TEST_CASE("lifted connections") {
  auto c = fixtures::plane();
  CotangentChart cc(c);
  const ChartPtr& t = cc.total();
  Connection flat4(t);
  CHECK(lifted_connection_hat(cc, Connection(c)) == flat4);
  CHECK(lifted_connection_bar(cc, Connection(c)) == flat4);
  SymField acan = canonical_one_form(cc);
  for (const auto& nabla : corpus(c)) {
    SymField g = patterson_walker(cc, nabla);
    Connection hat = lifted_connection_hat(cc, nabla);
    Connection bar = lifted_connection_bar(cc, nabla);
    CHECK(sym_derivative(hat, acan) == g);
    CHECK(sym_derivative(bar, acan) == g);
    CHECK(is_parallel(hat, g));
    CHECK(bar.is_torsion_free());
    CHECK(levi_civita_check(bar, g));
    CHECK(levi_civita(g) == bar);
  }
  // Torsion of nabla-hat on horizontal lifts: T(X,Y)^h - R(X,Y)^v.
  gen::Rng rng(44);
  Connection nabla = gen::connection(c, rng, false, 1, 4);
  Connection hat = lifted_connection_hat(cc, nabla);
  CurvatureField r = riemann(nabla);
  auto tors = [](const Connection& n, const VecSymField& a, const VecSymField& b) {
    return covariant_derivative(n, a, b) - covariant_derivative(n, b, a) - lie_bracket(a, b);
  };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      VecSymField bi = VecSymField::coordinate_vector(c, i), bj = VecSymField::coordinate_vector(c, j);
      VecSymField ei = lift_horizontal_vec(cc, nabla, bi), ej = lift_horizontal_vec(cc, nabla, bj);
      FieldMatrix rm = zero_matrix(c, 2, 2);
      for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 2; ++k) rm[l][k] = r.op(l, i, j, k);
      VecSymField rhs = lift_horizontal_vec(cc, nabla, tors(nabla, bi, bj)) - lift_endo(cc, VecSymField::endomorphism(c, rm));
      CHECK(tors(hat, ei, ej) == rhs);
    }
  Tensor3 tor(c);
  tor(0, 0, 1) = ScalarField(c, 1);
  CHECK_THROWS_AS(lifted_connection_bar(cc, Connection(tor)), ComputationError);
}

TEST_CASE("levi-civita from a metric") {
  auto c = fixtures::plane();
  SymField euc = SymField::dx(c, 0) * SymField::dx(c, 0) + SymField::dx(c, 1) * SymField::dx(c, 1);
  CHECK(levi_civita(euc) == Connection(c));
  auto line = affine_chart({"x"});
  Connection lc = levi_civita(SymField::from_components(line, 2, {{{0, 0}, e(line, "1+x^2")}}));
  CHECK(lc.gamma(0, 0, 0) == e(line, "x/(1+x^2)"));
  CotangentChart cc(c);
  CHECK(levi_civita(patterson_walker(cc, Connection(c))) == Connection(cc.total()));
  gen::Rng rng(45);
  for (int trial = 0; trial < 4; ++trial) {
    SymField g = euc + gen::sym_field(c, rng, 2, 1, 2);
    FieldMatrix m = zero_matrix(c, 2, 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) m[a][b] = g.component({a, b});
    if (determinant(m).is_zero()) continue;
    Connection n = levi_civita(g);
    CHECK(n.is_torsion_free());
    CHECK(is_parallel(n, g));
  }
  CHECK_THROWS_AS(levi_civita(SymField::dx(c, 0) * SymField::dx(c, 0)), ComputationError);
}

TEST_CASE("gradient Killing complete lifts") {
  auto c = fixtures::plane();
  Connection euc(c);
  CHECK(gradient_killing_complete_lift(euc, vf(c, {"1", "0"})));
  CHECK(!gradient_killing_complete_lift(euc, vf(c, {"x", "0"})));
  Connection two = fixtures::constant_example(c, "1", "2");
  VecSymField dx = vf(c, {"1", "0"});
  CHECK(!gradient_killing_complete_lift(two, dx));
  CHECK(!sym_iota_curvature(riemann(two), dx).is_zero());
}

TEST_CASE("curvature-corrected lift on the line") {
  auto line = affine_chart({"x"});
  CotangentChart cc(line);
  const ChartPtr& t = cc.total();
  for (const char* f : {"0", "x", "x^2 + 1", "1/(1+x^2)"}) {
    Tensor3 g(line);
    g(0, 0, 0) = e(line, f);
    Connection bar = lifted_connection_bar(cc, Connection(g));
    ScalarField ft = cc.pull(e(line, f));
    ScalarField p = ScalarField::coordinate(t, 1);
    CHECK(bar.gamma(0, 0, 0) == ft);
    CHECK(bar.gamma(1, 0, 0) == p * (ft * ft + ft * ft - partial(ft, 0)));
    CHECK(bar.gamma(1, 0, 1) == -ft);
    CHECK(bar.gamma(1, 1, 0) == -ft);
    CHECK(bar.gamma(0, 0, 1).is_zero());
    CHECK(bar.gamma(1, 1, 1).is_zero());
  }
}

TEST_CASE("gradient Killing gate on corpus pairs") {
  auto c = fixtures::plane();
  auto line = affine_chart({"x"});
  auto space = affine_chart({"x", "y", "z"});
  auto s1 = make_chart({{"t", CoordKind::Angle}});
  Tensor3 gs(s1);
  gs(0, 0, 0) = e(s1, "1 + sin(t)");
  Tensor3 gl(line);
  gl(0, 0, 0) = e(line, "x");
  std::vector<std::pair<Connection, VecSymField>> pairs = {
      {Connection(line), vf(line, {"1"})},
      {Connection(line), vf(line, {"x"})},
      {Connection(gl), vf(line, {"1"})},
      {Connection(c), vf(c, {"1", "-2"})},
      {Connection(c), vf(c, {"-y", "x"})},
      {Connection(space), vf(space, {"0", "0", "1"})},
      {Connection(space), vf(space, {"y", "-x", "0"})},
      {fixtures::trivial_example(c), vf(c, {"1", "0"})},
      {fixtures::trivial_example(c), vf(c, {"0", "1"})},
      {fixtures::constant_example(c, "1", "1"), vf(c, {"1", "0"})},
      {fixtures::constant_example(c, "0", "0"), vf(c, {"0", "1"})},
      {fixtures::rational_example(c), vf(c, {"1", "0"})},
      {Connection(s1), vf(s1, {"1"})},
      {Connection(gs), vf(s1, {"1"})},
      {Connection(gs), vf(s1, {"cos(t)"})},
  };
  int positives = 0, negatives = 0;
  for (const auto& [nabla, x] : pairs) {
    GateReport g = gradient_killing_gate(nabla, x);
    CHECK(g.agree());
    (g.gradient_killing ? positives : negatives)++;
  }
  CHECK(positives >= 4);
  CHECK(negatives >= 4);
}
