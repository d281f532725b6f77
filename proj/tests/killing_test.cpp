#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "gen_geom.hpp"
#include "symcartan/cotangent/cotangent.hpp"
#include "symcartan/errors.hpp"
#include "symcartan/killing/killing.hpp"

using namespace symcartan;
using fixtures::vf;

namespace {

ScalarField e(const ChartPtr& c, const char* s) { return parse_expr(c, s); }

AnsatzSpec spec(int r, int d, std::string den = {}) {
  AnsatzSpec s;
  s.degree = r;
  s.coef_degree = d;
  s.denominator = std::move(den);
  return s;
}

ClosedFormTensor one_form(const ChartPtr& c, const char* a1, const char* a2) {
  ClosedFormTensor k;
  k.degree = 1;
  k.components.emplace(std::vector<int>{0}, NumExpr::parse(c, a1));
  k.components.emplace(std::vector<int>{1}, NumExpr::parse(c, a2));
  return k;
}

ChartPtr circle() { return make_chart({{"t", CoordKind::Angle}}); }

Connection circle_connection(const char* f) {
  auto c = circle();
  Tensor3 g(c);
  g(0, 0, 0) = e(c, f);
  return Connection(std::move(g));
}

// Exact rank against the rank of the same matrix in doubles.
void check_rank_oracle(const LinearProblem& lp) {
  if (lp.rows() == 0) return;
  CHECK(lp.rank() == numeric_rank(lp.to_double()));
}

}  // namespace

TEST_CASE("exact linear algebra") {
  LinearProblem lp({"a", "b", "c"});
  lp.add_row({{0, Rational(1)}, {1, Rational(2)}}, "r1");
  lp.add_row({{0, Rational(2)}, {1, Rational(4)}}, "r2");
  lp.add_row({{2, Rational(3)}}, "r3");
  CHECK(lp.rank() == 2);
  auto k = lp.kernel();
  REQUIRE(k.size() == 1);
  CHECK(k[0] == DenseVec{Rational(1), Rational(-1, 2), Rational(0)});
  CHECK(rank_of({{1, 2}, {2, 4}, {0, 1}}) == 2);
  CHECK(numeric_rank({{1, 2}, {2, 4}}) == 1);

  gen::Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    int rows = gen::uniform(rng, 1, 7), cols = gen::uniform(rng, 1, 7);
    LinearProblem p(std::vector<std::string>(cols, "u"));
    for (int r = 0; r < rows; ++r) {
      DenseVec v(cols);
      for (auto& a : v) a = gen::uniform(rng, -1, 1) == 0 ? Rational(gen::uniform(rng, -3, 3), gen::uniform(rng, 1, 3)) : Rational(0);
      p.add_row(to_sparse(v), "r");
    }
    auto ker = p.kernel();
    CHECK(p.rank() + static_cast<int>(ker.size()) == cols);
    for (const auto& v : ker)
      for (const auto& row : p.row_data()) {
        Rational dot(0);
        for (const auto& [i, a] : row) dot += a * v[i];
        CHECK(sgn(dot) == 0);
      }
    check_rank_oracle(p);
  }
}

TEST_CASE("ansatz enumeration") {
  auto c = fixtures::plane();
  CHECK(coefficient_basis(c, spec(1, 2)).size() == 6);
  AnsatzSpec capped = spec(1, 3);
  capped.per_coord = {1, -1};
  CHECK(coefficient_basis(c, capped).size() == 7);
  auto t = circle();
  // 1, cos, sin, cos^2, cos sin
  CHECK(coefficient_basis(t, spec(1, 2)).size() == 5);
  CHECK(sym_ansatz(c, spec(2, 1)).elements.size() == 9);
  auto with_den = coefficient_basis(c, spec(0, 0, "1+x^2"));
  REQUIRE(with_den.size() == 1);
  CHECK(with_den[0] == e(c, "1/(1+x^2)"));
}

TEST_CASE("vectorize respects linear relations") {
  auto c = fixtures::plane();
  std::vector<std::vector<ScalarField>> in = {
      {e(c, "1/(1+x^2)"), e(c, "y")}, {e(c, "x^2/(1+x^2)"), e(c, "0")}, {e(c, "1"), e(c, "y")}};
  Vectorized v = vectorize(in);
  std::vector<DenseVec> dense;
  for (const auto& s : v.vectors) dense.push_back(to_dense(s, static_cast<int>(v.keys.size())));
  CHECK(rank_of(dense) == 2);
}

TEST_CASE("Killing forms of Euclidean space") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> names = {"x", "y", "z"};
    names.resize(n);
    auto c = affine_chart(names);
    KillingResult k = killing_solve(Connection(c), spec(1, 1));
    CHECK(static_cast<int>(k.basis.size()) == n * (n + 1) / 2);
    check_rank_oracle(k.problem);
  }
  auto c = fixtures::plane();
  KillingResult k = killing_solve(Connection(c), spec(1, 1));
  // Reduced echelon basis of span{dx, dy, x dy - y dx}.
  std::vector<SymField> expected = {fixtures::one_form(c, {"1", "0"}), fixtures::one_form(c, {"-y", "x"}),
                                    fixtures::one_form(c, {"0", "1"})};
  Vectorized v = vectorize({flatten(k.basis[0]), flatten(k.basis[1]), flatten(k.basis[2]), flatten(expected[0]),
                            flatten(expected[1]), flatten(expected[2])});
  Echelon all(static_cast<int>(v.keys.size()));
  for (const auto& s : v.vectors) all.insert(s);
  CHECK(all.rank() == 3);
}

TEST_CASE("Euclidean cohomology") {
  int expect_kill[] = {1, 3, 6}, expect_h[] = {0, 1, 3};
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> names = {"x", "y", "z"};
    names.resize(n);
    CohomologyReport rep = cohomology_auto(Connection(affine_chart(names)), 1);
    CHECK(rep.stable);
    CHECK(rep.dim_kill == expect_kill[n - 1]);
    CHECK(rep.dim_h == expect_h[n - 1]);
    CHECK(rep.dim_exact_in_kill == n);
    CHECK(rep.kill_ansatz.coef_degree == 3);
  }
  CohomologyReport h0 = cohomology_auto(Connection(fixtures::plane()), 0);
  CHECK(h0.dim_kill == 1);
  CHECK(h0.dim_h == 1);
  CohomologyReport h2 = cohomology_auto(Connection(affine_chart({"x"})), 2);
  // On the line every Killing 2-tensor c dx^2 is d(c x dx)/2.
  CHECK(h2.dim_kill == 1);
  CHECK(h2.dim_h == 0);
}

TEST_CASE("plane examples") {
  auto c = fixtures::plane();
  KillingResult triv = killing_solve(fixtures::trivial_example(c), spec(1, 6));
  CHECK(triv.basis.empty());
  check_rank_oracle(triv.problem);
  CohomologyReport rt = cohomology(fixtures::trivial_example(c), spec(1, 6), potential_ansatz(spec(1, 6)));
  CHECK(rt.dim_h == 0);
  CHECK(rt.stable);

  // Constant example: only the exact element is polynomial.
  Connection cst = fixtures::constant_example(c, "1", "1");
  CohomologyReport rc = cohomology_auto(cst, 1);
  CHECK(rc.dim_kill == 1);
  CHECK(rc.dim_h == 0);
  auto fam = std::vector<ClosedFormTensor>{one_form(c, "exp(y)", "0"), one_form(c, "0", "exp(x)"),
                                           one_form(c, "1", "-1")};
  ClosedFormReport cf = closed_form_h1(cst, fam);
  CHECK(cf.all_killing);
  CHECK(cf.dim_kill == 3);
  CHECK(cf.dim_h == 2);
  Connection cst2 = fixtures::constant_example(c, "2", "-3");
  ClosedFormReport cf2 = closed_form_h1(
      cst2, {one_form(c, "exp(2*y)", "0"), one_form(c, "0", "exp(-3*x)"), one_form(c, "1/2", "1/3")});
  CHECK(cf2.all_killing);
  CHECK(cf2.dim_h == 2);

  // Rational example.
  Connection rat = fixtures::rational_example(c);
  ClosedFormReport cr = closed_form_h1(
      rat, {one_form(c, "exp(-y^2)/(1+2*y^2)", "0"), one_form(c, "0", "exp(-x^2)/(1+2*x^2)"),
            one_form(c, "y/(1+2*y^2)", "-x/(1+2*x^2)")});
  CHECK(cr.all_killing);
  CHECK(cr.dim_kill == 3);
  CHECK(cr.dim_h == 3);
  // The rational element lies in the ansatz with the matching denominator.
  KillingResult kr = killing_solve(rat, spec(1, 3, "(1+2*x^2)*(1+2*y^2)"));
  REQUIRE(kr.basis.size() == 1);
  SymField third = fixtures::one_form(c, {"y/(1+2*y^2)", "-x/(1+2*x^2)"});
  Vectorized v = vectorize({flatten(kr.basis[0]), flatten(third)});
  Echelon ech(static_cast<int>(v.keys.size()));
  ech.insert(v.vectors[0]);
  CHECK(!ech.insert(v.vectors[1]));
}

TEST_CASE("killing_verify") {
  auto c = fixtures::plane();
  Connection cst = fixtures::constant_example(c, "1", "1");
  VerifyResult ok = killing_verify(cst, one_form(c, "exp(y)", "0"));
  CHECK(ok.passed);
  CHECK(ok.evaluated == 100);
  Connection rat = fixtures::rational_example(c);
  CHECK(killing_verify(rat, one_form(c, "exp(-y^2)/(1+2*y^2)", "0")).passed);
  VerifyResult bad = killing_verify(rat, one_form(c, "x", "0"));
  CHECK(!bad.passed);
  CHECK(bad.max_residual > 0.1);
  // Poles are skipped and replaced.
  auto line = affine_chart({"x"});
  ClosedFormTensor k;
  k.components.emplace(std::vector<int>{0}, NumExpr::parse(line, "1/x"));
  Tensor3 g(line);
  g(0, 0, 0) = e(line, "-1/x");
  VerifyResult p = killing_verify(Connection(g), k);
  CHECK(p.passed);
  // Degree 2 on the Euclidean plane.
  ClosedFormTensor g2;
  g2.degree = 2;
  g2.components.emplace(std::vector<int>{0, 0}, NumExpr::parse(c, "y^2"));
  g2.components.emplace(std::vector<int>{0, 1}, NumExpr::parse(c, "-x*y"));
  g2.components.emplace(std::vector<int>{1, 1}, NumExpr::parse(c, "x^2"));
  CHECK(killing_verify(Connection(c), g2).passed);
  auto pt = halton_point(*circle(), 1);
  CHECK(pt[0] == doctest::Approx(M_PI));
}

TEST_CASE("circle classification") {
  auto t = circle();
  CircleReport zero = circle_classify(e(t, "0"));
  CHECK(zero.dim_h == 1);
  CHECK(zero.is_levi_civita);
  CHECK(zero.exact);
  CircleReport s = circle_classify(e(t, "sin(t)"));
  CHECK(s.dim_h == 1);
  CHECK(s.is_levi_civita);
  CircleReport one = circle_classify(e(t, "1 + sin(t)"));
  CHECK(one.dim_h == 0);
  CHECK(!one.is_levi_civita);
  CHECK(one.integral == doctest::Approx(2 * M_PI));
  CHECK(circle_classify(e(t, "cos(t)^2")).integral == doctest::Approx(M_PI));
  CircleReport q = circle_classify(e(t, "sin(t)/(2+cos(t))"));
  CHECK(!q.exact);
  CHECK(q.is_levi_civita);
  CHECK(!circle_classify(e(t, "1/(2+cos(t))")).is_levi_civita);
  CHECK_THROWS_AS(circle_classify(e(fixtures::plane(), "x")), ComputationError);

  // The exact classification agrees with the trigonometric ansatz.
  for (const char* f : {"0", "1 + sin(t)"}) {
    CohomologyReport rep = cohomology(circle_connection(f), spec(1, 3), potential_ansatz(spec(1, 3)));
    CHECK(rep.dim_h == circle_classify(e(t, f)).dim_h);
  }
  // With f = sin the Killing form exp(cos t) dt is outside the ring but verifies numerically.
  ClosedFormTensor k;
  k.components.emplace(std::vector<int>{0}, NumExpr::parse(t, "exp(-cos(t))"));
  CHECK(killing_verify(circle_connection("sin(t)"), k).passed);
}

TEST_CASE("affine and parallel fields") {
  auto c = fixtures::plane();
  Connection euc(c);
  CHECK(affine_fields(euc, spec(0, 2)).basis.size() == 6);
  CHECK(parallel_fields(euc, spec(0, 2)).basis.size() == 2);
  CHECK(parallel_bivectors(euc, spec(0, 2)).basis.size() == 1);
  auto line = affine_chart({"x"});
  CHECK(affine_fields(Connection(line), spec(0, 3)).basis.size() == 2);
  CHECK(parallel_fields(Connection(line), spec(0, 3)).basis.size() == 1);
  CHECK(parallel_bivectors(Connection(line), spec(0, 3)).basis.empty());

  Connection triv = fixtures::trivial_example(c);
  BivectorSpace bt = parallel_bivectors(triv, spec(0, 4));
  CHECK(bt.basis.empty());
  check_rank_oracle(bt.problem);
  FieldSpace at = affine_fields(triv, spec(0, 4));
  for (const auto& x : at.basis) CHECK((sym_iota_curvature(riemann(triv), x) + sym_curvature(triv, x)).is_zero());
  // Parallel fields are affine.
  Connection cst = fixtures::constant_example(c, "1", "2");
  FieldSpace a = affine_fields(cst, spec(0, 3));
  FieldSpace p = parallel_fields(cst, spec(0, 3));
  CHECK(p.basis.size() <= a.basis.size());
  for (const auto& x : p.basis) CHECK(nabla_endomorphism(cst, x).is_zero());
  Tensor3 tor(c);
  tor(0, 0, 1) = ScalarField(c, 1);
  CHECK_THROWS_AS(affine_fields(Connection(tor), spec(0, 1)), ComputationError);
}

TEST_CASE("patterson-walker cohomology lift") {
  auto c = fixtures::plane();
  PwLiftReport r2 = pw_cohomology_lift(Connection(c), spec(0, 2), spec(1, 3));
  CHECK(r2.bivectors == 1);
  CHECK(r2.aff_quotient() == 4);
  CHECK(r2.h1 == 1);
  CHECK(r2.total() == 6);
  PwLiftReport r1 = pw_cohomology_lift(Connection(affine_chart({"x"})), spec(0, 2), spec(1, 3));
  CHECK(r1.bivectors == 0);
  CHECK(r1.aff_quotient() == 1);
  CHECK(r1.h1 == 0);
  PwLiftReport s1 = pw_cohomology_lift(circle_connection("0"), spec(0, 2), spec(1, 3));
  CHECK(s1.bivectors == 0);
  CHECK(s1.aff_quotient() == 0);
  CHECK(s1.h1 == 1);
  CHECK(s1.total() == 1);

  // Direct cohomology on the doubled charts.
  CotangentChart cc(c);
  CohomologyReport r4 = cohomology_auto(lifted_connection_bar(cc, Connection(c)), 1);
  CHECK(r4.dim_h == 6);
  CHECK(r4.stable);
  CotangentChart cs(circle());
  CohomologyReport cyl = cohomology_auto(lifted_connection_bar(cs, circle_connection("0")), 1);
  CHECK(cyl.dim_h == 1);
}

TEST_CASE("kunneth subspace") {
  auto line = affine_chart({"x"});
  auto line2 = affine_chart({"y"});
  auto t = circle();
  auto reports = [](const Connection& n) {
    return std::vector<CohomologyReport>{cohomology_auto(n, 0), cohomology_auto(n, 1)};
  };
  Connection s1 = circle_connection("0");
  Connection r1(line), r1b(line2);

  KunnethReport cyl = kunneth_subspace(s1, reports(s1), r1, reports(r1), 1);
  CHECK(cyl.dimension == 1);
  CHECK(cyl.all_killing);
  CHECK(cohomology_auto(cyl.product, 1).dim_h == 1);

  KunnethReport plane = kunneth_subspace(r1, reports(r1), r1b, reports(r1b), 1);
  CHECK(plane.dimension == 0);
  CHECK(cohomology_auto(plane.product, 1).dim_h == 1);

  auto t2c = make_chart({{"u", CoordKind::Angle}});
  Connection s2(t2c);
  KunnethReport torus = kunneth_subspace(s1, reports(s1), s2, reports(s2), 1);
  CHECK(torus.dimension == 2);
  CHECK(torus.all_killing);
  CohomologyReport full = cohomology(torus.product, spec(1, 3), potential_ansatz(spec(1, 3)));
  CHECK(full.dim_h == 2);

  // Product connection of two curved factors is block diagonal.
  Tensor3 g(line);
  g(0, 0, 0) = e(line, "x");
  Connection pc = product_connection(Connection(g), r1b);
  CHECK(pc.gamma(0, 0, 0) == e(pc.chart(), "x"));
  CHECK(pc.gamma(1, 1, 1).is_zero());
  CHECK(pull_second(SymField::dx(line2, 0), pc.chart()) == SymField::dx(pc.chart(), 1));
}

TEST_CASE("Killing dimension bound on random connections") {
  auto c = fixtures::plane();
  gen::Rng rng(52);
  for (int trial = 0; trial < 6; ++trial) {
    Connection nabla = gen::connection(c, rng, trial % 2 == 0, 1, 3);
    KillingResult k = killing_solve(nabla, spec(1, 3));
    CHECK(k.basis.size() <= 3);
    for (const auto& b : k.basis) CHECK(sym_derivative(nabla, b).is_zero());
    check_rank_oracle(k.problem);
    // Monotone in the ansatz.
    CHECK(killing_solve(nabla, spec(1, 4)).basis.size() >= k.basis.size());
  }
}
