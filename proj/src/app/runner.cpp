#include "symcartan/app/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>

#include "symcartan/connection/derivations.hpp"
#include "symcartan/connection/identities.hpp"
#include "symcartan/cotangent/cotangent.hpp"
#include "symcartan/errors.hpp"
#include "symcartan/geodesic/geodesic.hpp"
#include "symcartan/ring/parser.hpp"

namespace symcartan {

namespace {

using Clock = std::chrono::steady_clock;

int int_param(const Json& task, const char* key, int def, int lo, int hi) {
  if (!task.contains(key)) return def;
  const Json& v = task.at(key);
  if (!v.is_number_integer()) throw SchemaError(std::string("'") + key + "' must be an integer");
  int x = v.get<int>();
  if (x < lo || x > hi)
    throw SchemaError(std::string("'") + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

double positive_param(const Json& task, const char* key, double def) {
  if (!task.contains(key)) return def;
  const Json& v = task.at(key);
  if (!v.is_number() || !(v.get<double>() > 0)) throw SchemaError(std::string("'") + key + "' must be a positive number");
  return v.get<double>();
}

double tol_param(const Json& task, const RunOptions& opts, const char* key, double def) {
  if (opts.tol) return *opts.tol;
  return positive_param(task, key, def);
}

std::vector<double> numbers(const Json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw SchemaError(std::string(what) + " needs " + std::to_string(n) + " numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw SchemaError(std::string(what) + " entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

const Connection& need_connection(const Problem& p) {
  if (!p.connection) throw SchemaError("task needs a connection");
  return *p.connection;
}

Json ansatz_to_json(const AnsatzSpec& s) {
  Json j = {{"degree", s.degree}, {"coef_degree", s.coef_degree}};
  if (!s.denominator.empty()) j["denominator"] = s.denominator;
  if (!s.per_coord.empty()) j["per_coord"] = s.per_coord;
  return j;
}

Json basis_json(const std::vector<SymField>& basis) {
  Json out = Json::array();
  for (const auto& b : basis) out.push_back(sym_field_to_json(b)["components"]);
  return out;
}

Json vector_basis_json(const std::vector<VecSymField>& basis) {
  Json out = Json::array();
  for (const auto& b : basis) out.push_back(vector_field_to_json(b));
  return out;
}

// Small random polynomial fields for the randomized identity checks.
ScalarField random_field(const ChartPtr& chart, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> coeff(-3, 3), deg(0, max_deg), gen(0, chart->num_generators() - 1),
      count(1, 3);
  std::vector<Term> terms;
  int n = count(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m;
    int d = deg(rng);
    for (int k = 0; k < d; ++k) m = m * Monomial::var(gen(rng));
    terms.push_back({m, Rational(coeff(rng))});
  }
  return ScalarField::from_polys(chart, Poly::from_terms(std::move(terms)));
}

VecSymField random_vector(const ChartPtr& chart, std::mt19937_64& rng, int max_deg) {
  std::vector<ScalarField> c;
  for (int i = 0; i < chart->dim(); ++i) c.push_back(random_field(chart, rng, max_deg));
  return VecSymField::vector_field(chart, c);
}

SymField random_one_form(const ChartPtr& chart, std::mt19937_64& rng, int max_deg) {
  SymField out(chart, 1);
  for (int i = 0; i < chart->dim(); ++i) out += SymField::dx(chart, i).scaled(random_field(chart, rng, max_deg));
  return out;
}

FieldMatrix random_bivector(const ChartPtr& chart, std::mt19937_64& rng) {
  int n = chart->dim();
  FieldMatrix pi = zero_matrix(chart, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pi[i][j] = random_field(chart, rng, 1);
      pi[j][i] = -pi[i][j];
    }
  return pi;
}

void add_check(Json& checks, const std::string& name, bool ok) { checks[name] = ok; }

bool all_true(const Json& checks) {
  for (const auto& [k, v] : checks.items())
    if (v.is_boolean() && !v.get<bool>()) return false;
  return true;
}

// ---------------------------------------------------------------- tasks

Json task_kill(const Problem& p, const Json& task) {
  const Connection& nabla = need_connection(p);
  int r = int_param(task, "degree", 1, 0, 4);
  AnsatzSpec spec = ansatz_from_json(task, r, default_ansatz(r).coef_degree);
  KillingResult k = killing_solve(nabla, spec);
  return {{"ansatz", ansatz_to_json(spec)},
          {"rows", k.problem.rows()},
          {"cols", k.problem.cols()},
          {"rank", k.problem.rank()},
          {"dim", static_cast<int>(k.basis.size())},
          {"basis", basis_json(k.basis)}};
}

Json cohomology_json(const CohomologyReport& rep) {
  Json out = {{"degree", rep.degree},
              {"dim_kill", rep.dim_kill},
              {"dim_exact_in_kill", rep.dim_exact_in_kill},
              {"dim_h", rep.dim_h},
              {"stable", rep.stable},
              {"rows", rep.rows},
              {"cols", rep.cols},
              {"kill_ansatz", ansatz_to_json(rep.kill_ansatz)}};
  out["potential_ansatz"] = rep.potential ? ansatz_to_json(*rep.potential) : Json(nullptr);
  out["representatives"] = basis_json(rep.representatives);
  return out;
}

CohomologyReport run_cohomology(const Connection& nabla, const Json& task, int r) {
  if (!task.contains("coef_degree"))
    return cohomology_auto(nabla, r, task.value("denominator", std::string()), int_param(task, "max_degree", 10, 0, 12));
  AnsatzSpec kill = ansatz_from_json(task, r, 0);
  std::optional<AnsatzSpec> pot;
  if (r > 0) {
    pot = potential_ansatz(kill);
    if (task.contains("potential_coef_degree")) pot->coef_degree = int_param(task, "potential_coef_degree", 0, 0, 12);
  }
  return cohomology(nabla, kill, pot, task.value("check_stability", true));
}

Json task_cohomology(const Problem& p, const Json& task) {
  int r = int_param(task, "degree", 1, 0, 4);
  return cohomology_json(run_cohomology(need_connection(p), task, r));
}

Json task_verify(const Problem& p, const Json& task, const RunOptions& opts) {
  const Connection& nabla = need_connection(p);
  VerifyOptions vo;
  vo.samples = int_param(task, "samples", 100, 1, 100000);
  vo.tol = tol_param(task, opts, "tol", 1e-9);
  vo.seed = opts.seed;
  const Json& tensors = task.contains("tensors") ? task.at("tensors") : Json::array();
  if (!tensors.is_array() || tensors.empty()) throw SchemaError("verify needs a nonempty 'tensors' list");
  std::vector<ClosedFormTensor> family;
  Json results = Json::array();
  bool all = true;
  double worst = 0;
  for (const auto& t : tensors) {
    family.push_back(closed_form_from_json(p.chart, t));
    VerifyResult v = killing_verify(nabla, family.back(), vo);
    all = all && v.passed;
    worst = std::max(worst, v.max_residual);
    results.push_back({{"passed", v.passed},
                       {"max_residual", v.max_residual},
                       {"evaluated", v.evaluated},
                       {"skipped", v.skipped}});
  }
  Json out = {{"samples", vo.samples}, {"tol", vo.tol}, {"all_killing", all}, {"max_residual", worst},
              {"tensors", results}};
  if (task.value("h1", false)) {
    ClosedFormReport cf = closed_form_h1(nabla, family, vo);
    out["dim_kill"] = cf.dim_kill;
    out["dim_closed"] = cf.dim_closed;
    out["dim_h"] = cf.dim_h;
  }
  return out;
}

Json task_affine(const Problem& p, const Json& task) {
  const Connection& nabla = need_connection(p);
  AnsatzSpec spec = ansatz_from_json(task, 0, 2);
  FieldSpace aff = affine_fields(nabla, spec);
  FieldSpace par = parallel_fields(nabla, spec);
  BivectorSpace biv = parallel_bivectors(nabla, spec);
  return {{"ansatz", ansatz_to_json(spec)},
          {"dim_affine", static_cast<int>(aff.basis.size())},
          {"dim_parallel", static_cast<int>(par.basis.size())},
          {"dim_parallel_bivectors", static_cast<int>(biv.basis.size())},
          {"affine_basis", vector_basis_json(aff.basis)},
          {"parallel_basis", vector_basis_json(par.basis)}};
}

Json task_pw(const Problem& p, const Json& task, const RunOptions& opts) {
  const Connection& nabla = need_connection(p);
  if (!nabla.is_torsion_free()) throw ComputationError("pw needs a torsion-free connection");
  int samples = int_param(task, "samples", 3, 0, 100);
  CotangentChart cc(p.chart);
  SymField g = patterson_walker(cc, nabla);
  SymField acan = canonical_one_form(cc);
  Connection hat = lifted_connection_hat(cc, nabla);
  Connection bar = lifted_connection_bar(cc, nabla);
  Json checks = Json::object();
  add_check(checks, "hat_sym_alpha_is_metric", sym_derivative(hat, acan) == g);
  add_check(checks, "bar_sym_alpha_is_metric", sym_derivative(bar, acan) == g);
  add_check(checks, "bar_is_levi_civita", levi_civita(g) == bar);
  add_check(checks, "d_alpha_is_omega", exterior_derivative(acan) == canonical_symplectic(cc));
  std::mt19937_64 rng(opts.seed);
  TwoForm omega = canonical_symplectic(cc);
  bool pw2 = true, pi_lift = true, omega_lift = true;
  for (int s = 0; s < samples; ++s) {
    VecSymField x = random_vector(p.chart, rng, 1), y = random_vector(p.chart, rng, 1);
    VecSymField xc = lift_complete(cc, x), yc = lift_complete(cc, y);
    pw2 = pw2 && contract(yc, contract(xc, g)).as_scalar() == -lift_vertical_vec(cc, sym_bracket(nabla, x, y));
    omega_lift = omega_lift && omega.evaluate(xc, yc) == lift_vertical_vec(cc, lie_bracket(x, y));
    FieldMatrix pi = random_bivector(p.chart, rng);
    SymField alpha = random_one_form(p.chart, rng, 1);
    ScalarField lhs = contract(lift_vertical_1form(cc, alpha), contract(lift_horizontal_bivec(cc, nabla, pi), g)).as_scalar();
    pi_lift = pi_lift && lhs == lift_vertical_vec(cc, apply_bivector(pi, alpha));
  }
  add_check(checks, "complete_lifts_pair_to_sym_bracket", pw2);
  add_check(checks, "omega_on_complete_lifts", omega_lift);
  add_check(checks, "bivector_lift_pairing", pi_lift);
  return {{"total_chart", chart_to_json(*cc.total())},
          {"metric", sym_field_to_json(g)["components"]},
          {"bar_connection", connection_to_json(bar)},
          {"random_samples", samples},
          {"checks", checks},
          {"passed", all_true(checks)}};
}

Json task_pw_lift(const Problem& p, const Json& task) {
  const Connection& nabla = need_connection(p);
  AnsatzSpec fields = ansatz_from_json(task, 0, 2);
  fields.coef_degree = int_param(task, "field_coef_degree", fields.coef_degree, 0, 12);
  AnsatzSpec kill;
  kill.degree = 1;
  kill.coef_degree = int_param(task, "kill_coef_degree", 3, 0, 12);
  PwLiftReport r = pw_cohomology_lift(nabla, fields, kill);
  Json out = {{"field_ansatz", ansatz_to_json(fields)},
              {"kill_ansatz", ansatz_to_json(kill)},
              {"bivectors", r.bivectors},
              {"aff", r.aff},
              {"aff0", r.aff0},
              {"aff_quotient", r.aff_quotient()},
              {"h1", r.h1},
              {"total", r.total()}};
  if (task.value("direct", false)) {
    CotangentChart cc(p.chart);
    CohomologyReport d = cohomology_auto(lifted_connection_bar(cc, nabla), 1);
    out["direct_dim_h"] = d.dim_h;
    out["direct_stable"] = d.stable;
  }
  return out;
}

Json task_kunneth(const Problem& p, const Json& task) {
  const Connection& a = need_connection(p);
  if (!task.contains("second")) throw SchemaError("kunneth needs a 'second' factor");
  const Json& second = task.at("second");
  ChartPtr c2 = chart_from_json(second.contains("manifold") ? second.at("manifold") : Json::object());
  Connection b = connection_from_json(c2, second.contains("connection") ? second.at("connection") : Json::object());
  int r = int_param(task, "degree", 1, 1, 3);
  auto reports = [r](const Connection& n) {
    std::vector<CohomologyReport> out;
    for (int i = 0; i <= r; ++i) out.push_back(cohomology_auto(n, i));
    return out;
  };
  KunnethReport k = kunneth_subspace(a, reports(a), b, reports(b), r);
  Json out = {{"degree", r},
              {"product_chart", chart_to_json(*k.product.chart())},
              {"kunneth_dim", k.dimension},
              {"all_killing", k.all_killing},
              {"basis", basis_json(k.basis)}};
  if (task.value("full", true)) {
    CohomologyReport full;
    if (task.contains("full_coef_degree")) {
      AnsatzSpec s;
      s.degree = r;
      s.coef_degree = int_param(task, "full_coef_degree", 3, 0, 12);
      full = cohomology(k.product, s, potential_ansatz(s));
    } else {
      full = cohomology_auto(k.product, r);
    }
    out["full_dim_h"] = full.dim_h;
    out["full_kill_ansatz"] = ansatz_to_json(full.kill_ansatz);
  }
  return out;
}

Json task_circle(const Problem& p) {
  const Connection& nabla = need_connection(p);
  if (nabla.dim() != 1 || !p.chart->is_angle(0)) throw SchemaError("circle needs a single angle coordinate");
  CircleReport r = circle_classify(nabla.gamma(0, 0, 0));
  return {{"f", nabla.gamma(0, 0, 0).to_string()},
          {"dim_kill", r.dim_kill},
          {"dim_h", r.dim_h},
          {"is_levi_civita", r.is_levi_civita},
          {"integral", r.integral},
          {"integral_exact", r.exact}};
}

Json poly_components(const Poly& zeta, int n, int r) {
  Json out = Json::object();
  for (const auto& idx : sorted_tuples(n, r)) {
    Rational c = sym_component(zeta, idx);
    if (c != 0) out[index_key(idx)] = c.get_str();
  }
  return out;
}

Json task_lieadm(const Json& task) {
  Json alg = task.contains("algebra") ? task.at("algebra") : task;
  std::optional<StructureConstants> bracket;
  if (alg.contains("bracket")) bracket = constants_from_json({{"dim", alg.at("dim")}, {"product", alg.at("bracket")}});
  Algebra a = [&] {
    if (alg.contains("metric")) {
      if (!bracket) throw SchemaError("a metric algebra needs a 'bracket'");
      return algebra_from_metric(*bracket, rational_matrix_from_json(alg.at("metric"), bracket->dim()));
    }
    return Algebra(constants_from_json(alg));
  }();
  int n = a.dim();
  int max_degree = int_param(task, "max_degree", 3, 0, 4);
  Json out = {{"dim", n}, {"lie_admissible", true}, {"left_symmetric", is_left_symmetric(a)}};
  if (bracket) {
    auto s = skew_scale(a, *bracket);
    out["skew_scale"] = s ? Json(s->get_str()) : Json(nullptr);
  }
  Json table = Json::array();
  for (int r = 0; r <= max_degree; ++r) {
    AlgebraCohomology h = cohomology(a, r);
    Json reps = Json::array();
    for (const auto& z : h.representatives) reps.push_back(poly_components(z, n, r));
    table.push_back({{"degree", r},
                     {"dim_sym", static_cast<int>(sorted_tuples(n, r).size())},
                     {"dim_ker", h.dim_ker},
                     {"dim_ker_im", h.dim_ker_im},
                     {"dim_h", h.dim_h},
                     {"representatives", reps}});
  }
  out["cohomology"] = table;
  Json dims = Json::array();
  for (const auto& row : table) dims.push_back(row["dim_h"]);
  out["dim_h"] = dims;
  return out;
}

Json task_geodesic(const Problem& p, const Json& task, const RunOptions& opts) {
  const Connection& nabla = need_connection(p);
  int n = nabla.dim();
  double h = positive_param(task, "h", 1e-3), T = positive_param(task, "T", 1);
  std::vector<double> start = numbers(task.contains("start") ? task.at("start") : Json(), n, "start");
  std::vector<double> vel = numbers(task.contains("velocity") ? task.at("velocity") : Json(), n, "velocity");
  GeodesicRun run = integrate_geodesic(nabla, {p.chart, start}, vel, h, T);
  Json out = {{"h", h}, {"T", T}, {"steps", run.steps}, {"x_final", run.x.back()}, {"v_final", run.v.back()}};

  double max_drift = 0;
  Json drifts = Json::array();
  auto drift_of = [&](const SymField& k) {
    double d = conserved_quantity(run, k);
    max_drift = std::max(max_drift, d);
    drifts.push_back(d);
  };
  if (task.contains("conserved"))
    for (const auto& t : task.at("conserved"))
      drift_of(sym_field_from_json(p.chart, int_param(t, "degree", 1, 0, 4), t.at("components")));
  if (task.contains("killing")) {
    const Json& kt = task.at("killing");
    int r = int_param(kt, "degree", 1, 0, 4);
    KillingResult k = killing_solve(nabla, ansatz_from_json(kt, r, default_ansatz(r).coef_degree));
    out["killing_dim"] = static_cast<int>(k.basis.size());
    for (const auto& b : k.basis) drift_of(b);
  }
  if (!drifts.empty()) {
    out["drifts"] = drifts;
    out["max_drift"] = max_drift;
  }

  if (task.contains("spray")) {
    const Json& st = task.at("spray");
    int samples = int_param(st, "samples", 50, 1, 10000);
    std::vector<SymField> forms;
    if (st.contains("forms"))
      for (const auto& f : st.at("forms"))
        forms.push_back(sym_field_from_json(p.chart, int_param(f, "degree", 1, 0, 4), f.at("components")));
    else
      forms = spanning_family(p.chart);
    double worst = 0;
    int evaluated = 0, skipped = 0;
    for (std::size_t i = 0; i < forms.size(); ++i) {
      SprayReport s = spray_correspondence(nabla, forms[i], samples, opts.seed + static_cast<unsigned>(i));
      worst = std::max(worst, s.max_residual);
      evaluated += s.evaluated;
      skipped += s.skipped;
    }
    out["spray"] = {{"forms", forms.size()}, {"samples", samples}, {"evaluated", evaluated}, {"skipped", skipped},
                    {"max_residual", worst}};
  }

  if (task.contains("flow")) {
    Json res = Json::array();
    double worst = 0;
    for (const auto& f : task.at("flow")) {
      VecSymField x = vector_field_from_json(p.chart, f.at("vector"));
      const Json& form = f.at("form");
      SymField phi = sym_field_from_json(p.chart, int_param(form, "degree", 1, 0, 4), form.at("components"));
      std::vector<double> m = numbers(f.at("point"), n, "point");
      double r = sym_lie_flow_check(nabla, x, phi, {p.chart, m}, positive_param(f, "delta", 1e-3));
      worst = std::max(worst, r);
      res.push_back(r);
    }
    out["flow_residuals"] = res;
    out["flow_max_residual"] = worst;
  }

  if (task.contains("order")) {
    // Error ratio at T for two step sizes against a closed-form solution in t.
    const Json& ot = task.at("order");
    ChartPtr tc = affine_chart({"t"});
    const Json& exact = ot.at("exact");
    if (!exact.is_array() || static_cast<int>(exact.size()) != n) throw SchemaError("order.exact needs dim expressions");
    std::vector<double> hs = numbers(ot.contains("h") ? ot.at("h") : Json::array({0.1, 0.05}), 2, "order.h");
    double err[2];
    for (int k = 0; k < 2; ++k) {
      GeodesicRun g = integrate_geodesic(nabla, {p.chart, start}, vel, hs[k], T);
      err[k] = 0;
      for (int i = 0; i < n; ++i)
        err[k] = std::max(err[k], std::abs(g.x.back()[i] - NumExpr::parse(tc, exact[i].get<std::string>()).eval({T})));
    }
    out["order"] = {{"h", hs}, {"errors", {err[0], err[1]}}, {"factor", err[0] / err[1]}};
  }

  if (task.contains("csv")) {
    std::string path = task.at("csv").get<std::string>();
    std::ofstream csv(path);
    if (!csv) throw ComputationError("cannot write " + path);
    csv << "t";
    for (const auto& c : p.chart->coords()) csv << "," << c.name;
    for (const auto& c : p.chart->coords()) csv << ",v_" << c.name;
    csv << "\n";
    csv.precision(17);
    for (int s = 0; s <= run.steps; ++s) {
      csv << s * h;
      for (double v : run.x[s]) csv << "," << v;
      for (double v : run.v[s]) csv << "," << v;
      csv << "\n";
    }
    out["csv"] = path;
  }
  return out;
}

struct IdentityTally {
  Json groups = Json::object();
  Json failed = Json::array();
  int checks = 0;

  void absorb(const std::string& group, const IdentityReport& rep) {
    bool ok = true;
    for (const auto& ch : rep.checks) {
      ++checks;
      if (!ch.passed) {
        ok = false;
        failed.push_back(group + ": " + ch.name);
      }
    }
    groups[group] = groups.contains(group) ? groups[group].get<bool>() && ok : ok;
  }
  void flag(const std::string& group, bool ok) {
    ++checks;
    groups[group] = ok;
    if (!ok) failed.push_back(group);
  }
};

void identity_suite(const Problem& p, const Json& task, const RunOptions& opts, IdentityTally& tally, Json& out) {
  const Connection& nabla = need_connection(p);
  ChartPtr c = p.chart;
  std::vector<SymField> forms = spanning_family(c);
  out["forms"] = forms.size();
  std::mt19937_64 rng(opts.seed);
  std::vector<std::pair<VecSymField, VecSymField>> pairs;
  if (task.contains("vectors")) {
    const Json& vs = task.at("vectors");
    if (!vs.is_array() || vs.size() < 2) throw SchemaError("'vectors' needs at least two vector fields");
    std::vector<VecSymField> v;
    for (const auto& x : vs) v.push_back(vector_field_from_json(c, x));
    for (std::size_t i = 0; i + 1 < v.size(); ++i) pairs.emplace_back(v[i], v[i + 1]);
  } else {
    int count = int_param(task, "pairs", 2, 1, 20);
    for (int k = 0; k < count; ++k) {
      VecSymField x = random_vector(c, rng, 1);
      pairs.emplace_back(x, random_vector(c, rng, 1));
    }
  }
  for (const auto& [x, y] : pairs) tally.absorb("commutators", commutator_identities(nabla, x, y, forms));

  std::vector<VecSymField> vecs;
  for (const auto& [x, y] : pairs) vecs.push_back(x);
  Connection other(c);
  if (task.contains("other")) other = connection_from_json(c, task.at("other"));
  tally.absorb("variation", variation_check(nabla, other, forms, vecs));

  // nabla^s alpha = L_{g^-1 alpha} g: on the base for a given metric, else on
  // the cotangent bundle with g_nabla and its Levi-Civita connection.
  std::vector<SymField> ones;
  for (const auto& f : forms)
    if (f.degree() == 1) ones.push_back(f);
  if (p.metric) {
    tally.flag("covLL", levi_civita_check(nabla, *p.metric, ones));
    out["covLL_forms"] = ones.size();
  } else if (task.value("cotangent", true)) {
    CotangentChart cc(c);
    SymField g = patterson_walker(cc, nabla);
    std::vector<SymField> lifted;
    for (int a = 0; a < cc.total()->dim(); ++a) lifted.push_back(SymField::dx(cc.total(), a));
    lifted.push_back(canonical_one_form(cc));
    for (const auto& f : ones) {
      SymField pulled(cc.total(), 1);
      for (int i = 0; i < c->dim(); ++i) pulled += SymField::dx(cc.total(), i).scaled(cc.pull(f.component({i})));
      lifted.push_back(pulled);
    }
    tally.flag("covLL", levi_civita_check(lifted_connection_bar(cc, nabla), g, lifted));
    out["covLL_forms"] = lifted.size();
  }
}

Json task_identities(const Problem& p, const Json& task, const RunOptions& opts) {
  const Connection& nabla = need_connection(p);
  Json out = Json::object();
  IdentityTally tally;
  if (task.value("suite", true)) identity_suite(p, task, opts, tally, out);
  if (task.contains("gate")) {
    Json gate = Json::array();
    bool agree = true;
    for (const auto& x : task.at("gate")) {
      GateReport r = gradient_killing_gate(nabla, vector_field_from_json(p.chart, x));
      agree = agree && r.agree();
      gate.push_back({{"commutes", r.commutes}, {"gradient_killing", r.gradient_killing}, {"agree", r.agree()}});
    }
    out["gate"] = gate;
    tally.flag("gate", agree);
  }
  out["checks"] = tally.checks;
  out["groups"] = tally.groups;
  out["failed"] = tally.failed;
  out["passed"] = tally.failed.empty();
  return out;
}

Json task_derivations(const Problem& p, const Json& task, const RunOptions& opts) {
  if (!p.chart) throw SchemaError("derivations needs a manifold");
  SquareZeroReport r = square_zero_derivations(p.chart, int_param(task, "coef_degree", 2, 0, 6),
                                               int_param(task, "samples", 4, 0, 100), opts.seed);
  return {{"a_unknowns", r.a_unknowns},
          {"sigma_unknowns", r.sigma_unknowns},
          {"a_kernel", r.a_kernel},
          {"sigma_kernel", r.sigma_kernel},
          {"joint_nullity", r.joint_nullity},
          {"samples", r.samples},
          {"identities_hold", r.identities_hold},
          {"samples_square_nonzero", r.samples_square_nonzero},
          {"only_trivial", r.only_trivial()}};
}

// ---------------------------------------------------------- expectations

const Json* lookup(const Json& obj, const std::string& dotted) {
  const Json* cur = &obj;
  std::size_t pos = 0;
  while (pos <= dotted.size()) {
    std::size_t next = dotted.find('.', pos);
    std::string part = dotted.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (cur->is_object()) {
      if (!cur->contains(part)) return nullptr;
      cur = &cur->at(part);
    } else if (cur->is_array() && !part.empty() && part.find_first_not_of("0123456789") == std::string::npos) {
      std::size_t i = std::stoul(part);
      if (i >= cur->size()) return nullptr;
      cur = &cur->at(i);
    } else {
      return nullptr;
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return cur;
}

// "$name.field" refers to a field of an earlier task's results.
Json resolve(const Json& v, const std::map<std::string, Json>& named) {
  if (!v.is_string()) return v;
  const std::string& s = v.get_ref<const std::string&>();
  if (s.empty() || s[0] != '$') return v;
  std::size_t dot = s.find('.');
  if (dot == std::string::npos) throw SchemaError("bad reference '" + s + "'");
  auto it = named.find(s.substr(1, dot - 1));
  if (it == named.end()) throw SchemaError("reference to unknown task in '" + s + "'");
  const Json* target = lookup(it->second, s.substr(dot + 1));
  if (!target) throw SchemaError("reference to missing field '" + s + "'");
  return *target;
}

Json check_expectations(const Json& expect, const Json& results, const std::map<std::string, Json>& named) {
  if (!expect.is_object()) throw SchemaError("'expect' must be an object");
  Json out = Json::array();
  for (const auto& [field, want] : expect.items()) {
    const Json* got = lookup(results, field);
    Json entry = {{"field", field}};
    bool ok = false;
    if (want.is_object() && (want.contains("max") || want.contains("min"))) {
      entry["bound"] = want;
      ok = got && got->is_number();
      if (ok && want.contains("max")) ok = got->get<double>() <= resolve(want.at("max"), named).get<double>();
      if (ok && want.contains("min")) ok = got->get<double>() >= resolve(want.at("min"), named).get<double>();
    } else {
      Json w = resolve(want, named);
      entry["expected"] = w;
      ok = got && *got == w;
    }
    entry["actual"] = got ? *got : Json(nullptr);
    entry["passed"] = ok;
    out.push_back(entry);
  }
  return out;
}

int exit_for(const std::exception& e) {
  if (dynamic_cast<const SchemaError*>(&e)) return kExitSchema;
  if (dynamic_cast<const Json::exception*>(&e)) return kExitSchema;
  return kExitComputation;
}

Json error_object(const std::exception& e, int code, std::optional<std::size_t> task) {
  Json err = {{"kind", code == kExitSchema ? "schema" : "computation"}, {"message", e.what()}};
  if (dynamic_cast<const PoleError*>(&e)) err["kind"] = "pole";
  err["task"] = task ? Json(*task) : Json(nullptr);
  return err;
}

}  // namespace

Json run_task(const Problem& p, const Json& task, const RunOptions& opts) {
  const std::string type = task.at("type").get<std::string>();
  if (type == "kill") return task_kill(p, task);
  if (type == "cohomology") return task_cohomology(p, task);
  if (type == "verify") return task_verify(p, task, opts);
  if (type == "affine") return task_affine(p, task);
  if (type == "pw") return task_pw(p, task, opts);
  if (type == "pw-lift") return task_pw_lift(p, task);
  if (type == "kunneth") return task_kunneth(p, task);
  if (type == "circle") return task_circle(p);
  if (type == "lieadm") return task_lieadm(task);
  if (type == "geodesic") return task_geodesic(p, task, opts);
  if (type == "identities") return task_identities(p, task, opts);
  if (type == "derivations") return task_derivations(p, task, opts);
  throw SchemaError("unknown task type '" + type + "'");
}

RunResult run_problem(const Json& problem, const RunOptions& opts) {
  auto t0 = Clock::now();
  RunResult res;
  Json& rep = res.report;
  rep = {{"problem", problem.is_object() ? problem.value("name", std::string()) : std::string()}, {"seed", opts.seed}};
  if (opts.tol) rep["tol"] = *opts.tol;
  Json tasks = Json::array();
  std::map<std::string, Json> named;
  std::optional<std::size_t> current;
  bool assertions_ok = true;
  try {
    Problem p = parse_problem(problem);
    rep["problem"] = p.name;
    if (!p.module.empty()) rep["module"] = p.module;
    if (p.chart) rep["manifold"] = chart_to_json(*p.chart);
    for (std::size_t i = 0; i < p.tasks.size(); ++i) {
      const Json& task = p.tasks[i];
      if (!opts.only_type.empty() && task.at("type") != opts.only_type) continue;
      current = i;
      auto ts = Clock::now();
      Json entry = {{"index", i}, {"type", task.at("type")}};
      if (task.contains("name")) entry["name"] = task.at("name");
      Json results = run_task(p, task, opts);
      entry["results"] = results;
      if (task.contains("name")) named[task.at("name").get<std::string>()] = results;
      std::string status = "ok";
      if (task.contains("expect")) {
        Json checks = check_expectations(task.at("expect"), results, named);
        bool ok = true;
        for (const auto& c : checks) ok = ok && c["passed"].get<bool>();
        entry["assertions"] = checks;
        status = ok ? "pass" : "fail";
        assertions_ok = assertions_ok && ok;
      }
      entry["status"] = status;
      if (opts.timings)
        entry["timing_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - ts).count();
      tasks.push_back(std::move(entry));
    }
    current.reset();
    res.exit_code = assertions_ok ? kExitOk : kExitAssertion;
  } catch (const std::exception& e) {
    res.exit_code = exit_for(e);
    rep["error"] = error_object(e, res.exit_code, current);
  }
  rep["tasks"] = tasks;
  rep["status"] = res.exit_code == kExitOk ? "pass" : res.exit_code == kExitAssertion ? "fail" : "error";
  rep["exit_code"] = res.exit_code;
  if (opts.timings) rep["total_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return res;
}

RunResult run_problem_file(const std::filesystem::path& path, const RunOptions& opts) {
  Json j;
  try {
    j = read_json_file(path);
  } catch (const SchemaError& e) {
    RunResult r;
    r.exit_code = kExitSchema;
    r.report = {{"problem", path.stem().string()},
                {"error", {{"kind", "schema"}, {"message", e.what()}, {"task", nullptr}}},
                {"tasks", Json::array()},
                {"status", "error"},
                {"exit_code", kExitSchema}};
    return r;
  }
  if (j.is_object() && !j.contains("name")) j["name"] = path.stem().string();
  return run_problem(j, opts);
}

Json strip_timings(Json report) {
  if (report.is_object()) {
    report.erase("timing_ms");
    report.erase("total_ms");
    for (auto& [k, v] : report.items()) v = strip_timings(v);
  } else if (report.is_array()) {
    for (auto& v : report) v = strip_timings(v);
  }
  return report;
}

}  // namespace symcartan
