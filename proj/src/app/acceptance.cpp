#include "symcartan/app/acceptance.hpp"

#include <chrono>
#include <set>
#include <sstream>

#include "symcartan/app/runner.hpp"

namespace symcartan {

namespace {

struct Checker {
  std::filesystem::path dir;
  unsigned seed = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  // Runs the named tasks of a corpus file; a nonzero exit is a failure.
  Json run(const std::string& file, const std::set<std::string>& names) {
    Json problem;
    try {
      problem = read_json_file(dir / (file + ".json"));
    } catch (const std::exception& e) {
      failures.push_back(file + ": " + e.what());
      return Json::object();
    }
    if (problem.is_object() && problem.contains("tasks") && problem["tasks"].is_array()) {
      Json kept = Json::array();
      for (const auto& t : problem["tasks"])
        if (t.is_object() && names.count(t.value("name", std::string()))) kept.push_back(t);
      problem["tasks"] = kept;
    }
    RunOptions opts;
    opts.seed = seed;
    RunResult r = run_problem(problem, opts);
    if (r.exit_code != kExitOk) {
      std::string why = r.report.contains("error") ? r.report["error"].value("message", std::string())
                                                   : std::string("assertion failed");
      failures.push_back(file + ": exit " + std::to_string(r.exit_code) + " (" + why + ")");
    }
    return r.report;
  }

  Json field(const Json& report, const std::string& task, const std::string& path) {
    if (report.contains("tasks"))
      for (const auto& t : report["tasks"])
        if (t.value("name", std::string()) == task) {
          Json cur = t["results"];
          std::stringstream ss(path);
          std::string part;
          while (std::getline(ss, part, '.')) {
            if (cur.is_object() && cur.contains(part)) {
              cur = cur[part];
            } else if (cur.is_array() && !part.empty() && std::isdigit(static_cast<unsigned char>(part[0])) &&
                       std::stoul(part) < cur.size()) {
              cur = cur[std::stoul(part)];
            } else {
              return nullptr;
            }
          }
          return cur;
        }
    return nullptr;
  }

  int integer(const Json& report, const std::string& task, const std::string& path) {
    Json v = field(report, task, path);
    return v.is_number_integer() ? v.get<int>() : -1;
  }
  double number(const Json& report, const std::string& task, const std::string& path) {
    Json v = field(report, task, path);
    return v.is_number() ? v.get<double>() : 1e300;
  }
  bool flag(const Json& report, const std::string& task, const std::string& path) {
    Json v = field(report, task, path);
    return v.is_boolean() && v.get<bool>();
  }
};

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const std::vector<std::string> kConnectionFiles = {"euclidean_r1",  "euclidean_r2", "euclidean_r3",
                                                   "plane_trivial", "plane_constant", "plane_rational",
                                                   "circle_f0",     "circle_sin",   "circle_1_plus_sin"};

void euclidean_dims(Checker& c) {
  const int kill[] = {1, 3, 6}, h[] = {0, 1, 3};
  for (int n = 1; n <= 3; ++n) {
    std::string file = "euclidean_r" + std::to_string(n);
    auto t0 = Clock::now();
    Json rep = c.run(file, {"h1"});
    double s = elapsed(t0);
    c.expect(c.integer(rep, "h1", "dim_kill") == kill[n - 1], file + ": dim Kill^1");
    c.expect(c.integer(rep, "h1", "dim_h") == h[n - 1], file + ": dim H^1");
    c.expect(c.flag(rep, "h1", "stable"), file + ": ansatz not stable");
    c.expect(s < 1.0, file + ": took " + std::to_string(s) + " s");
  }
}

void plane_examples(Checker& c) {
  Json triv = c.run("plane_trivial", {"kill1", "h1"});
  c.expect(c.integer(triv, "kill1", "dim") == 0, "trivial example: Kill^1 not zero at D = 6");
  c.expect(c.integer(triv, "kill1", "ansatz.coef_degree") == 6, "trivial example: ansatz degree");
  c.expect(c.integer(triv, "h1", "dim_h") == 0, "trivial example: dim H^1");
  Json cst = c.run("plane_constant", {"closed_forms"});
  Json rat = c.run("plane_rational", {"closed_forms"});
  for (const auto& [name, rep, dim] : {std::tuple{"constant", &cst, 2}, std::tuple{"rational", &rat, 3}}) {
    std::string n = std::string(name) + " example: ";
    c.expect(c.flag(*rep, "closed_forms", "all_killing"), n + "closed-form basis fails killing_verify");
    c.expect(c.integer(*rep, "closed_forms", "samples") == 100, n + "sample count");
    c.expect(c.number(*rep, "closed_forms", "tol") <= 1e-9, n + "tolerance");
    c.expect(c.integer(*rep, "closed_forms", "dim_h") == dim, n + "dim H^1");
  }
}

void circle_classification(Checker& c) {
  const std::tuple<const char*, int, bool> cases[] = {
      {"circle_f0", 1, true}, {"circle_sin", 1, true}, {"circle_1_plus_sin", 0, false}};
  for (const auto& [file, h, lc] : cases) {
    Json rep = c.run(file, {"circle"});
    c.expect(c.integer(rep, "circle", "dim_h") == h, std::string(file) + ": dim H^1");
    c.expect(c.flag(rep, "circle", "is_levi_civita") == lc, std::string(file) + ": Levi-Civita flag");
    c.expect(c.flag(rep, "circle", "integral_exact"), std::string(file) + ": integral not exact");
  }
}

void identity_suite(Checker& c) {
  auto t0 = Clock::now();
  for (const auto& file : kConnectionFiles) {
    Json rep = c.run(file, {"identities"});
    c.expect(c.flag(rep, "identities", "passed"), file + ": identity residual");
    for (const char* g : {"commutators", "variation", "covLL"})
      c.expect(c.flag(rep, "identities", std::string("groups.") + g), file + ": " + g);
    c.expect(c.integer(rep, "identities", "checks") > 0, file + ": no checks ran");
  }
  double s = elapsed(t0);
  c.expect(s < 60, "suite took " + std::to_string(s) + " s");
}

void patterson_walker(Checker& c) {
  std::vector<std::string> files = kConnectionFiles;
  files.push_back("line_gamma1");
  files.push_back("pw_r2");
  for (const auto& file : files) {
    Json rep = c.run(file, {"pw"});
    for (const char* k : {"hat_sym_alpha_is_metric", "bar_sym_alpha_is_metric", "bar_is_levi_civita",
                          "d_alpha_is_omega", "complete_lifts_pair_to_sym_bracket", "omega_on_complete_lifts",
                          "bivector_lift_pairing"})
      c.expect(c.flag(rep, "pw", std::string("checks.") + k), file + ": " + k);
    c.expect(c.integer(rep, "pw", "random_samples") > 0, file + ": no randomized lifts");
  }
}

void pw_lift(Checker& c) {
  auto t0 = Clock::now();
  Json rep = c.run("euclidean_r2", {"pwlift"});
  double s = elapsed(t0);
  c.expect(c.integer(rep, "pwlift", "bivectors") == 1, "bivector component");
  c.expect(c.integer(rep, "pwlift", "aff") == 6 && c.integer(rep, "pwlift", "aff0") == 2, "affine quotient 6 - 2");
  c.expect(c.integer(rep, "pwlift", "h1") == 1, "base H^1 component");
  c.expect(c.integer(rep, "pwlift", "total") == 6, "total");
  c.expect(c.integer(rep, "pwlift", "direct_dim_h") == 6, "direct cohomology of the doubled chart");
  c.expect(s < 30, "took " + std::to_string(s) + " s");
}

void kunneth(Checker& c) {
  Json circ = c.run("circle_f0", {"cylinder", "torus"});
  c.expect(c.integer(circ, "cylinder", "kunneth_dim") == 1 && c.integer(circ, "cylinder", "full_dim_h") == 1,
           "flat cylinder");
  c.expect(c.integer(circ, "torus", "kunneth_dim") == 2 && c.integer(circ, "torus", "full_dim_h") == 2, "flat torus");
  Json line = c.run("euclidean_r1", {"plane"});
  c.expect(c.integer(line, "plane", "kunneth_dim") == 0 && c.integer(line, "plane", "full_dim_h") == 1,
           "Euclidean line times line");
}

void lie_admissible(Checker& c) {
  auto t0 = Clock::now();
  Json triv = c.run("lie_trivial", {"trivial1", "trivial2", "trivial3", "trivial4"});
  for (int n = 1; n <= 4; ++n) {
    std::string task = "trivial" + std::to_string(n);
    int binom = 1;
    for (int r = 0; r <= 3; ++r) {
      if (r > 0) binom = binom * (n + r - 1) / r;
      c.expect(c.integer(triv, task, "dim_h." + std::to_string(r)) == binom,
               task + ": dim H^" + std::to_string(r));
    }
  }
  Json one = c.run("lie_one", {"one"});
  c.expect(c.integer(one, "one", "dim_h.1") == 0 && c.integer(one, "one", "dim_h.2") == 0, "dim-1 algebra");
  Json su2 = c.run("lie_su2", {"half_bracket"});
  c.expect(c.integer(su2, "half_bracket", "dim_h.1") == 3, "su(2) half bracket dim H^1");
  double s = elapsed(t0);
  c.expect(s < 5, "took " + std::to_string(s) + " s");
}

void numeric_harness(Checker& c) {
  const std::pair<const char*, const char*> killing[] = {{"euclidean_r1", "geodesic"},
                                                         {"euclidean_r2", "geodesic_kill1"},
                                                         {"euclidean_r2", "geodesic_kill2"},
                                                         {"plane_constant", "geodesic"},
                                                         {"circle_f0", "geodesic"}};
  std::map<std::string, std::set<std::string>> by_file;
  for (const auto& [f, t] : killing) by_file[f].insert(t);
  by_file["plane_rational"].insert("geodesic");
  by_file["plane_trivial"].insert("geodesic");
  by_file["circle_sin"].insert("geodesic");
  by_file["line_gamma1"].insert("closed_form");
  std::map<std::string, Json> reports;
  for (const auto& [f, names] : by_file) reports[f] = c.run(f, names);

  for (const auto& [f, t] : killing) {
    std::string where = std::string(f) + "/" + t;
    const Json& rep = reports[f];
    c.expect(c.integer(rep, t, "killing_dim") > 0, where + ": no Killing tensors");
    c.expect(c.number(rep, t, "max_drift") < 1e-8, where + ": drift");
    c.expect(c.number(rep, t, "h") == 1e-3 && c.number(rep, t, "T") == 1, where + ": step parameters");
  }
  int spray_cases = 0;
  for (auto& [f, rep] : reports)
    for (const auto& t : rep["tasks"]) {
      const Json& r = t["results"];
      if (!r.contains("spray")) continue;
      ++spray_cases;
      c.expect(r["spray"]["samples"] == 50, f + ": spray sample count");
      c.expect(r["spray"]["evaluated"].get<int>() == 50 * r["spray"]["forms"].get<int>(), f + ": spray points");
      c.expect(r["spray"]["max_residual"].get<double>() < 1e-6, f + ": spray residual");
    }
  c.expect(spray_cases >= 5, "spray cases");
  Json flows = c.field(reports["euclidean_r2"], "geodesic_kill2", "flow_residuals");
  c.expect(flows.is_array() && flows.size() == 3, "three hand flow cases");
  if (flows.is_array())
    for (const auto& r : flows) c.expect(r.get<double>() < 1e-4, "flow residual " + r.dump());
  double factor = c.number(reports["line_gamma1"], "closed_form", "order.factor");
  c.expect(factor >= 12 && factor <= 20, "RK4 order factor " + std::to_string(factor));
}

void derivations(Checker& c) {
  for (const char* file : {"euclidean_r1", "euclidean_r2"}) {
    Json rep = c.run(file, {"derivations"});
    c.expect(c.integer(rep, "derivations", "joint_nullity") == 0, std::string(file) + ": nonzero kernel");
    c.expect(c.flag(rep, "derivations", "identities_hold"), std::string(file) + ": residual identities");
    c.expect(c.flag(rep, "derivations", "samples_square_nonzero"), std::string(file) + ": sample squares to zero");
  }
}

void gradient_gate(Checker& c) {
  int positives = 0, negatives = 0;
  std::vector<std::string> files = kConnectionFiles;
  files.push_back("line_gamma1");
  for (const auto& file : files) {
    Json rep = c.run(file, {"gate"});
    Json gate = c.field(rep, "gate", "gate");
    c.expect(gate.is_array() && !gate.empty(), file + ": no gate pairs");
    if (!gate.is_array()) continue;
    for (const auto& g : gate) {
      c.expect(g["agree"].get<bool>(), file + ": gate disagrees");
      (g["gradient_killing"].get<bool>() ? positives : negatives)++;
    }
  }
  c.expect(positives >= 4 && negatives >= 4,
           "pairs on both sides: " + std::to_string(positives) + "/" + std::to_string(negatives));
}

struct Entry {
  CriterionInfo info;
  void (*fn)(Checker&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {{1, "killing", "Euclidean Kill^1 and H^1 dims"}, euclidean_dims},
      {{2, "killing", "plane examples"}, plane_examples},
      {{3, "killing", "circle classification"}, circle_classification},
      {{4, "connection", "identity suite on the corpus"}, identity_suite},
      {{5, "cotangent", "Patterson-Walker identities"}, patterson_walker},
      {{6, "killing", "PW cohomology lift of the plane"}, pw_lift},
      {{7, "killing", "Kunneth dims"}, kunneth},
      {{8, "liealg", "Lie-admissible cohomology"}, lie_admissible},
      {{9, "geodesic", "numeric harness"}, numeric_harness},
      {{10, "connection", "square-zero derivations"}, derivations},
      {{11, "cotangent", "gradient Killing gate"}, gradient_gate},
  };
  return e;
}

bool selected(const std::string& module, const std::string& filter) {
  if (filter.empty()) return true;
  std::stringstream ss(filter);
  std::string part;
  while (std::getline(ss, part, ','))
    if (part == module) return true;
  return false;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> info = [] {
    std::vector<CriterionInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return info;
}

std::vector<CriterionResult> run_acceptance(const std::filesystem::path& corpus_dir, const std::string& filter,
                                            unsigned seed) {
  std::vector<CriterionResult> out;
  for (const auto& e : entries()) {
    if (!selected(e.info.module, filter)) continue;
    Checker c{corpus_dir, seed, {}};
    auto t0 = Clock::now();
    try {
      e.fn(c);
    } catch (const std::exception& ex) {
      c.failures.push_back(std::string("exception: ") + ex.what());
    }
    CriterionResult r{e.info.id, e.info.module, e.info.title, c.failures.empty(), {}, elapsed(t0)};
    for (std::size_t i = 0; i < c.failures.size(); ++i) r.detail += (i ? "; " : "") + c.failures[i];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace symcartan
