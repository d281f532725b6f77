#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symcartan/app/acceptance.hpp"
#include "symcartan/app/runner.hpp"

#ifndef SYMCARTAN_CORPUS_DIR
#define SYMCARTAN_CORPUS_DIR "corpus"
#endif

using namespace symcartan;

namespace {

struct Global {
  std::string out;
  unsigned seed = 0;
  std::optional<double> tol;
  bool no_timings = false;
};

int emit(const Global& g, const Json& report) {
  std::string text = report.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(g.out);
  if (!f) {
    std::cerr << "cannot write " << g.out << "\n";
    return kExitComputation;
  }
  f << text;
  return 0;
}

RunOptions options(const Global& g) {
  RunOptions o;
  o.seed = g.seed;
  o.tol = g.tol;
  o.timings = !g.no_timings;
  return o;
}

// Runs the tasks of one type from a problem file.  Flags given on the
// command line are merged into the first task of that type, or into a new
// task when the file has none.
int run_typed(const Global& g, const std::string& type, const std::string& file, const Json& overrides) {
  Json problem;
  try {
    problem = read_json_file(file);
  } catch (const std::exception&) {
    RunResult r = run_problem_file(file, options(g));
    emit(g, r.report);
    return r.exit_code;
  }
  if (problem.is_object() && !problem.contains("name"))
    problem["name"] = std::filesystem::path(file).stem().string();
  Json tasks = Json::array();
  if (problem.is_object() && problem.contains("tasks") && problem["tasks"].is_array())
    for (const auto& t : problem["tasks"])
      if (t.is_object() && t.value("type", std::string()) == type) tasks.push_back(t);
  if (tasks.empty()) tasks.push_back({{"type", type}});
  if (!overrides.empty()) {
    Json first = tasks[0];
    first.update(overrides);
    tasks = Json::array({first});
  }
  if (problem.is_object()) problem["tasks"] = tasks;
  RunResult r = run_problem(problem, options(g));
  int err = emit(g, r.report);
  return err ? err : r.exit_code;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus of symmetric forms and affine connections"};
  app.require_subcommand(1);
  Global g;
  double tol = 0;
  app.add_option("--out", g.out, "Write the JSON report to this path");
  app.add_option("--seed", g.seed, "Seed for random and quasi-random sampling");
  auto* tol_opt = app.add_option("--tol", tol, "Override numeric tolerances")->check(CLI::PositiveNumber);
  app.add_flag("--no-timings", g.no_timings, "Omit timing fields from reports");

  std::string file;
  Json overrides = Json::object();
  std::string type;

  auto typed = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Problem file")->required()->check(CLI::ExistingFile);
    sub->callback([&, name] { type = name; });
    return sub;
  };

  int degree = 1, coef_degree = 0;
  auto add_ansatz = [&](CLI::App* sub) {
    sub->add_option("--degree", degree, "Tensor degree r")->check(CLI::Range(0, 4));
    sub->add_option("--coef-degree", coef_degree, "Coefficient degree D")->check(CLI::Range(0, 12));
  };
  CLI::App* kill = typed("kill", "Killing tensors in a polynomial ansatz");
  add_ansatz(kill);
  CLI::App* coh = typed("cohomology", "Ansatz-relative symmetric cohomology");
  add_ansatz(coh);
  typed("verify", "Numeric verification of closed-form Killing tensors");
  typed("affine", "Affine and parallel vector fields");
  typed("pw", "Patterson-Walker metric and lifted connections");
  typed("pw-lift", "Cohomology of the Patterson-Walker lift");
  typed("kunneth", "Kunneth subspace of a product");
  typed("circle", "Classification on the circle");
  typed("lieadm", "Cohomology of a Lie-admissible algebra");
  typed("identities", "Commutator identity suite");
  typed("derivations", "Square-zero derivation search");
  CLI::App* geo = typed("geodesic", "RK4 geodesics and numeric checks");
  geo->set_help_flag("--help", "Print this help message and exit");
  double h = 0, T = 0;
  std::string start, velocity, csv;
  geo->add_option("--h", h, "Step size")->check(CLI::PositiveNumber);
  geo->add_option("--T", T, "Final time")->check(CLI::PositiveNumber);
  geo->add_option("--start", start, "Start point, comma separated");
  geo->add_option("--velocity", velocity, "Initial velocity, comma separated");
  geo->add_option("--csv", csv, "Write the trajectory as CSV");

  CLI::App* run = app.add_subcommand("run", "Run every task of a problem file");
  run->add_option("file", file, "Problem file")->required()->check(CLI::ExistingFile);

  CLI::App* corpus = app.add_subcommand("corpus", "Run the acceptance criteria on the golden corpus");
  std::string filter, corpus_dir = SYMCARTAN_CORPUS_DIR;
  corpus->add_option("--filter", filter, "Comma-separated module names");
  corpus->add_option("--corpus-dir", corpus_dir, "Directory of problem files")->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);
  if (tol_opt->count()) g.tol = tol;

  try {
    if (*run) {
      RunResult r = run_problem_file(file, options(g));
      int err = emit(g, r.report);
      return err ? err : r.exit_code;
    }
    if (*corpus) {
      auto results = run_acceptance(corpus_dir, filter, g.seed);
      Json rows = Json::array();
      bool ok = true;
      for (const auto& r : results) {
        std::fprintf(stderr, "%-3d %-10s %-4s %7.2fs  %s%s%s\n", r.id, r.module.c_str(), r.passed ? "PASS" : "FAIL",
                     r.seconds, r.title.c_str(), r.detail.empty() ? "" : ": ", r.detail.c_str());
        Json row = {{"id", r.id}, {"module", r.module}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}};
        if (!g.no_timings) row["timing_ms"] = r.seconds * 1000;
        rows.push_back(row);
        ok = ok && r.passed;
      }
      int err = emit(g, {{"criteria", rows}, {"passed", ok}});
      return err ? err : (ok ? kExitOk : kExitAssertion);
    }
    if ((type == "kill" && kill->count("--degree")) || (type == "cohomology" && coh->count("--degree")))
      overrides["degree"] = degree;
    if ((type == "kill" && kill->count("--coef-degree")) || (type == "cohomology" && coh->count("--coef-degree")))
      overrides["coef_degree"] = coef_degree;
    if (type == "geodesic") {
      if (geo->count("--h")) overrides["h"] = h;
      if (geo->count("--T")) overrides["T"] = T;
      if (!start.empty()) overrides["start"] = parse_list(start);
      if (!velocity.empty()) overrides["velocity"] = parse_list(velocity);
      if (!csv.empty()) overrides["csv"] = csv;
    }
    return run_typed(g, type, file, overrides);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid number list: " << e.what() << "\n";
    return kExitSchema;
  }
}
