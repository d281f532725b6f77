#include <filesystem>
#include <functional>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "gen_geom.hpp"
#include "symcartan/app/acceptance.hpp"
#include "symcartan/app/runner.hpp"
#include "symcartan/errors.hpp"

using namespace symcartan;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = SYMCARTAN_CORPUS_DIR;

Json problem_with(const Json& tasks, const Json& gamma = Json::object()) {
  return {{"name", "t"},
          {"manifold", {{"coords", {{{"name", "x"}}, {{"name", "y"}}}}}},
          {"connection", {{"gamma", gamma}}},
          {"tasks", tasks}};
}

// Copy of the corpus in a fresh directory.
fs::path corpus_copy(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("symcartan_" + tag);
  fs::remove_all(dir);
  fs::copy(kCorpus, dir);
  return dir;
}

void rewrite(const fs::path& file, const std::function<void(Json&)>& edit) {
  Json j = read_json_file(file);
  edit(j);
  std::ofstream(file) << j.dump(2);
}

}  // namespace

TEST_CASE("keys and expression round trips") {
  CHECK(comma_key({0, 1, 1}) == "0,1,1");
  CHECK(parse_comma_key("2,0,1", 3, 3) == std::vector<int>{2, 0, 1});
  CHECK_THROWS_AS(parse_comma_key("0,1", 3, 2), SchemaError);
  CHECK_THROWS_AS(parse_comma_key("0,5,1", 3, 2), SchemaError);
  CHECK(parse_index_key("", 2).empty());
  CHECK_THROWS_AS(parse_index_key("02", 2), SchemaError);

  auto c = fixtures::plane();
  gen::Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    Connection nabla = gen::connection(c, rng, trial % 2 == 0, 2, 4);
    Json j = connection_to_json(nabla);
    CHECK(connection_from_json(c, parse_json_text(j.dump())) == nabla);
    SymField phi = gen::sym_field(c, rng, trial % 4);
    Json s = sym_field_to_json(phi);
    CHECK(sym_field_from_json(c, phi.degree(), s["components"]) == phi);
  }
  // Rational symbols survive as expression strings.
  Connection rat = fixtures::rational_example(c);
  CHECK(connection_from_json(c, connection_to_json(rat)) == rat);
  auto s1 = chart_from_json(parse_json_text(R"({"coords": [{"name": "t", "kind": "angle"}]})"));
  CHECK(s1->is_angle(0));
  CHECK(chart_to_json(*s1)["coords"][0]["kind"] == "angle");
}

TEST_CASE("report round trip and determinism") {
  for (const char* name : {"euclidean_r2", "circle_f0", "lie_su2", "plane_rational"}) {
    fs::path file = kCorpus / (std::string(name) + ".json");
    RunResult a = run_problem_file(file);
    RunResult b = run_problem_file(file);
    CHECK(a.exit_code == kExitOk);
    std::string text = a.report.dump(2);
    CHECK(parse_json_text(text) == a.report);
    CHECK(parse_json_text(text).dump(2) == text);
    CHECK(strip_timings(a.report).dump() == strip_timings(b.report).dump());
    CHECK(strip_timings(a.report) != a.report);
  }
  // The seed reaches the randomized checks.
  RunOptions s1, s2;
  s2.seed = 7;
  Json p = read_json_file(kCorpus / "pw_r2.json");
  s1.timings = s2.timings = false;
  CHECK(run_problem(p, s1).report.dump() == run_problem(p, s1).report.dump());
  CHECK(run_problem(p, s2).exit_code == kExitOk);
}

TEST_CASE("exit codes") {
  CHECK(run_problem(parse_json_text("[1, 2]")).exit_code == kExitSchema);
  CHECK(run_problem(problem_with({{{"type", "nope"}}})).exit_code == kExitSchema);
  CHECK(run_problem(problem_with({{{"type", "kill"}}}, {{"0,0", "x"}})).exit_code == kExitSchema);
  CHECK(run_problem(problem_with({{{"type", "kill"}}}, {{"0,0,0", "x +"}})).exit_code == kExitSchema);
  CHECK(run_problem(problem_with({{{"type", "kill"}, {"degree", 9}}})).exit_code == kExitSchema);
  CHECK(run_problem(problem_with({{{"type", "geodesic"}, {"start", {0}}, {"velocity", {1, 0}}}})).exit_code ==
        kExitSchema);

  RunResult r = run_problem(problem_with({{{"type", "kill"}, {"coef_degree", 1}, {"expect", {{"dim", 4}}}}}));
  CHECK(r.exit_code == kExitAssertion);
  CHECK(r.report["status"] == "fail");
  CHECK(r.report["tasks"][0]["assertions"][0]["actual"] == 3);

  // Torsion is rejected by the lifted connection.
  RunResult t = run_problem(problem_with({{{"type", "pw"}}}, {{"0,0,1", "1"}}));
  CHECK(t.exit_code == kExitComputation);
  CHECK(t.report["error"]["kind"] == "computation");
  CHECK(t.report["error"]["task"] == 0);
  RunResult pole =
      run_problem(problem_with({{{"type", "geodesic"}, {"start", {0, 0}}, {"velocity", {1, 0}}}}, {{"0,0,0", "1/x"}}));
  CHECK(pole.exit_code == kExitComputation);
  CHECK(pole.report["error"]["kind"] == "pole");

  Json ok = problem_with({{{"type", "kill"}, {"name", "k"}, {"coef_degree", 1}, {"expect", {{"dim", {{"min", 3}}}}}},
                          {{"type", "cohomology"}, {"expect", {{"dim_kill", "$k.dim"}, {"dim_h", 1}}}}});
  CHECK(run_problem(ok).exit_code == kExitOk);
  Json dangling = problem_with({{{"type", "kill"}, {"expect", {{"dim", "$missing.dim"}}}}});
  CHECK(run_problem(dangling).exit_code == kExitSchema);
  RunOptions only;
  only.only_type = "kill";
  CHECK(run_problem(ok, only).report["tasks"].size() == 1);
}

TEST_CASE("filter selects modules") {
  auto all = run_acceptance(kCorpus, "liealg");
  REQUIRE(all.size() == 1);
  CHECK(all[0].id == 8);
  CHECK(all[0].passed);
  auto two = run_acceptance(kCorpus, "geodesic,cotangent");
  CHECK(two.size() == 3);
  CHECK(run_acceptance(kCorpus, "none").empty());
  CHECK(criteria().size() == 11);
}

TEST_CASE("corrupted fixtures turn criteria red") {
  fs::path dir = corpus_copy("corrupt");
  auto status = [&](const std::string& filter) {
    std::map<int, bool> out;
    for (const auto& r : run_acceptance(dir, filter)) out[r.id] = r.passed;
    return out;
  };
  CHECK(status("killing,connection")[3]);
  rewrite(dir / "circle_1_plus_sin.json", [](Json& j) { j["connection"]["gamma"]["0,0,0"] = "2 + sin(t)"; });
  rewrite(dir / "plane_rational.json", [](Json& j) { j["connection"]["gamma"]["0,0,1"] = "-y"; });
  rewrite(dir / "euclidean_r3.json", [](Json& j) { j["connection"]["gamma"]["2,2,2"] = "1"; });
  auto s = status("killing");
  CHECK(!s[1]);
  CHECK(!s[2]);
  CHECK(s[3]);  // 2 + sin(t) has the same classification
  rewrite(dir / "circle_1_plus_sin.json", [](Json& j) { j["connection"]["gamma"]["0,0,0"] = "sin(t)"; });
  CHECK(!status("killing")[3]);
  // A torsion entry breaks the identity suite.
  rewrite(dir / "plane_trivial.json", [](Json& j) { j["connection"]["gamma"]["1,0,1"] = "y"; });
  CHECK(!status("connection")[4]);
  fs::remove_all(dir);
}
