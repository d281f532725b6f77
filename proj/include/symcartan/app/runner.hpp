#pragma once

#include <optional>
#include <string>

#include "symcartan/app/io.hpp"

namespace symcartan {

enum ExitCode { kExitOk = 0, kExitAssertion = 1, kExitSchema = 2, kExitComputation = 3 };

struct RunOptions {
  unsigned seed = 0;
  std::optional<double> tol;  // overrides per-task tolerances
  bool timings = true;
  std::string only_type;  // run only tasks of this type when set
};

struct RunResult {
  Json report;
  int exit_code = kExitOk;
};

/// Runs the tasks of a problem file in declaration order.  Each task entry
/// carries its results, the outcome of its "expect" assertions and its
/// timing.  Errors stop the run and are reported as
/// {"kind": "schema" | "computation", "message": ..., "task": index}.
RunResult run_problem(const Json& problem, const RunOptions& opts = {});
RunResult run_problem_file(const std::filesystem::path& path, const RunOptions& opts = {});

// A single task against an already parsed problem; throws on errors.
Json run_task(const Problem& p, const Json& task, const RunOptions& opts);

// Removes every "timing_ms" and "total_ms" field, recursively.
Json strip_timings(Json report);

}  // namespace symcartan
