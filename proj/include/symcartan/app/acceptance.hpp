#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace symcartan {

struct CriterionResult {
  int id = 0;
  std::string module;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Numbered criteria with their module tags, without running them.
struct CriterionInfo {
  int id;
  std::string module;
  std::string title;
};
const std::vector<CriterionInfo>& criteria();

/// Runs the acceptance criteria against the problem files in corpus_dir.
/// A nonempty filter keeps the criteria whose module is in the
/// comma-separated list.
std::vector<CriterionResult> run_acceptance(const std::filesystem::path& corpus_dir, const std::string& filter = {},
                                            unsigned seed = 0);

}  // namespace symcartan
