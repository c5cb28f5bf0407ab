#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cbg/play.hpp"

namespace cbg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string observed;
  std::string expected;
  double seconds = 0;
  double time_limit = 0;
  // Per-instance rows for the CSV report.
  std::vector<nlohmann::json> rows;
};

// Integrity of one finished game: replay, F-freeness, disjoint graphs.
// Empty when clean, otherwise the first problem found.
std::string audit_game(const GameResult& r);

// Criterion ids selected by a tag (counting, star-star, path-path,
// triangle-path, tree-star, engine, solver) or a number. Empty for an unknown
// tag.
std::set<int> criteria_for(const std::string& tag);

struct AcceptanceOptions {
  // Empty runs every criterion.
  std::set<int> only;
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

// One line: "PASS  3 extremal-path ...".
std::string format_line(const CriterionResult& r);
// CSV with columns criterion,game,n,params,formula,observed,verdict.
std::string to_csv(const std::vector<CriterionResult>& results);

}  // namespace cbg
