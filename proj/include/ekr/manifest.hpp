#pragma once

// Replayable claims: each one rebuilds an action, runs the relevant checks
// and compares against the expected value.

#include <string>
#include <vector>

#include "ekr/analysis.hpp"

namespace ekr {

struct ClaimResult {
  std::string id;
  std::string claim;     // short description
  std::string expected;
  std::string computed;
  bool pass = false;
  std::string note;
};

struct Manifest {
  std::vector<ClaimResult> claims;
  /// every EkrReport produced while replaying, for the rho sweep
  std::vector<EkrReport> reports;
  bool all_passed() const;
  std::vector<std::string> failed_ids() const;
};

std::vector<std::string> claim_ids();

/// Runs the selected claims (all when `only` is empty), in registry order.
/// Unknown ids raise InvalidArgument.
Manifest verify_paper(const std::vector<std::string>& only = {}, const AnalysisConfig& cfg = {});

nlohmann::json to_json(const Manifest& m);
std::string render_table(const Manifest& m);
std::string render_csv(const Manifest& m);

}  // namespace ekr
