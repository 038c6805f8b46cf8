#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "freechoice/freedom.hpp"
#include "freechoice/sampling.hpp"
#include "freechoice/scenarios.hpp"

namespace freechoice::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNotFree = 1,  // only with --fail-on-not-free
  kUsageError = 2,
};

/// Runs the command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Formats a partial assignment as "A=0, B=1".
std::string format_assignment(const Assignment& a);

/// Text report: one row per subject; the past-only column is shown when `past_only` is non-empty.
std::string audit_text(const std::string& scenario, const std::vector<FreedomVerdict>& verdicts,
                       const std::vector<FreedomVerdict>& past_only);

nlohmann::ordered_json verdict_json(const FreedomVerdict& v);
nlohmann::ordered_json audit_json(const std::string& scenario, const std::vector<FreedomVerdict>& verdicts,
                                  const std::vector<FreedomVerdict>& past_only);

std::string derive_order_text(const Scenario& s);
nlohmann::ordered_json derive_order_json(const Scenario& s);

std::string gtest_text(const GTestResult& r, const std::vector<std::string>& lhs, const std::vector<std::string>& rhs);
nlohmann::ordered_json gtest_json(const GTestResult& r, const std::vector<std::string>& lhs,
                                  const std::vector<std::string>& rhs);

}  // namespace freechoice::cli
