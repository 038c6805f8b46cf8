#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "freechoice/scenarios.hpp"

namespace freechoice {

struct SourcePos {
  int line = 1;
  int column = 1;
};

struct Diagnostic {
  enum class Kind { Syntax, Semantic };

  Kind kind = Kind::Syntax;
  SourcePos pos;
  std::string message;
  std::string hint;

  /// "<line>:<col>: syntax error: <message> (hint: <hint>)"
  std::string to_string() const;
};

/// Thrown by parse_scenario with every collected diagnostic (at most kMaxDiagnostics).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

inline constexpr std::size_t kMaxDiagnostics = 5;

/// Parses the scenario language:
///
///   file      = "scenario" STRING { statement } ;
///   statement = var | order | spacetime | dist ;
///   var       = "var" IDENT "{" "alphabet:" INT "}" ;
///   order     = "order" "{" edge { ";" edge } [";"] "}" ;
///   edge      = IDENT "->" IDENT ;
///   spacetime = "spacetime" "{" point { ";" point } [";"] "}" ;
///   point     = IDENT ":" "(" NUM { "," NUM } ")" ;    first NUM is t
///   dist      = "dist" "{" entry { entry } "}" ;
///   entry     = "(" assign { "," assign } ")" ":" prob ;
///   assign    = IDENT "=" INT ;
///   prob      = INT "/" INT | FLOAT ;
///
/// `#` comments run to end of line. Rationals give an Exact distribution;
/// any FLOAT makes the whole table Approx. Exactly one of order/spacetime is
/// required; dist is optional. An empty `order { }` is accepted.
Scenario parse_scenario(std::string_view text);

/// Scenario text that parses back to an equal Scenario.
std::string export_scenario(const Scenario& scenario);

struct ScenarioFile {
  std::string path;
  Scenario parsed;
  /// Declaration position of each variable and of the scenario name.
  std::map<std::string, SourcePos> source_span_map;
};

ScenarioFile parse_scenario_file(std::string path, std::string_view text);
/// Reads and parses; I/O failures raise std::runtime_error.
ScenarioFile load_scenario_file(const std::string& path);

}  // namespace freechoice
