#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "freechoice/causal_order.hpp"
#include "freechoice/joint_distribution.hpp"
#include "freechoice/spacetime.hpp"

namespace freechoice {

/// Variables, optional distribution and causal order bundled under a name.
///
/// Invariants: order labels equal the variable names; the distribution (when
/// present) is over exactly `variables`; an embedding, when present, derives
/// `order`.
struct Scenario {
  std::string name;
  std::vector<VariableSpec> variables;
  std::optional<JointDistribution> distribution;
  CausalOrder order;
  std::optional<std::vector<SpacetimeEvent>> embedding;

  /// Throws MissingDistribution when absent.
  const JointDistribution& require_distribution() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Validates the Scenario invariants; order labels are re-sequenced to variable order.
Scenario make_scenario(std::string name, std::vector<VariableSpec> variables,
                       std::optional<JointDistribution> distribution, CausalOrder order,
                       std::optional<std::vector<SpacetimeEvent>> embedding = std::nullopt);
Scenario make_scenario(std::string name, JointDistribution distribution, CausalOrder order);

/// Z, A, X bits with Z->X, A->X; Z and A uniform and independent, X = Z xor A.
Scenario single_measurement();

/// Bell order; Z uniform, A = B a shared uniform bit independent of Z, X = A, Y = B.
Scenario correlated_settings();

/// Popescu-Rohrlich box with uniform settings. With include_trivial_z the
/// variables are Z(1), A, B, X, Y under bell_order(); otherwise A, B, X, Y
/// under its restriction.
Scenario pr_box(bool include_trivial_z = true);

/// Singlet correlations E(a,b) = -cos(theta_a - theta_b) with uniform settings
/// and a trivial Z; Approx mode.
Scenario singlet(std::array<double, 2> angles_a, std::array<double, 2> angles_b);

/// Deterministic local model: Z = lambda with the given distribution, uniform
/// independent settings, X = response_x[a][lambda], Y = response_y[b][lambda].
Scenario local_hidden_variable(int lambda_card, const std::vector<std::vector<int>>& response_x,
                               const std::vector<std::vector<int>>& response_y,
                               const std::vector<mpq_class>& lambda_probs);

/// Every built-in scenario with default parameters.
std::vector<Scenario> builtin_scenarios();

/// Correlator E(a,b) = sum_{x,y} (-1)^(x xor y) P(x,y | a,b); outcome 0 is +1, outcome 1 is -1.
/// Requires binary variables A, B, X, Y.
double correlator(const JointDistribution& d, int a, int b);

struct ChshValue {
  /// max over the four CHSH forms of |sum_{a,b} s_ab E(a,b)| with one s_ab = -1.
  double value = 0.0;
  /// E00 + E01 + E10 - E11.
  double canonical = 0.0;
  /// Exact `value` in Exact mode.
  std::optional<mpq_class> exact;
};

ChshValue chsh(const JointDistribution& d);

/// Outcome marginals do not depend on the remote setting, both directions.
bool is_no_signalling(const JointDistribution& d);

}  // namespace freechoice
