#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freechoice/probability.hpp"

namespace freechoice {

inline constexpr double kDefaultEpsilon = 1e-9;

/// True for names matching [A-Za-z][A-Za-z0-9_]*.
bool is_identifier(std::string_view name);

/// A finite random variable with alphabet {0, ..., cardinality-1}.
struct VariableSpec {
  std::string name;
  int cardinality = 1;

  friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

using Outcome = std::vector<int>;
/// Ordered partial assignment name -> value.
using Assignment = std::vector<std::pair<std::string, int>>;
using Entry = std::pair<Outcome, Probability>;

enum class Mode { Exact, Approx };

/// Dense, immutable probability table over a tuple of finite variables.
///
/// Outcomes are indexed row-major with the first variable most significant,
/// so increasing table index is lexicographic order over outcome tuples.
/// In Exact mode entries are rationals and every comparison is exact; in
/// Approx mode entries are doubles compared with a per-entry tolerance.
class JointDistribution {
 public:
  /// Builds a distribution from sparse entries; missing tuples are zero.
  static JointDistribution make(std::vector<VariableSpec> variables,
                                const std::vector<Entry>& entries, Mode mode = Mode::Exact,
                                double epsilon = kDefaultEpsilon);

  static JointDistribution from_dense(std::vector<VariableSpec> variables,
                                      std::vector<mpq_class> table);
  static JointDistribution from_dense(std::vector<VariableSpec> variables,
                                      std::vector<double> table,
                                      double epsilon = kDefaultEpsilon);

  const std::vector<VariableSpec>& variables() const { return variables_; }
  std::vector<std::string> names() const;
  bool has_variable(std::string_view name) const;
  /// Position of a variable; throws UnknownVariable.
  std::size_t index_of(std::string_view name) const;

  Mode mode() const { return mode_; }
  double epsilon() const { return epsilon_; }
  std::size_t size() const { return table_size_; }

  Probability at(const Outcome& outcome) const;
  Probability at_index(std::size_t index) const;
  double value_at(std::size_t index) const;
  Outcome outcome_at(std::size_t index) const;
  std::size_t index_of_outcome(const Outcome& outcome) const;

  /// Raw tables; exactly one is non-empty depending on mode().
  const std::vector<mpq_class>& exact_table() const { return exact_; }
  const std::vector<double>& approx_table() const { return approx_; }

  friend bool operator==(const JointDistribution& a, const JointDistribution& b);

 private:
  JointDistribution() = default;
  void set_layout(std::vector<VariableSpec> variables);

  std::vector<VariableSpec> variables_;
  std::vector<std::size_t> strides_;
  std::size_t table_size_ = 1;
  Mode mode_ = Mode::Exact;
  double epsilon_ = kDefaultEpsilon;
  std::vector<mpq_class> exact_;
  std::vector<double> approx_;
};

inline JointDistribution make_joint(std::vector<VariableSpec> variables,
                                    const std::vector<Entry>& entries, Mode mode = Mode::Exact,
                                    double epsilon = kDefaultEpsilon) {
  return JointDistribution::make(std::move(variables), entries, mode, epsilon);
}

/// Marginal over `keep`, in the given order.
JointDistribution marginalize(const JointDistribution& d, const std::vector<std::string>& keep);

/// Distribution of the remaining variables given a partial assignment.
JointDistribution condition(const JointDistribution& d, const Assignment& given);

/// P(sigma, tau) = P(sigma) P(tau) for every joint assignment of s and t.
bool is_independent(const JointDistribution& d, const std::vector<std::string>& s,
                    const std::vector<std::string>& t);

JointDistribution product(const JointDistribution& d1, const JointDistribution& d2);

/// Cell with the largest |P(sigma,tau) - P(sigma)P(tau)|.
struct FactorizationDeviation {
  Assignment lhs_assignment;
  Assignment rhs_assignment;
  Probability joint;    // P(sigma, tau)
  Probability product;  // P(sigma) P(tau)
  Probability deviation;
  double value = 0.0;
};

/// Lexicographically first maximizer over (sigma, tau).
FactorizationDeviation max_factorization_deviation(const JointDistribution& d,
                                                   const std::vector<std::string>& s,
                                                   const std::vector<std::string>& t);

/// Probability of a partial assignment (marginal event).
Probability event_probability(const JointDistribution& d, const Assignment& event);

}  // namespace freechoice
