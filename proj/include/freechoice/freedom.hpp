#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freechoice/causal_order.hpp"
#include "freechoice/joint_distribution.hpp"

namespace freechoice {

enum class Criterion {
  /// Independent of every variable outside the causal future.
  NonFuture,
  /// Independent of the strict causal past only (too weak; kept for comparison).
  PastOnly,
};

/// Report name: "PaperDefinition" or "PastOnlyVariant".
const char* to_string(Criterion c);

struct DependenceWitness {
  Assignment subject_assignment;
  Assignment reference_assignment;
  Probability lhs;  // P(subject, reference)
  Probability rhs;  // P(subject) P(reference)
  Probability deviation;
};

struct FreedomVerdict {
  std::string subject;
  bool free = true;
  std::vector<std::string> reference_set;
  Criterion criterion = Criterion::NonFuture;
  std::optional<DependenceWitness> witness;  // present iff !free
};

/// `a` is free iff it is independent of the joint of non_future(a).
/// An empty reference set is vacuously free.
FreedomVerdict is_free(const JointDistribution& d, const CausalOrder& o, std::string_view a);

/// Same test against {w != a : w -> a} only.
FreedomVerdict is_free_past_only(const JointDistribution& d, const CausalOrder& o, std::string_view a);

/// One verdict per variable, in label order.
std::vector<FreedomVerdict> audit(const JointDistribution& d, const CausalOrder& o,
                                  Criterion criterion = Criterion::NonFuture);

/// P(a | other setting, its outcome, Z) = P(a) under bell_order(); a is "A" or "B".
bool check_bell_condition(const JointDistribution& d, const CausalOrder& o, std::string_view a);

}  // namespace freechoice
