#include "freechoice/freedom.hpp"

#include <algorithm>

#include "freechoice/error.hpp"

namespace freechoice {
namespace {

void check_labels(const JointDistribution& d, const CausalOrder& o) {
  const auto names = d.names();
  if (names.size() != o.labels().size() ||
      !std::all_of(names.begin(), names.end(), [&](const auto& n) { return o.has_label(n); })) {
    throw Error(ErrorCode::LabelMismatch, "order labels differ from distribution variables");
  }
}

FreedomVerdict verdict_against(const JointDistribution& d, std::string_view a,
                               std::vector<std::string> reference, Criterion criterion) {
  FreedomVerdict v;
  v.subject = std::string(a);
  v.criterion = criterion;
  v.reference_set = std::move(reference);
  if (v.reference_set.empty()) {
    return v;
  }
  const std::vector<std::string> subject{v.subject};
  v.free = is_independent(d, subject, v.reference_set);
  if (!v.free) {
    auto dev = max_factorization_deviation(d, subject, v.reference_set);
    v.witness = DependenceWitness{std::move(dev.lhs_assignment), std::move(dev.rhs_assignment),
                                  std::move(dev.joint), std::move(dev.product), std::move(dev.deviation)};
  }
  return v;
}

}  // namespace

const char* to_string(Criterion c) {
  return c == Criterion::NonFuture ? "PaperDefinition" : "PastOnlyVariant";
}

FreedomVerdict is_free(const JointDistribution& d, const CausalOrder& o, std::string_view a) {
  check_labels(d, o);
  d.index_of(a);
  return verdict_against(d, a, o.non_future(a), Criterion::NonFuture);
}

FreedomVerdict is_free_past_only(const JointDistribution& d, const CausalOrder& o, std::string_view a) {
  check_labels(d, o);
  d.index_of(a);
  return verdict_against(d, a, o.strict_past(a), Criterion::PastOnly);
}

std::vector<FreedomVerdict> audit(const JointDistribution& d, const CausalOrder& o, Criterion criterion) {
  check_labels(d, o);
  std::vector<FreedomVerdict> out;
  out.reserve(o.labels().size());
  for (const auto& label : o.labels()) {
    out.push_back(criterion == Criterion::NonFuture ? is_free(d, o, label) : is_free_past_only(d, o, label));
  }
  return out;
}

bool check_bell_condition(const JointDistribution& d, const CausalOrder& o, std::string_view a) {
  if (!(o == bell_order())) {
    throw Error(ErrorCode::WrongOrderShape, "order is not the two-party Bell order");
  }
  if (a != "A" && a != "B") {
    throw Error(ErrorCode::WrongOrderShape, "Bell condition is stated for settings A and B");
  }
  return is_free(d, o, a).free;
}

}  // namespace freechoice
