#include "freechoice/joint_distribution.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

#include "freechoice/error.hpp"

namespace freechoice {
namespace {

double approx_abs(double x) { return std::abs(x); }
mpq_class approx_abs(const mpq_class& x) { return abs(x); }

bool nearly_equal(const mpq_class& a, const mpq_class& b, double /*eps*/) { return a == b; }
bool nearly_equal(double a, double b, double eps) { return std::abs(a - b) <= eps; }

// Calls fn(index, outcome) for every outcome in lexicographic order.
template <class Fn>
void for_each_outcome(const std::vector<VariableSpec>& vars, std::size_t count, Fn&& fn) {
  Outcome outcome(vars.size(), 0);
  for (std::size_t index = 0; index < count; ++index) {
    fn(index, outcome);
    for (std::size_t k = vars.size(); k-- > 0;) {
      if (++outcome[k] < vars[k].cardinality) {
        break;
      }
      outcome[k] = 0;
    }
  }
}

std::vector<std::size_t> resolve(const JointDistribution& d, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::DuplicateVariable, n);
    }
    idx.push_back(d.index_of(n));
  }
  return idx;
}

std::vector<VariableSpec> pick(const JointDistribution& d, const std::vector<std::size_t>& idx) {
  std::vector<VariableSpec> out;
  out.reserve(idx.size());
  for (auto i : idx) {
    out.push_back(d.variables()[i]);
  }
  return out;
}

// Sums the table onto the variables at `idx` (in that order).
template <class T>
std::vector<T> marginal_table(const JointDistribution& d, const std::vector<T>& table,
                              const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> strides(idx.size(), 1);
  std::size_t size = 1;
  for (std::size_t k = idx.size(); k-- > 0;) {
    strides[k] = size;
    size *= static_cast<std::size_t>(d.variables()[idx[k]].cardinality);
  }
  std::vector<T> out(size, T(0));
  for_each_outcome(d.variables(), table.size(), [&](std::size_t i, const Outcome& o) {
    std::size_t target = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      target += static_cast<std::size_t>(o[idx[k]]) * strides[k];
    }
    out[target] += table[i];
  });
  return out;
}

std::size_t alphabet_size(const JointDistribution& d, const std::vector<std::size_t>& idx) {
  std::size_t size = 1;
  for (auto i : idx) {
    size *= static_cast<std::size_t>(d.variables()[i].cardinality);
  }
  return size;
}

Assignment decode(const JointDistribution& d, const std::vector<std::size_t>& idx, std::size_t code) {
  Assignment out(idx.size());
  for (std::size_t k = idx.size(); k-- > 0;) {
    const auto& v = d.variables()[idx[k]];
    out[k] = {v.name, static_cast<int>(code % static_cast<std::size_t>(v.cardinality))};
    code /= static_cast<std::size_t>(v.cardinality);
  }
  return out;
}

struct SetPair {
  std::vector<std::size_t> s;
  std::vector<std::size_t> t;
};

SetPair resolve_disjoint(const JointDistribution& d, const std::vector<std::string>& s,
                         const std::vector<std::string>& t) {
  if (s.empty() || t.empty()) {
    throw Error(ErrorCode::EmptyKeepSet, "independence sets must be nonempty");
  }
  SetPair p{resolve(d, s), resolve(d, t)};
  for (auto i : p.s) {
    if (std::find(p.t.begin(), p.t.end(), i) != p.t.end()) {
      throw Error(ErrorCode::OverlappingSets, d.variables()[i].name);
    }
  }
  return p;
}

// Marginals needed to check P(sigma,tau) = P(sigma)P(tau); joint is indexed sigma * |tau| + tau.
template <class T>
struct Factorization {
  std::vector<T> joint;
  std::vector<T> left;
  std::vector<T> right;
};

template <class T>
Factorization<T> factorize(const JointDistribution& d, const std::vector<T>& table, const SetPair& p) {
  std::vector<std::size_t> both = p.s;
  both.insert(both.end(), p.t.begin(), p.t.end());
  return {marginal_table(d, table, both), marginal_table(d, table, p.s), marginal_table(d, table, p.t)};
}

template <class T>
bool factorizes(const Factorization<T>& f, double eps) {
  const std::size_t nt = f.right.size();
  for (std::size_t i = 0; i < f.left.size(); ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      if (!nearly_equal(f.joint[i * nt + j], T(f.left[i] * f.right[j]), eps)) {
        return false;
      }
    }
  }
  return true;
}

template <class T>
std::pair<std::size_t, std::size_t> worst_cell(const Factorization<T>& f) {
  const std::size_t nt = f.right.size();
  std::pair<std::size_t, std::size_t> best{0, 0};
  T best_dev(-1);
  for (std::size_t i = 0; i < f.left.size(); ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      T dev = approx_abs(T(f.joint[i * nt + j] - f.left[i] * f.right[j]));
      if (dev > best_dev) {
        best_dev = dev;
        best = {i, j};
      }
    }
  }
  return best;
}

}  // namespace

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) {
    return false;
  }
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void JointDistribution::set_layout(std::vector<VariableSpec> variables) {
  std::unordered_set<std::string> seen;
  for (const auto& v : variables) {
    if (!is_identifier(v.name)) {
      throw Error(ErrorCode::InvalidVariable, "bad variable name '" + v.name + "'");
    }
    if (v.cardinality < 1) {
      throw Error(ErrorCode::InvalidVariable, v.name + " has cardinality < 1");
    }
    if (!seen.insert(v.name).second) {
      throw Error(ErrorCode::DuplicateVariable, v.name);
    }
  }
  variables_ = std::move(variables);
  strides_.assign(variables_.size(), 1);
  table_size_ = 1;
  for (std::size_t k = variables_.size(); k-- > 0;) {
    strides_[k] = table_size_;
    table_size_ *= static_cast<std::size_t>(variables_[k].cardinality);
  }
}

JointDistribution JointDistribution::make(std::vector<VariableSpec> variables,
                                          const std::vector<Entry>& entries, Mode mode,
                                          double epsilon) {
  JointDistribution d;
  d.set_layout(std::move(variables));
  std::vector<bool> filled(d.table_size_, false);
  std::vector<mpq_class> exact;
  std::vector<double> approx;
  if (mode == Mode::Exact) {
    exact.assign(d.table_size_, mpq_class(0));
  } else {
    approx.assign(d.table_size_, 0.0);
  }
  for (const auto& [outcome, p] : entries) {
    const std::size_t i = d.index_of_outcome(outcome);
    if (filled[i]) {
      throw Error(ErrorCode::DuplicateEntry, "outcome listed twice");
    }
    filled[i] = true;
    if (p.is_exact() != (mode == Mode::Exact)) {
      throw Error(ErrorCode::MixedMode, "entry precision does not match distribution mode");
    }
    if (mode == Mode::Exact) {
      exact[i] = p.rational();
    } else {
      approx[i] = p.value();
    }
  }
  if (mode == Mode::Exact) {
    return from_dense(d.variables_, std::move(exact));
  }
  return from_dense(d.variables_, std::move(approx), epsilon);
}

JointDistribution JointDistribution::from_dense(std::vector<VariableSpec> variables,
                                                std::vector<mpq_class> table) {
  JointDistribution d;
  d.set_layout(std::move(variables));
  if (table.size() != d.table_size_) {
    throw Error(ErrorCode::OutOfAlphabet, "table size does not match alphabets");
  }
  mpq_class sum(0);
  for (auto& q : table) {
    q.canonicalize();
    if (sgn(q) < 0) {
      throw Error(ErrorCode::NegativeProbability, rational_string(q));
    }
    sum += q;
  }
  if (sum != 1) {
    throw Error(ErrorCode::NotNormalized, "sum is " + rational_string(sum));
  }
  d.mode_ = Mode::Exact;
  d.exact_ = std::move(table);
  return d;
}

JointDistribution JointDistribution::from_dense(std::vector<VariableSpec> variables,
                                                std::vector<double> table, double epsilon) {
  JointDistribution d;
  d.set_layout(std::move(variables));
  if (table.size() != d.table_size_) {
    throw Error(ErrorCode::OutOfAlphabet, "table size does not match alphabets");
  }
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::InvalidProbability, "epsilon must be positive");
  }
  double sum = 0.0;
  for (auto& x : table) {
    x = Probability::approx(x).value();
    sum += x;
  }
  if (std::abs(sum - 1.0) > epsilon) {
    throw Error(ErrorCode::NotNormalized, "sum is " + std::to_string(sum));
  }
  d.mode_ = Mode::Approx;
  d.epsilon_ = epsilon;
  d.approx_ = std::move(table);
  return d;
}

std::vector<std::string> JointDistribution::names() const {
  std::vector<std::string> out;
  out.reserve(variables_.size());
  for (const auto& v : variables_) {
    out.push_back(v.name);
  }
  return out;
}

bool JointDistribution::has_variable(std::string_view name) const {
  return std::any_of(variables_.begin(), variables_.end(), [&](const auto& v) { return v.name == name; });
}

std::size_t JointDistribution::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) {
      return i;
    }
  }
  throw Error(ErrorCode::UnknownVariable, std::string(name));
}

std::size_t JointDistribution::index_of_outcome(const Outcome& outcome) const {
  if (outcome.size() != variables_.size()) {
    throw Error(ErrorCode::OutOfAlphabet, "outcome arity " + std::to_string(outcome.size()) +
                                              " != " + std::to_string(variables_.size()));
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < outcome.size(); ++k) {
    if (outcome[k] < 0 || outcome[k] >= variables_[k].cardinality) {
      throw Error(ErrorCode::OutOfAlphabet, variables_[k].name + "=" + std::to_string(outcome[k]));
    }
    index += static_cast<std::size_t>(outcome[k]) * strides_[k];
  }
  return index;
}

Outcome JointDistribution::outcome_at(std::size_t index) const {
  Outcome o(variables_.size());
  for (std::size_t k = 0; k < variables_.size(); ++k) {
    o[k] = static_cast<int>(index / strides_[k]);
    index %= strides_[k];
  }
  return o;
}

Probability JointDistribution::at(const Outcome& outcome) const { return at_index(index_of_outcome(outcome)); }

Probability JointDistribution::at_index(std::size_t index) const {
  if (mode_ == Mode::Exact) {
    return Probability::exact(exact_.at(index));
  }
  return Probability::approx(approx_.at(index));
}

double JointDistribution::value_at(std::size_t index) const {
  return mode_ == Mode::Exact ? exact_.at(index).get_d() : approx_.at(index);
}

bool operator==(const JointDistribution& a, const JointDistribution& b) {
  return a.variables_ == b.variables_ && a.mode_ == b.mode_ && a.epsilon_ == b.epsilon_ &&
         a.exact_ == b.exact_ && a.approx_ == b.approx_;
}

JointDistribution marginalize(const JointDistribution& d, const std::vector<std::string>& keep) {
  if (keep.empty()) {
    throw Error(ErrorCode::EmptyKeepSet, "marginalize needs at least one variable");
  }
  const auto idx = resolve(d, keep);
  auto vars = pick(d, idx);
  if (d.mode() == Mode::Exact) {
    return JointDistribution::from_dense(std::move(vars), marginal_table(d, d.exact_table(), idx));
  }
  return JointDistribution::from_dense(std::move(vars), marginal_table(d, d.approx_table(), idx),
                                       d.epsilon());
}

namespace {

template <class T>
std::vector<T> restricted(const JointDistribution& d, const std::vector<T>& table,
                          const std::vector<std::pair<std::size_t, int>>& fixed,
                          const std::vector<std::size_t>& rest, T& mass) {
  std::vector<T> out(alphabet_size(d, rest), T(0));
  std::vector<std::size_t> strides(rest.size(), 1);
  for (std::size_t k = rest.size(), s = 1; k-- > 0;) {
    strides[k] = s;
    s *= static_cast<std::size_t>(d.variables()[rest[k]].cardinality);
  }
  mass = T(0);
  for_each_outcome(d.variables(), table.size(), [&](std::size_t i, const Outcome& o) {
    for (const auto& [var, value] : fixed) {
      if (o[var] != value) {
        return;
      }
    }
    std::size_t target = 0;
    for (std::size_t k = 0; k < rest.size(); ++k) {
      target += static_cast<std::size_t>(o[rest[k]]) * strides[k];
    }
    out[target] += table[i];
    mass += table[i];
  });
  return out;
}

std::vector<std::pair<std::size_t, int>> resolve_assignment(const JointDistribution& d,
                                                            const Assignment& given) {
  std::vector<std::pair<std::size_t, int>> fixed;
  std::unordered_set<std::string> seen;
  for (const auto& [name, value] : given) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::DuplicateVariable, name);
    }
    const auto i = d.index_of(name);
    if (value < 0 || value >= d.variables()[i].cardinality) {
      throw Error(ErrorCode::OutOfAlphabet, name + "=" + std::to_string(value));
    }
    fixed.emplace_back(i, value);
  }
  return fixed;
}

}  // namespace

JointDistribution condition(const JointDistribution& d, const Assignment& given) {
  const auto fixed = resolve_assignment(d, given);
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < d.variables().size(); ++i) {
    if (std::none_of(fixed.begin(), fixed.end(), [&](const auto& f) { return f.first == i; })) {
      rest.push_back(i);
    }
  }
  auto vars = pick(d, rest);
  if (d.mode() == Mode::Exact) {
    mpq_class mass;
    auto table = restricted(d, d.exact_table(), fixed, rest, mass);
    if (mass == 0) {
      throw Error(ErrorCode::ZeroProbabilityEvent, "conditioning event has probability 0");
    }
    for (auto& q : table) {
      q /= mass;
    }
    return JointDistribution::from_dense(std::move(vars), std::move(table));
  }
  double mass = 0.0;
  auto table = restricted(d, d.approx_table(), fixed, rest, mass);
  if (mass <= 0.0) {
    throw Error(ErrorCode::ZeroProbabilityEvent, "conditioning event has probability 0");
  }
  for (auto& x : table) {
    x /= mass;
  }
  return JointDistribution::from_dense(std::move(vars), std::move(table), d.epsilon());
}

Probability event_probability(const JointDistribution& d, const Assignment& event) {
  const auto fixed = resolve_assignment(d, event);
  if (d.mode() == Mode::Exact) {
    mpq_class mass;
    restricted(d, d.exact_table(), fixed, {}, mass);
    return Probability::exact(mass);
  }
  double mass = 0.0;
  restricted(d, d.approx_table(), fixed, {}, mass);
  return Probability::approx(mass);
}

bool is_independent(const JointDistribution& d, const std::vector<std::string>& s,
                    const std::vector<std::string>& t) {
  const auto p = resolve_disjoint(d, s, t);
  if (d.mode() == Mode::Exact) {
    return factorizes(factorize(d, d.exact_table(), p), 0.0);
  }
  return factorizes(factorize(d, d.approx_table(), p), d.epsilon());
}

FactorizationDeviation max_factorization_deviation(const JointDistribution& d,
                                                   const std::vector<std::string>& s,
                                                   const std::vector<std::string>& t) {
  const auto p = resolve_disjoint(d, s, t);
  FactorizationDeviation out;
  if (d.mode() == Mode::Exact) {
    const auto f = factorize(d, d.exact_table(), p);
    const auto [i, j] = worst_cell(f);
    const mpq_class joint = f.joint[i * f.right.size() + j];
    const mpq_class prod = f.left[i] * f.right[j];
    const mpq_class dev = abs(joint - prod);
    out.lhs_assignment = decode(d, p.s, i);
    out.rhs_assignment = decode(d, p.t, j);
    out.joint = Probability::exact(joint);
    out.product = Probability::exact(prod);
    out.deviation = Probability::exact(dev);
    out.value = dev.get_d();
  } else {
    const auto f = factorize(d, d.approx_table(), p);
    const auto [i, j] = worst_cell(f);
    const double joint = f.joint[i * f.right.size() + j];
    const double prod = f.left[i] * f.right[j];
    out.lhs_assignment = decode(d, p.s, i);
    out.rhs_assignment = decode(d, p.t, j);
    out.joint = Probability::approx(joint);
    out.product = Probability::approx(prod);
    out.value = std::abs(joint - prod);
    out.deviation = Probability::approx(out.value);
  }
  return out;
}

JointDistribution product(const JointDistribution& d1, const JointDistribution& d2) {
  for (const auto& v : d2.variables()) {
    if (d1.has_variable(v.name)) {
      throw Error(ErrorCode::NameCollision, v.name);
    }
  }
  if (d1.mode() != d2.mode()) {
    throw Error(ErrorCode::MixedMode, "cannot multiply Exact and Approx distributions");
  }
  auto vars = d1.variables();
  vars.insert(vars.end(), d2.variables().begin(), d2.variables().end());
  const std::size_t n2 = d2.size();
  if (d1.mode() == Mode::Exact) {
    std::vector<mpq_class> table(d1.size() * n2);
    for (std::size_t i = 0; i < d1.size(); ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        table[i * n2 + j] = d1.exact_table()[i] * d2.exact_table()[j];
      }
    }
    return JointDistribution::from_dense(std::move(vars), std::move(table));
  }
  std::vector<double> table(d1.size() * n2);
  for (std::size_t i = 0; i < d1.size(); ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      table[i * n2 + j] = d1.approx_table()[i] * d2.approx_table()[j];
    }
  }
  return JointDistribution::from_dense(std::move(vars), std::move(table),
                                       std::max(d1.epsilon(), d2.epsilon()));
}

}  // namespace freechoice
