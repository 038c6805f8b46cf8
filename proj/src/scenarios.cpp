#include "freechoice/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "freechoice/error.hpp"

namespace freechoice {
namespace {

std::vector<VariableSpec> bits(std::initializer_list<const char*> names) {
  std::vector<VariableSpec> out;
  for (const char* n : names) {
    out.push_back({n, 2});
  }
  return out;
}

std::vector<VariableSpec> bell_variables(int z_card) {
  auto vars = bits({"A", "B", "X", "Y"});
  vars.insert(vars.begin(), VariableSpec{"Z", z_card});
  return vars;
}

std::vector<std::string> names_of(const std::vector<VariableSpec>& vars) {
  std::vector<std::string> out;
  for (const auto& v : vars) {
    out.push_back(v.name);
  }
  return out;
}

// P(a,b,x,y) indexed ((a*2+b)*2+x)*2+y.
template <class T>
std::vector<T> settings_outcomes_table(const JointDistribution& d, const std::vector<T>& table) {
  for (const char* n : {"A", "B", "X", "Y"}) {
    if (!d.has_variable(n) || d.variables()[d.index_of(n)].cardinality != 2) {
      throw Error(ErrorCode::LabelMismatch, std::string("need binary variable ") + n);
    }
  }
  const std::size_t ia = d.index_of("A"), ib = d.index_of("B"), ix = d.index_of("X"), iy = d.index_of("Y");
  std::vector<T> out(16, T(0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto o = d.outcome_at(i);
    out[((o[ia] * 2 + o[ib]) * 2 + o[ix]) * 2 + o[iy]] += table[i];
  }
  return out;
}

template <class T>
T correlator_from(const std::vector<T>& abxy, int a, int b) {
  T mass(0), sum(0);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const T& p = abxy[((a * 2 + b) * 2 + x) * 2 + y];
      mass += p;
      if (x == y) {
        sum += p;
      } else {
        sum -= p;
      }
    }
  }
  if (mass == 0) {
    throw Error(ErrorCode::ZeroProbabilityEvent, "setting pair has probability 0");
  }
  return T(sum / mass);
}

template <class T>
T best_form(const std::vector<T>& abxy) {
  T e[2][2];
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      e[a][b] = correlator_from(abxy, a, b);
    }
  }
  const T total = e[0][0] + e[0][1] + e[1][0] + e[1][1];
  T best(0);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      T s = total - 2 * e[a][b];
      if (s < 0) {
        s = -s;
      }
      if (s > best) {
        best = s;
      }
    }
  }
  return best;
}

template <class T>
bool no_signalling_in(const std::vector<T>& abxy, double eps) {
  auto close = [eps](const T& u, const T& v) {
    if constexpr (std::is_same_v<T, double>) {
      return std::abs(u - v) <= eps;
    } else {
      return u == v;
    }
  };
  auto p = [&](int a, int b, int x, int y) { return abxy[((a * 2 + b) * 2 + x) * 2 + y]; };
  // P(X=0 | a, b) must not depend on b, and P(Y=0 | a, b) must not depend on a.
  for (int own = 0; own < 2; ++own) {
    T px[2], py[2];
    for (int remote = 0; remote < 2; ++remote) {
      const T mass_x = p(own, remote, 0, 0) + p(own, remote, 0, 1) + p(own, remote, 1, 0) + p(own, remote, 1, 1);
      const T mass_y = p(remote, own, 0, 0) + p(remote, own, 0, 1) + p(remote, own, 1, 0) + p(remote, own, 1, 1);
      if (mass_x == 0 || mass_y == 0) {
        return false;
      }
      px[remote] = T((p(own, remote, 0, 0) + p(own, remote, 0, 1)) / mass_x);
      py[remote] = T((p(remote, own, 0, 0) + p(remote, own, 1, 0)) / mass_y);
    }
    if (!close(px[0], px[1]) || !close(py[0], py[1])) {
      return false;
    }
  }
  return true;
}

}  // namespace

const JointDistribution& Scenario::require_distribution() const {
  if (!distribution) {
    throw Error(ErrorCode::MissingDistribution, "scenario '" + name + "' has no distribution");
  }
  return *distribution;
}

Scenario make_scenario(std::string name, std::vector<VariableSpec> variables,
                       std::optional<JointDistribution> distribution, CausalOrder order,
                       std::optional<std::vector<SpacetimeEvent>> embedding) {
  if (distribution && distribution->variables() != variables) {
    throw Error(ErrorCode::ScenarioMismatch, "distribution variables differ from scenario variables");
  }
  const auto names = names_of(variables);
  if (names.size() != order.labels().size() ||
      !std::all_of(names.begin(), names.end(), [&](const auto& n) { return order.has_label(n); })) {
    throw Error(ErrorCode::LabelMismatch, "order labels differ from scenario variables");
  }
  order = order.reordered(names);
  if (embedding && !(derive_order(*embedding) == order)) {
    throw Error(ErrorCode::ScenarioMismatch, "order is not the one derived from the embedding");
  }
  return Scenario{std::move(name), std::move(variables), std::move(distribution), std::move(order),
                  std::move(embedding)};
}

Scenario make_scenario(std::string name, JointDistribution distribution, CausalOrder order) {
  auto vars = distribution.variables();
  return make_scenario(std::move(name), std::move(vars), std::move(distribution), std::move(order));
}

Scenario single_measurement() {
  auto vars = bits({"Z", "A", "X"});
  std::vector<Entry> entries;
  for (int z = 0; z < 2; ++z) {
    for (int a = 0; a < 2; ++a) {
      entries.push_back({{z, a, z ^ a}, Probability::exact(1, 4)});
    }
  }
  auto order = CausalOrder::from_edges({"Z", "A", "X"}, {{"Z", "X"}, {"A", "X"}});
  return make_scenario("single_measurement", make_joint(vars, entries), std::move(order));
}

Scenario correlated_settings() {
  std::vector<Entry> entries;
  for (int z = 0; z < 2; ++z) {
    for (int s = 0; s < 2; ++s) {
      entries.push_back({{z, s, s, s, s}, Probability::exact(1, 4)});
    }
  }
  return make_scenario("correlated_settings", make_joint(bell_variables(2), entries), bell_order());
}

Scenario pr_box(bool include_trivial_z) {
  std::vector<Entry> entries;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int x = 0; x < 2; ++x) {
        const int y = x ^ (a & b);
        Outcome o{a, b, x, y};
        if (include_trivial_z) {
          o.insert(o.begin(), 0);
        }
        entries.push_back({std::move(o), Probability::exact(1, 8)});
      }
    }
  }
  if (include_trivial_z) {
    return make_scenario("pr_box", make_joint(bell_variables(1), entries), bell_order());
  }
  return make_scenario("pr_box", make_joint(bits({"A", "B", "X", "Y"}), entries),
                       bell_order().restricted_to({"A", "B", "X", "Y"}));
}

Scenario singlet(std::array<double, 2> angles_a, std::array<double, 2> angles_b) {
  for (double th : {angles_a[0], angles_a[1], angles_b[0], angles_b[1]}) {
    if (!std::isfinite(th)) {
      throw Error(ErrorCode::InvalidProbability, "singlet angles must be finite");
    }
  }
  std::vector<double> table(16, 0.0);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double e = -std::cos(angles_a[a] - angles_b[b]);
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const double sxy = (x == y) ? 1.0 : -1.0;
          table[((a * 2 + b) * 2 + x) * 2 + y] = 0.25 * (1.0 + sxy * e) / 4.0;
        }
      }
    }
  }
  return make_scenario("singlet", JointDistribution::from_dense(bell_variables(1), std::move(table)),
                       bell_order());
}

Scenario local_hidden_variable(int lambda_card, const std::vector<std::vector<int>>& response_x,
                               const std::vector<std::vector<int>>& response_y,
                               const std::vector<mpq_class>& lambda_probs) {
  if (lambda_card < 1) {
    throw Error(ErrorCode::BadResponseMap, "lambda cardinality must be >= 1");
  }
  auto check = [lambda_card](const std::vector<std::vector<int>>& r, const char* which) {
    if (r.size() != 2) {
      throw Error(ErrorCode::BadResponseMap, std::string(which) + " needs one row per setting");
    }
    for (const auto& row : r) {
      if (row.size() != static_cast<std::size_t>(lambda_card)) {
        throw Error(ErrorCode::BadResponseMap, std::string(which) + " needs one entry per lambda");
      }
      for (int v : row) {
        if (v != 0 && v != 1) {
          throw Error(ErrorCode::BadResponseMap, std::string(which) + " outcomes must be 0 or 1");
        }
      }
    }
  };
  check(response_x, "response_x");
  check(response_y, "response_y");
  if (lambda_probs.size() != static_cast<std::size_t>(lambda_card)) {
    throw Error(ErrorCode::BadResponseMap, "one probability per lambda value is required");
  }
  mpq_class total(0);
  for (const auto& p : lambda_probs) {
    if (sgn(p) < 0) {
      throw Error(ErrorCode::NegativeProbability, rational_string(p));
    }
    total += p;
  }
  if (total != 1) {
    throw Error(ErrorCode::NotNormalized, "lambda probabilities sum to " + rational_string(total));
  }
  std::vector<Entry> entries;
  for (int z = 0; z < lambda_card; ++z) {
    if (lambda_probs[z] == 0) {
      continue;
    }
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        entries.push_back({{z, a, b, response_x[a][z], response_y[b][z]},
                           Probability::exact(mpq_class(lambda_probs[z] / 4))});
      }
    }
  }
  return make_scenario("local_hidden_variable", make_joint(bell_variables(lambda_card), entries),
                       bell_order());
}

std::vector<Scenario> builtin_scenarios() {
  constexpr double pi = 3.14159265358979323846;
  return {single_measurement(),
          correlated_settings(),
          pr_box(true),
          pr_box(false),
          singlet({0.0, pi / 2}, {pi / 4, 3 * pi / 4}),
          local_hidden_variable(2, {{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}, {mpq_class(1, 2), mpq_class(1, 2)})};
}

double correlator(const JointDistribution& d, int a, int b) {
  if (a < 0 || a > 1 || b < 0 || b > 1) {
    throw Error(ErrorCode::OutOfAlphabet, "settings are binary");
  }
  if (d.mode() == Mode::Exact) {
    return correlator_from(settings_outcomes_table(d, d.exact_table()), a, b).get_d();
  }
  return correlator_from(settings_outcomes_table(d, d.approx_table()), a, b);
}

ChshValue chsh(const JointDistribution& d) {
  ChshValue out;
  out.canonical = correlator(d, 0, 0) + correlator(d, 0, 1) + correlator(d, 1, 0) - correlator(d, 1, 1);
  if (d.mode() == Mode::Exact) {
    out.exact = best_form(settings_outcomes_table(d, d.exact_table()));
    out.value = out.exact->get_d();
  } else {
    out.value = best_form(settings_outcomes_table(d, d.approx_table()));
  }
  return out;
}

bool is_no_signalling(const JointDistribution& d) {
  if (d.mode() == Mode::Exact) {
    return no_signalling_in(settings_outcomes_table(d, d.exact_table()), 0.0);
  }
  return no_signalling_in(settings_outcomes_table(d, d.approx_table()), d.epsilon());
}

}  // namespace freechoice
