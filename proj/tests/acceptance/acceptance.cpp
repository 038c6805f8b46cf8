// Acceptance checks, one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails. Tolerances are fixed below.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "freechoice/cli.hpp"
#include "freechoice/dsl.hpp"
#include "freechoice/error.hpp"
#include "freechoice/freedom.hpp"
#include "freechoice/sampling.hpp"
#include "freechoice/scenarios.hpp"
#include "freechoice/spacetime.hpp"
#include "test_support.hpp"

using namespace freechoice;

namespace {

constexpr double kSingletTolerance = 1e-6;
constexpr double kClassicalSlack = 1e-9;
constexpr double kAlpha = 0.01;
constexpr double kMaxFalseRejectionRate = 0.025;
constexpr double kBoundaryGuard = 1e-3;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string file_text(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Verdict counterexample_separation() {
  const Scenario s = correlated_settings();
  const auto& d = s.require_distribution();
  std::string detail;
  bool pass = true;
  for (const char* subject : {"A", "B"}) {
    const auto variant = is_free_past_only(d, s.order, subject);
    const auto def = is_free(d, s.order, subject);
    pass = pass && variant.free && !def.free && def.witness.has_value();
    const mpq_class expected(1, 4);
    const bool exact = def.witness && def.witness->deviation.is_exact() && def.witness->deviation.rational() == expected;
    pass = pass && exact;
    detail += std::string(subject) + ": past-only " + (variant.free ? "free" : "not free") + ", definition " +
              (def.free ? "free" : "not free") + ", witness deviation " +
              (def.witness ? def.witness->deviation.to_string() : "none") + " (required 1/4)";
    if (subject[0] == 'A') detail += "; ";
  }
  return {pass, detail};
}

Verdict bell_condition() {
  const auto o = bell_order();
  const auto nf = o.non_future("A");
  const bool set_ok = nf == std::vector<std::string>{"Z", "B", "Y"};
  const auto d = pr_box(true).require_distribution();
  const bool a = is_free(d, o, "A").free, b = is_free(d, o, "B").free;
  std::string listed;
  for (const auto& n : nf) listed += (listed.empty() ? "" : ", ") + n;
  return {set_ok && a && b && d.mode() == Mode::Exact,
          "non_future(A) = {" + listed + "}, PR box A " + (a ? "free" : "not free") + ", B " + (b ? "free" : "not free")};
}

Verdict opening_paragraph() {
  const Scenario s = single_measurement();
  const auto& d = s.require_distribution();
  const bool free = is_free(d, s.order, "A").free;
  const bool indep = is_independent(d, {"A"}, {"Z", "X"});
  return {free && !indep && d.mode() == Mode::Exact,
          std::string("is_free(A) = ") + (free ? "true" : "false") + ", A independent of {Z, X} = " +
              (indep ? "true" : "false")};
}

Verdict independence_oracle() {
  std::mt19937_64 rng(1);
  int checked = 0, agree = 0, independent = 0;
  while (checked < 1000) {
    const auto d = checked % 4 == 0 ? testing::random_product(rng) : testing::random_exact(rng, 4, 3);
    if (d.variables().size() < 2) continue;
    const auto [lhs, rhs] = testing::random_disjoint_sets(rng, d.names());
    const bool want = testing::oracle_independent(d, lhs, rhs);
    agree += is_independent(d, lhs, rhs) == want;
    independent += want;
    ++checked;
  }
  return {agree == checked, std::to_string(agree) + "/" + std::to_string(checked) + " agree (" +
                                std::to_string(independent) + " independent cases)"};
}

Verdict closure_oracle() {
  std::mt19937_64 rng(2);
  const int trials = 500;
  int agree = 0, preorders = 0;
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("L" + std::to_string(i));
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    std::vector<Edge> edges;
    const std::size_t m = rng() % (2 * n + 1);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t a = rng() % n, b = rng() % n;
      idx.emplace_back(a, b);
      edges.emplace_back(labels[a], labels[b]);
    }
    const auto o = CausalOrder::from_edges(labels, edges);
    const auto want = testing::fixed_point_closure(n, idx);
    bool same = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) same = same && o.precedes(labels[a], labels[b]) == want[a][b];
    agree += same;
    preorders += testing::is_reflexive_and_transitive(o);
  }
  return {agree == trials && preorders == trials, std::to_string(agree) + "/" + std::to_string(trials) +
                                                      " match the oracle, " + std::to_string(preorders) +
                                                      " reflexive and transitive"};
}

Verdict frame_invariance() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-10.0, 10.0), vel(-0.9, 0.9);
  const int trials = 500;
  int accepted = 0, agree = 0;
  while (accepted < trials) {
    const std::size_t dim = 1 + rng() % 3;
    const std::size_t n = 1 + rng() % 8;
    std::vector<SpacetimeEvent> events;
    for (std::size_t i = 0; i < n; ++i) {
      SpacetimeEvent e{"E" + std::to_string(i), coord(rng), {}};
      for (std::size_t k = 0; k < dim; ++k) e.x.push_back(coord(rng));
      events.push_back(std::move(e));
    }
    bool clear = true;
    for (std::size_t i = 0; i < n && clear; ++i)
      for (std::size_t j = i + 1; j < n && clear; ++j)
        clear = std::abs(squared_interval(events[i], events[j])) > kBoundaryGuard;
    if (!clear) continue;
    ++accepted;
    agree += derive_order(boost(events, vel(rng), rng() % dim)) == derive_order(events);
  }
  const std::vector<SpacetimeEvent> pair{{"A", 0.0, {-1.0}}, {"B", 0.1, {1.0}}};
  const auto moved = boost(pair, 0.5, 0);
  const bool flips = pair[1].t - pair[0].t > 0 && moved[1].t - moved[0].t < 0;
  const bool unordered =
      derive_order(pair).mutually_unordered("A", "B") && derive_order(moved).mutually_unordered("A", "B");
  std::ostringstream detail;
  detail << agree << "/" << accepted << " invariant; pair dt " << pair[1].t - pair[0].t << " -> "
         << moved[1].t - moved[0].t << ", unordered in both frames: " << (unordered ? "yes" : "no");
  return {agree == accepted && flips && unordered, detail.str()};
}

Verdict chsh_values() {
  constexpr double pi = std::numbers::pi;
  const double singlet_value = chsh(singlet({0.0, pi / 2}, {pi / 4, 3 * pi / 4}).require_distribution()).value;
  const auto pr = chsh(pr_box(true).require_distribution());
  const bool pr_ok = pr.exact && *pr.exact == 4;
  std::mt19937_64 rng(4);
  double worst = -1e9;
  for (int t = 0; t < 200; ++t) {
    const int card = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<int>> rx(2, std::vector<int>(card)), ry(2, std::vector<int>(card));
    for (auto* r : {&rx, &ry})
      for (auto& row : *r)
        for (auto& v : row) v = static_cast<int>(rng() % 2);
    std::vector<mpq_class> probs(card);
    mpq_class total(0);
    for (auto& p : probs) {
      p = 1 + rng() % 7;
      total += p;
    }
    for (auto& p : probs) p /= total;
    worst = std::max(worst, chsh(local_hidden_variable(card, rx, ry, probs).require_distribution()).value);
  }
  std::ostringstream detail;
  detail.precision(12);
  detail << "singlet " << singlet_value << " (|diff| " << std::abs(singlet_value - 2 * std::numbers::sqrt2)
         << "), PR box " << (pr.exact ? pr.exact->get_str() : "inexact") << ", max over 200 local models " << worst;
  return {std::abs(singlet_value - 2 * std::numbers::sqrt2) <= kSingletTolerance && pr_ok &&
              worst <= 2.0 + kClassicalSlack,
          detail.str()};
}

Verdict calibration() {
  const auto a = make_joint({{"A", 3}}, {{{0}, Probability::exact(1, 2)},
                                         {{1}, Probability::exact(1, 3)},
                                         {{2}, Probability::exact(1, 6)}});
  const auto b = make_joint({{"B", 2}}, {{{0}, Probability::exact(1, 4)}, {{1}, Probability::exact(3, 4)}});
  const auto null_model = product(a, b);
  const int null_runs = 200;
  int false_rejections = 0;
  for (int seed = 0; seed < null_runs; ++seed) {
    false_rejections += g_test(sample(null_model, 10000, 1000 + seed), {"A"}, {"B"}, {kAlpha}).reject_at.at(kAlpha);
  }
  const auto corr = correlated_settings().require_distribution();
  const int power_runs = 100;
  int detections = 0;
  for (int seed = 0; seed < power_runs; ++seed) {
    detections += g_test(sample(corr, 10000, 5000 + seed), {"A"}, {"B"}, {kAlpha}).reject_at.at(kAlpha);
  }
  const double rate = static_cast<double>(false_rejections) / null_runs;
  return {rate <= kMaxFalseRejectionRate && detections == power_runs,
          "null rejections " + std::to_string(false_rejections) + "/" + std::to_string(null_runs) +
              ", correlated settings rejected " + std::to_string(detections) + "/" + std::to_string(power_runs)};
}

Verdict determinism_and_round_trip(const std::filesystem::path& scratch) {
  std::filesystem::create_directories(scratch);
  const auto scn = scratch / "pr_box.scn";
  std::ofstream(scn, std::ios::binary) << export_scenario(pr_box(true));
  std::ostringstream sink_out, sink_err;
  const auto f1 = (scratch / "run1.csv").string(), f2 = (scratch / "run2.csv").string();
  const int c1 = cli::run({"sample", scn.string(), "--n", "5000", "--seed", "99", "--out", f1}, sink_out, sink_err);
  const int c2 = cli::run({"sample", scn.string(), "--n", "5000", "--seed", "99", "--out", f2, "--threads", "4"},
                          sink_out, sink_err);
  const bool identical = c1 == 0 && c2 == 0 && file_text(f1) == file_text(f2) && !file_text(f1).empty();

  int round_trips = 0;
  const auto builtins = builtin_scenarios();
  for (const auto& s : builtins) {
    try {
      round_trips += parse_scenario(export_scenario(s)) == s;
    } catch (const std::exception&) {
    }
  }

  std::ostringstream demo_out, demo_err;
  const int demo_code = cli::run({"demo", "counterexample"}, demo_out, demo_err);
  const std::string text = demo_out.str();
  const bool demo_ok = demo_code == 0 &&
                       text.find("PaperDefinition: A not free") != std::string::npos &&
                       text.find("PastOnlyVariant: A free") != std::string::npos;
  return {identical && round_trips == static_cast<int>(builtins.size()) && demo_ok,
          std::string("sample files ") + (identical ? "identical" : "differ") + ", round trips " +
              std::to_string(round_trips) + "/" + std::to_string(builtins.size()) + ", demo exit " +
              std::to_string(demo_code) + (demo_ok ? " with both verdict lines" : " missing verdict lines")};
}

}  // namespace

int main() {
  const std::filesystem::path scratch = std::filesystem::path(FREECHOICE_BINARY_DIR) / "acceptance_scratch";
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"counterexample separation", counterexample_separation},
      {"Bell condition", bell_condition},
      {"outcome dependence is allowed", opening_paragraph},
      {"independence oracle equivalence", independence_oracle},
      {"closure oracle equivalence", closure_oracle},
      {"frame invariance", frame_invariance},
      {"CHSH values", chsh_values},
      {"statistical calibration", calibration},
      {"determinism and round trip", [&] { return determinism_and_round_trip(scratch); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += !r.pass;
    std::printf("criterion %zu %-34s %s  %s\n", i + 1, criteria[i].first, r.pass ? "PASS" : "FAIL", r.detail.c_str());
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
