#include <doctest.h>

#include <random>

#include "freechoice/error.hpp"
#include "freechoice/joint_distribution.hpp"
#include "freechoice/scenarios.hpp"
#include "test_support.hpp"

using namespace freechoice;
using freechoice::testing::brute_probability;

namespace {

JointDistribution uniform_bit(const std::string& name = "A") {
  return make_joint({{name, 2}}, {{{0}, Probability::exact(1, 2)}, {{1}, Probability::exact(1, 2)}});
}

JointDistribution correlated_bits() {
  return make_joint({{"A", 2}, {"B", 2}},
                    {{{0, 0}, Probability::exact(1, 2)}, {{1, 1}, Probability::exact(1, 2)}});
}

JointDistribution product_bits() { return product(uniform_bit("A"), uniform_bit("B")); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::UnknownDemo;
}

}  // namespace

TEST_CASE("make_joint") {
  SUBCASE("uniform bit") {
    const auto d = uniform_bit();
    CHECK(d.size() == 2);
    CHECK(d.at({0}) == Probability::exact(1, 2));
    CHECK(d.mode() == Mode::Exact);
  }
  SUBCASE("missing tuples are zero-filled") {
    const auto d = correlated_bits();
    CHECK(d.size() == 4);
    CHECK(d.at({0, 1}) == Probability::exact(0, 1));
    CHECK(d.at({1, 0}) == Probability::exact(0, 1));
  }
  SUBCASE("normalization failure reports the actual sum") {
    try {
      make_joint({{"A", 2}}, {{{0}, Probability::exact(1, 3)}});
      FAIL("expected NotNormalized");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotNormalized);
      CHECK(std::string(e.what()).find("1/3") != std::string::npos);
    }
  }
  SUBCASE("errors") {
    CHECK(code_of([] { make_joint({{"A", 2}, {"A", 2}}, {}); }) == ErrorCode::DuplicateVariable);
    CHECK(code_of([] { make_joint({{"A", 2}}, {{{2}, Probability::exact(1, 1)}}); }) == ErrorCode::OutOfAlphabet);
    CHECK(code_of([] { make_joint({{"A", 2}}, {{{0, 0}, Probability::exact(1, 1)}}); }) == ErrorCode::OutOfAlphabet);
    CHECK(code_of([] {
            make_joint({{"A", 2}}, {{{0}, Probability::exact(1, 2)}, {{1}, Probability::approx(0.5)}});
          }) == ErrorCode::MixedMode);
    CHECK(code_of([] { make_joint({{"A", 2}}, {{{0}, Probability::approx(1.0)}}, Mode::Exact); }) ==
          ErrorCode::MixedMode);
    CHECK(code_of([] {
            make_joint({{"A", 2}}, {{{0}, Probability::exact(1, 2)}, {{0}, Probability::exact(1, 2)}});
          }) == ErrorCode::DuplicateEntry);
    CHECK(code_of([] { JointDistribution::from_dense({{"A", 2}}, std::vector<mpq_class>{mpq_class(3, 2), mpq_class(-1, 2)}); }) ==
          ErrorCode::NegativeProbability);
    CHECK(code_of([] { make_joint({{"1A", 2}}, {}); }) == ErrorCode::InvalidVariable);
    CHECK(code_of([] { make_joint({{"A", 0}}, {}); }) == ErrorCode::InvalidVariable);
  }
  SUBCASE("approx mode normalizes within epsilon") {
    const auto d = make_joint({{"A", 2}}, {{{0}, Probability::approx(0.5)}, {{1}, Probability::approx(0.5 + 5e-10)}},
                              Mode::Approx);
    CHECK(d.mode() == Mode::Approx);
    CHECK(d.epsilon() == kDefaultEpsilon);
    CHECK(code_of([] {
            make_joint({{"A", 2}}, {{{0}, Probability::approx(0.5)}, {{1}, Probability::approx(0.5 + 1e-6)}},
                       Mode::Approx);
          }) == ErrorCode::NotNormalized);
  }
}

TEST_CASE("marginalize") {
  SUBCASE("symmetric marginal of correlated bits") {
    const auto m = marginalize(correlated_bits(), {"A"});
    CHECK(m.names() == std::vector<std::string>{"A"});
    CHECK(m.at({0}) == Probability::exact(1, 2));
    CHECK(m.at({1}) == Probability::exact(1, 2));
  }
  SUBCASE("keeping everything is the identity") {
    const auto d = correlated_bits();
    CHECK(marginalize(d, {"A", "B"}) == d);
  }
  SUBCASE("keep order is respected") {
    const auto d = make_joint({{"A", 2}, {"B", 3}}, {{{1, 2}, Probability::exact(1, 1)}});
    const auto m = marginalize(d, {"B", "A"});
    CHECK(m.variables() == std::vector<VariableSpec>{{"B", 3}, {"A", 2}});
    CHECK(m.at({2, 1}) == Probability::exact(1, 1));
  }
  SUBCASE("PR box onto (B,Y) is uniform") {
    const auto d = pr_box(true).require_distribution();
    const auto m = marginalize(d, {"B", "Y"});
    const auto b = d.index_of("B"), y = d.index_of("Y");
    for (int bv = 0; bv < 2; ++bv) {
      for (int yv = 0; yv < 2; ++yv) {
        // Oracle: scan all 16 rows.
        CHECK(brute_probability(d, {{b, bv}, {y, yv}}) == mpq_class(1, 4));
        CHECK(m.at({bv, yv}) == Probability::exact(1, 4));
      }
    }
  }
  SUBCASE("errors") {
    CHECK(code_of([] { marginalize(correlated_bits(), {}); }) == ErrorCode::EmptyKeepSet);
    CHECK(code_of([] { marginalize(correlated_bits(), {"C"}); }) == ErrorCode::UnknownVariable);
  }
}

TEST_CASE("condition") {
  SUBCASE("deterministic posterior") {
    const auto c = condition(correlated_bits(), {{"B", 0}});
    CHECK(c.names() == std::vector<std::string>{"A"});
    CHECK(c.at({0}) == Probability::exact(1, 1));
  }
  SUBCASE("independent bits are unaffected") {
    const auto c = condition(product_bits(), {{"B", 1}});
    CHECK(c.at({0}) == Probability::exact(1, 2));
    CHECK(c.at({1}) == Probability::exact(1, 2));
  }
  SUBCASE("PR box given B=1, Y=0") {
    const auto d = pr_box(false).require_distribution();
    const auto c = condition(d, {{"B", 1}, {"Y", 0}});
    CHECK(c.names() == std::vector<std::string>{"A", "X"});
    // Oracle: P(A=a, X=x, B=1, Y=0) / P(B=1, Y=0) by scanning rows.
    const auto a = d.index_of("A"), x = d.index_of("X"), b = d.index_of("B"), y = d.index_of("Y");
    const mpq_class given = brute_probability(d, {{b, 1}, {y, 0}});
    for (int av = 0; av < 2; ++av) {
      for (int xv = 0; xv < 2; ++xv) {
        const mpq_class expected = brute_probability(d, {{a, av}, {x, xv}, {b, 1}, {y, 0}}) / given;
        CHECK(c.at({av, xv}).rational() == expected);
      }
    }
    CHECK(c.at({0, 0}) == Probability::exact(1, 2));
    CHECK(c.at({1, 1}) == Probability::exact(1, 2));
    CHECK(c.at({0, 1}) == Probability::exact(0, 1));
  }
  SUBCASE("errors") {
    CHECK(code_of([] { condition(correlated_bits(), {{"A", 0}, {"B", 1}}); }) == ErrorCode::ZeroProbabilityEvent);
    CHECK(code_of([] { condition(correlated_bits(), {{"C", 0}}); }) == ErrorCode::UnknownVariable);
    CHECK(code_of([] { condition(correlated_bits(), {{"A", 5}}); }) == ErrorCode::OutOfAlphabet);
  }
}

TEST_CASE("is_independent") {
  CHECK_FALSE(is_independent(correlated_bits(), {"A"}, {"B"}));
  CHECK(is_independent(product_bits(), {"A"}, {"B"}));
  const auto pr = pr_box(false).require_distribution();
  CHECK(testing::oracle_independent(pr, {"A"}, {"B", "Y"}));
  CHECK(is_independent(pr, {"A"}, {"B", "Y"}));
  CHECK(code_of([] { is_independent(correlated_bits(), {"A"}, {"A", "B"}); }) == ErrorCode::OverlappingSets);
  CHECK(code_of([] { is_independent(correlated_bits(), {"A"}, {"Q"}); }) == ErrorCode::UnknownVariable);
}

TEST_CASE("approx independence uses the per-entry tolerance") {
  const double e = 1e-10;
  const auto d = make_joint({{"A", 2}, {"B", 2}},
                            {{{0, 0}, Probability::approx(0.25 + e)},
                             {{0, 1}, Probability::approx(0.25 - e)},
                             {{1, 0}, Probability::approx(0.25 - e)},
                             {{1, 1}, Probability::approx(0.25 + e)}},
                            Mode::Approx);
  CHECK(is_independent(d, {"A"}, {"B"}));
  const double big = 1e-3;
  const auto far = make_joint({{"A", 2}, {"B", 2}},
                              {{{0, 0}, Probability::approx(0.25 + big)},
                               {{0, 1}, Probability::approx(0.25 - big)},
                               {{1, 0}, Probability::approx(0.25 - big)},
                               {{1, 1}, Probability::approx(0.25 + big)}},
                              Mode::Approx);
  CHECK_FALSE(is_independent(far, {"A"}, {"B"}));
}

TEST_CASE("product") {
  SUBCASE("two uniform bits") {
    const auto d = product_bits();
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(d.at_index(i) == Probability::exact(1, 4));
    }
  }
  SUBCASE("point mass extension") {
    const auto unit = make_joint({{"K", 1}}, {{{0}, Probability::exact(1, 1)}});
    const auto d = product(correlated_bits(), unit);
    CHECK(d.size() == 4);
    CHECK(d.at({0, 0, 0}) == Probability::exact(1, 2));
    CHECK(marginalize(d, {"A", "B"}) == correlated_bits());
  }
  SUBCASE("uniform times biased") {
    const auto biased = make_joint({{"B", 2}}, {{{0}, Probability::exact(1, 3)}, {{1}, Probability::exact(2, 3)}});
    const auto d = product(uniform_bit("A"), biased);
    CHECK(d.at({0, 0}) == Probability::exact(1, 6));
    CHECK(d.at({0, 1}) == Probability::exact(1, 3));
    CHECK(d.at({1, 0}) == Probability::exact(1, 6));
    CHECK(d.at({1, 1}) == Probability::exact(1, 3));
  }
  SUBCASE("errors") {
    CHECK(code_of([] { product(uniform_bit("A"), uniform_bit("A")); }) == ErrorCode::NameCollision);
    const auto approx = make_joint({{"B", 1}}, {{{0}, Probability::approx(1.0)}}, Mode::Approx);
    CHECK(code_of([&] { product(uniform_bit("A"), approx); }) == ErrorCode::MixedMode);
  }
}

TEST_CASE("max_factorization_deviation") {
  SUBCASE("correlated bits") {
    const auto w = max_factorization_deviation(correlated_bits(), {"A"}, {"B"});
    CHECK(w.lhs_assignment == Assignment{{"A", 0}});
    CHECK(w.rhs_assignment == Assignment{{"B", 0}});
    CHECK(w.deviation == Probability::exact(1, 4));
    CHECK(w.joint == Probability::exact(1, 2));
    CHECK(w.product == Probability::exact(1, 4));
  }
  SUBCASE("independent bits tie-break to the first cell") {
    const auto w = max_factorization_deviation(product_bits(), {"A"}, {"B"});
    CHECK(w.deviation == Probability::exact(0, 1));
    CHECK(w.lhs_assignment == Assignment{{"A", 0}});
    CHECK(w.rhs_assignment == Assignment{{"B", 0}});
  }
  SUBCASE("PR box") {
    const auto pr = pr_box(false).require_distribution();
    CHECK(testing::oracle_max_deviation(pr, {"A"}, {"B", "Y"}) == 0);
    CHECK(max_factorization_deviation(pr, {"A"}, {"B", "Y"}).value == 0.0);
  }
}

TEST_CASE("property: marginals conserve mass and conditioning reweights to the restriction") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = testing::random_exact(rng);
    const auto names = d.names();
    std::vector<std::string> keep;
    for (const auto& n : names) {
      if (rng() % 2) keep.push_back(n);
    }
    if (keep.empty()) keep.push_back(names.front());
    const auto m = marginalize(d, keep);
    mpq_class total(0);
    for (const auto& q : m.exact_table()) total += q;
    CHECK(total == 1);

    // Pick a positive-probability outcome and condition on its value of keep.front().
    std::size_t row = 0;
    while (d.exact_table()[row] == 0) ++row;
    const Outcome o = d.outcome_at(row);
    const auto gi = d.index_of(keep.front());
    const Assignment given{{keep.front(), o[gi]}};
    const auto c = condition(d, given);
    const mpq_class pg = brute_probability(d, {{gi, o[gi]}});
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Outcome rest = c.outcome_at(i);
      std::vector<std::pair<std::size_t, int>> event{{gi, o[gi]}};
      for (std::size_t k = 0; k < rest.size(); ++k) {
        event.emplace_back(d.index_of(c.variables()[k].name), rest[k]);
      }
      CHECK(c.exact_table()[i] * pg == brute_probability(d, event));
    }
  }
}

TEST_CASE("property: independence is symmetric and matches the brute-force oracle") {
  std::mt19937_64 rng(7);
  int independent_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = trial % 3 == 0 ? testing::random_product(rng) : testing::random_exact(rng);
    if (d.variables().size() < 2) continue;
    const auto [s, t] = testing::random_disjoint_sets(rng, d.names());
    const bool got = is_independent(d, s, t);
    CHECK(got == testing::oracle_independent(d, s, t));
    CHECK(got == is_independent(d, t, s));
    CHECK(max_factorization_deviation(d, s, t).deviation.rational() == testing::oracle_max_deviation(d, s, t));
    independent_cases += got;
  }
  CHECK(independent_cases > 0);
}

TEST_CASE("property: a product is independent across its factors") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = testing::random_product(rng);
    std::vector<std::string> left, right;
    for (const auto& n : d.names()) (n.front() == 'L' ? left : right).push_back(n);
    CHECK(is_independent(d, left, right));
  }
}
