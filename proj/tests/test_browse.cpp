// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include <algorithm>
#include <cmath>
#include <doctest.h>

#include "gass/browse.hpp"
#include "gass/policy.hpp"

using namespace gass;

namespace {

BrowsingModel rbp(double gamma = 0.8) {
  BrowsingModel model;
  model.gamma = gamma;
  return model;
}

// Enumeration oracle: the uniform policy over every permutation of `items`.
PolicySample uniform_permutation_policy(const Id& query,
                                        std::vector<Id> items) {
  std::sort(items.begin(), items.end());
  PolicySample policy;
  policy.query = query;
  do {
    policy.rankings.push_back({query, items});
  } while (std::next_permutation(items.begin(), items.end()));
  policy.weights.assign(policy.rankings.size(),
                        1.0 / policy.rankings.size());
  return policy;
}

}  // namespace

TEST_SUITE("browse") {

TEST_CASE("exposure_at_rank follows the patience decay") {
  CHECK(exposure_at_rank(1, rbp()) == 1.0);
  CHECK(exposure_at_rank(2, rbp()) == doctest::Approx(0.8));
  CHECK(exposure_at_rank(4, rbp()) == doctest::Approx(0.512));
  CHECK_THROWS_AS(exposure_at_rank(0, rbp()), std::invalid_argument);
  CHECK_THROWS_AS(exposure_at_rank(-3, rbp()), std::invalid_argument);
}

TEST_CASE("exposure_static reads ranks off the ranking") {
  Ranking ranking{"q", {"a", "b", "c"}};
  CHECK(exposure_static(ranking, "a", rbp()) == 1.0);
  CHECK(exposure_static(ranking, "c", rbp()) == doctest::Approx(0.64));
  CHECK(exposure_static(ranking, "missing", rbp()) == 0.0);
}

TEST_CASE("exposure_at_rank strictly decreases in rank") {
  for (double gamma : {0.1, 0.5, 0.8, 0.99}) {
    double previous = 2.0;
    for (int rank = 1; rank <= 50; ++rank) {
      double e = exposure_at_rank(rank, rbp(gamma));
      CHECK(e < previous);
      CHECK(e > 0.0);
      previous = e;
    }
  }
}

TEST_CASE("expected exposure of a degenerate policy is the static one") {
  PolicySample policy;
  policy.query = "q";
  policy.rankings.push_back({"q", {"a", "b"}});
  policy.weights.push_back(1.0);
  CHECK(exposure_expected(policy, "a", rbp()) == 1.0);
  CHECK(exposure_expected(policy, "b", rbp()) == doctest::Approx(0.8));
}

TEST_CASE("expected exposure mixes ranks by weight") {
  PolicySample policy;
  policy.query = "q";
  policy.rankings.push_back({"q", {"a", "b"}});
  policy.rankings.push_back({"q", {"b", "a"}});
  policy.weights = {0.5, 0.5};
  CHECK(exposure_expected(policy, "a", rbp()) == doctest::Approx(0.9));
  CHECK(exposure_expected(policy, "b", rbp()) == doctest::Approx(0.9));
}

TEST_CASE("uniform policy over all permutations exposes items equally") {
  PolicySample policy = uniform_permutation_policy("q", {"a", "b", "c"});
  REQUIRE(policy.rankings.size() == 6);
  double expected = (1.0 + 0.8 + 0.64) / 3.0;
  double closed_form = (1.0 - std::pow(0.8, 3)) / (3 * (1.0 - 0.8));
  CHECK(expected == doctest::Approx(closed_form).epsilon(1e-12));
  for (const Id& item : {"a", "b", "c"})
    CHECK(exposure_expected(policy, item, rbp()) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("expected exposure is linear in policy mixtures") {
  PolicySample one;
  one.query = "q";
  one.rankings = {{"q", {"a", "b", "c"}}, {"q", {"c", "b", "a"}}};
  one.weights = {0.25, 0.75};
  PolicySample two;
  two.query = "q";
  two.rankings = {{"q", {"b", "a", "c"}}};
  two.weights = {1.0};

  for (double w : {0.0, 0.3, 0.5, 1.0}) {
    PolicySample mix;
    mix.query = "q";
    for (std::size_t k = 0; k < one.rankings.size(); ++k) {
      mix.rankings.push_back(one.rankings[k]);
      mix.weights.push_back(w * one.weights[k]);
    }
    for (std::size_t k = 0; k < two.rankings.size(); ++k) {
      mix.rankings.push_back(two.rankings[k]);
      mix.weights.push_back((1.0 - w) * two.weights[k]);
    }
    // zero-weight entries are not valid policy members; drop them
    PolicySample cleaned;
    cleaned.query = "q";
    for (std::size_t k = 0; k < mix.rankings.size(); ++k) {
      if (mix.weights[k] <= 0.0) continue;
      cleaned.rankings.push_back(mix.rankings[k]);
      cleaned.weights.push_back(mix.weights[k]);
    }
    for (const Id& item : {"a", "b", "c"}) {
      double blended = w * exposure_expected(one, item, rbp()) +
                       (1.0 - w) * exposure_expected(two, item, rbp());
      CHECK(exposure_expected(cleaned, item, rbp()) ==
            doctest::Approx(blended).epsilon(1e-12));
    }
  }
}

TEST_CASE("empty policies are rejected") {
  PolicySample policy;
  policy.query = "q";
  CHECK_THROWS_AS(exposure_expected(policy, "a", rbp()),
                  std::invalid_argument);
}

TEST_CASE("truncation mass is the tail of the patience decay") {
  CHECK(truncation_mass(0, rbp()) == 1.0);
  CHECK(truncation_mass(10, rbp()) == doctest::Approx(std::pow(0.8, 10)));
}

}  // TEST_SUITE
