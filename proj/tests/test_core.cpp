// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include <cmath>
#include <doctest.h>

#include "gass/core.hpp"
#include "gass/rng.hpp"
#include "helpers.hpp"

using namespace gass;

TEST_SUITE("core") {

TEST_CASE("idset keeps insertion order and dedups") {
  IdSet set;
  CHECK(set.add("b") == 0);
  CHECK(set.add("a") == 1);
  CHECK(set.add("b") == 0);
  CHECK(set.items() == std::vector<Id>{"b", "a"});
  CHECK(set.find("a") == 1);
  CHECK_FALSE(set.find("zzz").has_value());
}

TEST_CASE("valid distribution rows pass validation") {
  RngStream rng(1, "core", 0);
  Model model = testing::random_model(rng, 2, 3, 2, 2);
  CHECK(validate(model).empty());
}

TEST_CASE("row sum violations are reported with key and sum") {
  RngStream rng(2, "core", 0);
  Model model = testing::random_model(rng, 1, 2, 2, 2);
  model.item_given_query_group.set({"q0", "g0"},
                                   Dist{{"d0", 0.7}, {"d1", 0.7}});
  auto violations = validate(model);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].table == "p(d|q,g)");
  CHECK(violations[0].key == "(q0,g0)");
  CHECK(violations[0].rule.find("sum=1.4") != std::string::npos);
}

TEST_CASE("relevance values outside [0,1] are violations") {
  RngStream rng(3, "core", 0);
  Model model = testing::random_model(rng, 1, 2, 2, 1);
  model.relevance.set("d0", "t0", 1.3);
  auto violations = validate(model);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].table == "p(r|t)");
  CHECK(violations[0].rule.find("out of [0,1]") != std::string::npos);
}

TEST_CASE("unknown ids are violations") {
  RngStream rng(4, "core", 0);
  Model model = testing::random_model(rng, 1, 2, 2, 1);
  model.relevance.set("ghost", "t0", 0.5);
  auto violations = validate(model);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule.find("unknown item 'ghost'") != std::string::npos);
}

TEST_CASE("missing relevance lookups return exactly zero") {
  RelevanceTable table;
  table.set("d1", "t1", 0.25);
  CHECK(table.prob("d1", "t1") == 0.25);
  CHECK(table.prob("d1", "t2") == 0.0);
  CHECK(table.prob("d9", "t1") == 0.0);
}

TEST_CASE("renormalizing a valid row is an identity transform") {
  RngStream rng(5, "core", 0);
  for (int trial = 0; trial < 50; ++trial) {
    Dist dist;
    int n = 1 + static_cast<int>(rng.next_below(6));
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      dist["d" + std::to_string(i)] = rng.next_unit() + 1e-3;
      total += dist["d" + std::to_string(i)];
    }
    for (auto& [id, p] : dist) p /= total;
    Dist before = dist;
    dist_normalize(dist);
    for (const auto& [id, p] : before)
      CHECK(dist[id] == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("stable_product matches direct multiplication past 8 factors") {
  RngStream rng(6, "core", 0);
  for (int n : {1, 4, 8, 9, 16, 40}) {
    std::vector<double> factors;
    double direct = 1.0;
    for (int i = 0; i < n; ++i) {
      double f = 0.05 + rng.next_unit();
      factors.push_back(f);
      direct *= f;
    }
    CHECK(stable_product(factors) ==
          doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK(stable_product(std::vector<double>(12, 0.5)) ==
        doctest::Approx(std::pow(0.5, 12)).epsilon(1e-12));
  std::vector<double> with_zero(20, 0.9);
  with_zero[13] = 0.0;
  CHECK(stable_product(with_zero) == 0.0);
}

TEST_CASE("empty catalog sets are violations") {
  Model model;
  auto violations = validate(model);
  CHECK(violations.size() == 4);
}

TEST_CASE("score table checks") {
  RngStream rng(7, "core", 0);
  Model model = testing::random_model(rng, 1, 2, 1, 1);
  ScoreTable scores;
  scores.set("q0", {{"d0", 1.0}, {"d1", std::nan("")}});
  auto violations = validate_scores(scores, model.catalog);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule.find("non-finite") != std::string::npos);
  CHECK_THROWS_AS(scores.row("nope"), NotFoundError);
}

}  // TEST_SUITE
