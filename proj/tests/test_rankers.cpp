// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include <doctest.h>

#include "gass/policy.hpp"
#include "gass/rankers.hpp"
#include "helpers.hpp"

using namespace gass;

namespace {

// Minimal model: explicit p(d|q,g) rows plus p(g|q); everything else empty.
Model tiny_model(const std::vector<Id>& items,
                 const std::vector<std::pair<Id, Dist>>& group_rows,
                 const Dist& group_given_query) {
  Model model;
  model.catalog.queries.add("q");
  for (const Id& item : items) model.catalog.items.add(item);
  model.catalog.intents.add("t");
  for (const auto& [group, row] : group_rows) {
    model.catalog.groups.add(group);
    model.item_given_query_group.set({"q", group}, row);
  }
  model.group_given_query.set("q", group_given_query);
  model.candidates["q"] = items;
  return model;
}

std::map<Id, double> as_map(const ScoreTable::Row& row) {
  std::map<Id, double> m;
  for (const auto& [item, score] : row) m[item] = score;
  return m;
}

}  // namespace

TEST_SUITE("rankers") {

TEST_CASE("mpc with one group degenerates to that group's row") {
  Model model = tiny_model({"d1", "d2"},
                           {{"gA", Dist{{"d1", 0.8}, {"d2", 0.2}}}},
                           Dist{{"gA", 1.0}});
  auto scores = as_map(mpc_scores(model, "q"));
  CHECK(scores["d1"] == doctest::Approx(0.8));
  CHECK(scores["d2"] == doctest::Approx(0.2));
}

TEST_CASE("mpc mixes group rows by p(g|q)") {
  Model model = tiny_model({"d1", "d2"},
                           {{"gA", Dist{{"d1", 1.0}}},
                            {"gB", Dist{{"d2", 1.0}}}},
                           Dist{{"gA", 0.5}, {"gB", 0.5}});
  auto scores = as_map(mpc_scores(model, "q"));
  CHECK(scores["d1"] == doctest::Approx(0.5));

  model = tiny_model({"d1", "d2"},
                     {{"gA", Dist{{"d1", 0.8}, {"d2", 0.2}}},
                      {"gB", Dist{{"d1", 0.4}, {"d2", 0.6}}}},
                     Dist{{"gA", 0.75}, {"gB", 0.25}});
  scores = as_map(mpc_scores(model, "q"));
  CHECK(scores["d1"] == doctest::Approx(0.7));
}

TEST_CASE("mpc scores sum to one over the candidate pool") {
  RngStream rng(41, "rankers", 0);
  Model model = testing::random_model(rng, 3, 6, 2, 3);
  for (const Id& query : model.catalog.queries.items()) {
    double total = 0.0;
    for (const auto& [item, score] : mpc_scores(model, query)) {
      CHECK(score >= 0.0);
      total += score;
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
  }
}

TEST_CASE("gmpc multiplies group rows") {
  Model model = tiny_model({"d1"}, {{"gA", Dist{{"d1", 0.7}}}},
                           Dist{{"gA", 1.0}});
  CHECK(as_map(gmpc_scores(model, "q", 0.0))["d1"] == doctest::Approx(0.7));

  model = tiny_model({"d1"},
                     {{"gA", Dist{{"d1", 0.6}}}, {"gB", Dist{{"d1", 0.5}}}},
                     Dist{{"gA", 0.5}, {"gB", 0.5}});
  CHECK(as_map(gmpc_scores(model, "q", 0.0))["d1"] == doctest::Approx(0.3));
}

TEST_CASE("a zero-support group annihilates unsmoothed gmpc scores") {
  Model model = tiny_model({"d1", "d2"},
                           {{"gA", Dist{{"d1", 1.0}}},
                            {"gB", Dist{{"d2", 1.0}}}},
                           Dist{{"gA", 0.5}, {"gB", 0.5}});
  auto scores = as_map(gmpc_scores(model, "q", 0.0));
  CHECK(scores["d1"] == 0.0);
  CHECK(scores["d2"] == 0.0);
}

TEST_CASE("single group, zero smoothing: mpc and gmpc rank identically") {
  RngStream rng(43, "rankers", 0);
  Model model = testing::random_model(rng, 4, 8, 2, 1);
  for (const Id& query : model.catalog.queries.items()) {
    ScoreTable mpc, gmpc;
    mpc.set(query, mpc_scores(model, query));
    gmpc.set(query, gmpc_scores(model, query, 0.0));
    CHECK(static_ranking(mpc, query).items ==
          static_ranking(gmpc, query).items);
  }
}

TEST_CASE("gmpc order survives scaling one group's row") {
  Model model = tiny_model(
      {"d1", "d2", "d3"},
      {{"gA", Dist{{"d1", 0.5}, {"d2", 0.3}, {"d3", 0.2}}},
       {"gB", Dist{{"d1", 0.1}, {"d2", 0.6}, {"d3", 0.3}}}},
      Dist{{"gA", 0.5}, {"gB", 0.5}});
  ScoreTable before;
  before.set("q", gmpc_scores(model, "q", 0.0));

  Dist scaled;
  for (const auto& [item, p] :
       *model.item_given_query_group.row({"q", "gA"}))
    scaled[item] = 3.0 * p;
  model.item_given_query_group.set({"q", "gA"}, scaled);
  ScoreTable after;
  after.set("q", gmpc_scores(model, "q", 0.0));

  CHECK(static_ranking(before, "q").items ==
        static_ranking(after, "q").items);
}

TEST_CASE("disjoint preferences: gmpc lifts both groups' items over noise") {
  // gA only wants dA, gB only wants dB, dC is wanted by neither; unequal
  // group priors.
  Model model = tiny_model({"dA", "dB", "dC"},
                           {{"gA", Dist{{"dA", 1.0}}},
                            {"gB", Dist{{"dB", 1.0}}}},
                           Dist{{"gA", 0.7}, {"gB", 0.3}});
  ScoreTable mpc, gmpc;
  mpc.set("q", mpc_scores(model, "q"));
  gmpc.set("q", gmpc_scores(model, "q"));

  // MPC puts the majority group's item first.
  CHECK(static_ranking(mpc, "q").items.front() == "dA");
  // gMPC interleaves both wanted items above the unwanted one.
  std::vector<Id> order = static_ranking(gmpc, "q").items;
  CHECK(order.back() == "dC");
}

TEST_CASE("log-space product matches the direct one past 8 groups") {
  std::vector<std::pair<Id, Dist>> rows;
  Dist weights;
  double direct_d1 = 1.0;
  for (int g = 0; g < 9; ++g) {
    Id group = "g" + std::to_string(g);
    double p = 0.05 + 0.1 * g / 9.0;
    rows.push_back({group, Dist{{"d1", p}, {"d2", 1.0 - p}}});
    weights[group] = 1.0 / 9.0;
    direct_d1 *= p + 1e-6;
  }
  Model model = tiny_model({"d1", "d2"}, rows, weights);
  auto scores = as_map(gmpc_scores(model, "q", 1e-6));
  CHECK(scores["d1"] == doctest::Approx(direct_d1).epsilon(1e-12));
}

TEST_CASE("ranker names: aliases map, unknown names are rejected") {
  RngStream rng(47, "rankers", 0);
  Model model = testing::random_model(rng, 2, 4, 2, 2);
  ScoreTable mpc = build_scores(model, "mpc");
  ScoreTable mpv = build_scores(model, "mpv");
  for (const auto& [query, row] : mpc.rows())
    CHECK(as_map(row) == as_map(mpv.row(query)));
  CHECK(canonical_ranker("gmpv") == "gmpc");
  CHECK_THROWS_AS(build_scores(model, "bm25"), std::invalid_argument);
  CHECK_THROWS_AS(mpc_scores(model, "unknown-query"), NotFoundError);
}

}  // TEST_SUITE
