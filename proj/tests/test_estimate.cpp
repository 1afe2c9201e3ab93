// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include <cmath>
#include <doctest.h>

#include "gass/estimate.hpp"
#include "gass/metrics.hpp"
#include "gass/policy.hpp"
#include "gass/rankers.hpp"
#include "helpers.hpp"

using namespace gass;

namespace {

InteractionLog make_log(
    std::vector<std::tuple<Id, Id, Id, long long>> rows) {
  InteractionLog log;
  for (auto& [g, q, d, c] : rows) log.rows.push_back({g, q, d, c});
  return log;
}

// Random log over small id spaces for consistency properties.
InteractionLog random_log(RngStream& rng, int rows) {
  InteractionLog log;
  for (int i = 0; i < rows; ++i)
    log.rows.push_back(
        {"g" + std::to_string(rng.next_below(3)),
         "q" + std::to_string(rng.next_below(4)),
         "d" + std::to_string(rng.next_below(5)),
         static_cast<long long>(1 + rng.next_below(9))});
  return log;
}

}  // namespace

TEST_SUITE("estimate") {

TEST_CASE("frequency estimates follow the counts") {
  EstimatedTables t = estimate_tables(
      make_log({{"gA", "q1", "d1", 2}, {"gA", "q1", "d2", 1}}));
  CHECK(t.item_given_query_group.prob({"q1", "gA"}, "d1") ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(t.item_given_query_group.prob({"q1", "gA"}, "d2") ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("a single row makes every conditional certain") {
  EstimatedTables t = estimate_tables(make_log({{"gA", "q1", "d1", 5}}));
  CHECK(t.item_given_query_group.prob({"q1", "gA"}, "d1") == 1.0);
  CHECK(t.query_prior.prob("q1") == 1.0);
  CHECK(t.query_given_group.prob("gA", "q1") == 1.0);
  CHECK(t.group_given_query.prob("q1", "gA") == 1.0);
  CHECK(t.group_prior.prob("gA") == 1.0);
}

TEST_CASE("marginals and conditionals from mixed counts") {
  EstimatedTables t = estimate_tables(
      make_log({{"gA", "q1", "d1", 3}, {"gB", "q2", "d2", 1}}));
  CHECK(t.query_prior.prob("q1") == doctest::Approx(0.75));
  CHECK(t.query_given_group.prob("gA", "q1") == 1.0);
  CHECK(t.group_given_query.prob("q1", "gA") == 1.0);
  CHECK(t.group_prior.prob("gA") == doctest::Approx(0.75));
  // (q,g) pairs absent from the log yield no row
  CHECK_FALSE(t.item_given_query_group.has_row({"q2", "gA"}));
}

TEST_CASE("degenerate logs are rejected") {
  CHECK_THROWS_AS(estimate_tables(InteractionLog{}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_tables(make_log({{"g", "q", "d", 0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_tables(make_log({{"", "q", "d", 1}})),
                  std::invalid_argument);
}

TEST_CASE("intent mixing over items") {
  SUBCASE("one-hot intent rows relabel the item distribution") {
    CondProbId p_t_d;
    p_t_d.set("d1", Dist{{"t1", 1.0}});
    p_t_d.set("d2", Dist{{"t2", 1.0}});
    CondProbQG p_d_qg;
    p_d_qg.set({"q", "g"}, Dist{{"d1", 0.3}, {"d2", 0.7}});
    CondProbQG result = intent_given_query_group(p_t_d, p_d_qg);
    CHECK(result.prob({"q", "g"}, "t1") == doctest::Approx(0.3));
    CHECK(result.prob({"q", "g"}, "t2") == doctest::Approx(0.7));
  }
  SUBCASE("mass mixes across items") {
    CondProbId p_t_d;
    p_t_d.set("d1", Dist{{"t1", 1.0}});
    p_t_d.set("d2", Dist{{"t1", 0.2}, {"t2", 0.8}});
    CondProbQG p_d_qg;
    p_d_qg.set({"q", "g"}, Dist{{"d1", 0.5}, {"d2", 0.5}});
    CondProbQG result = intent_given_query_group(p_t_d, p_d_qg);
    CHECK(result.prob({"q", "g"}, "t1") == doctest::Approx(0.6));
  }
  SUBCASE("a single item passes its intent row through") {
    CondProbId p_t_d;
    p_t_d.set("d1", Dist{{"t1", 0.25}, {"t2", 0.75}});
    CondProbQG p_d_qg;
    p_d_qg.set({"q", "g"}, Dist{{"d1", 1.0}});
    CondProbQG result = intent_given_query_group(p_t_d, p_d_qg);
    CHECK(result.prob({"q", "g"}, "t1") == doctest::Approx(0.25));
    CHECK(result.prob({"q", "g"}, "t2") == doctest::Approx(0.75));
  }
  SUBCASE("items without intent rows are an error") {
    CondProbId p_t_d;
    CondProbQG p_d_qg;
    p_d_qg.set({"q", "g"}, Dist{{"d1", 1.0}});
    CHECK_THROWS_AS(intent_given_query_group(p_t_d, p_d_qg),
                    ValidationError);
  }
  SUBCASE("derived rows sum to one") {
    RngStream rng(83, "estimate", 0);
    Model model = gass::testing::random_model(rng, 3, 6, 4, 2);
    for (const auto& [key, dist] :
         model.intent_given_query_group.rows())
      CHECK(std::abs(dist_sum(dist) - 1.0) < 1e-9);
  }
}

TEST_CASE("Bayes consistency of the four estimated tables") {
  RngStream rng(89, "estimate", 0);
  for (int trial = 0; trial < 20; ++trial) {
    EstimatedTables t = estimate_tables(random_log(rng, 40));
    for (const auto& [query, groups] : t.group_given_query.rows()) {
      for (const auto& [group, p_g_q] : groups) {
        double lhs = p_g_q * t.query_prior.prob(query);
        double rhs = t.query_given_group.prob(group, query) *
                     t.group_prior.prob(group);
        CHECK(std::abs(lhs - rhs) < 1e-12);
      }
    }
  }
}

TEST_CASE("estimation is the ML fixed point on integer counts") {
  RngStream rng(97, "estimate", 0);
  InteractionLog log = random_log(rng, 60);
  // aggregate duplicate rows the way the estimator sees them
  std::map<std::tuple<Id, Id, Id>, long long> counts;
  std::map<std::pair<Id, Id>, long long> totals;
  for (const InteractionRow& row : log.rows) {
    counts[{row.group, row.query, row.item}] += row.count;
    totals[{row.group, row.query}] += row.count;
  }
  EstimatedTables t = estimate_tables(log);
  for (const auto& [key, count] : counts) {
    double p = t.item_given_query_group.prob(
        {std::get<1>(key), std::get<0>(key)}, std::get<2>(key));
    double reconstructed =
        p * static_cast<double>(totals.at({std::get<0>(key), std::get<1>(key)}));
    CHECK(reconstructed ==
          doctest::Approx(static_cast<double>(count)).epsilon(1e-12));
  }
}

TEST_CASE("synthetic data is reproducible and well formed") {
  SynthConfig config;
  config.queries = 6;
  config.items = 20;
  config.intents = 4;
  config.groups = 2;
  config.interactions_per_group = 300;
  config.pool_size = 8;
  config.seed = 123;

  SynthData a = gen_synthetic(config);
  SynthData b = gen_synthetic(config);
  REQUIRE(a.log.rows.size() == b.log.rows.size());
  for (std::size_t i = 0; i < a.log.rows.size(); ++i) {
    CHECK(a.log.rows[i].group == b.log.rows[i].group);
    CHECK(a.log.rows[i].query == b.log.rows[i].query);
    CHECK(a.log.rows[i].item == b.log.rows[i].item);
    CHECK(a.log.rows[i].count == b.log.rows[i].count);
  }

  Model model =
      build_model(a.log, a.intent_given_item, a.relevance, &a.candidates);
  CHECK(validate(model).empty());

  // full (group, query) coverage
  for (const Id& group : model.catalog.groups.items())
    for (const Id& query : model.catalog.queries.items())
      CHECK(model.item_given_query_group.has_row({query, group}));
}

TEST_CASE("zero concentration produces disjoint group preferences") {
  SynthConfig config;
  config.queries = 4;
  config.items = 30;
  config.intents = 2;
  config.groups = 2;
  config.group_intent_concentration = 0.0;
  config.item_intent_concentration = 0.1;  // near one-hot item affinities
  config.interactions_per_group = 2000;
  config.pool_size = 12;
  config.seed = 7;
  SynthData data = gen_synthetic(config);
  Model model = build_model(data.log, data.intent_given_item, data.relevance,
                            &data.candidates);
  // group g0 owns t0, g1 owns t1; estimated intent rows should be lopsided
  for (const Id& query : model.catalog.queries.items()) {
    CHECK(model.intent_given_query_group.prob({query, "g0"}, "t0") > 0.75);
    CHECK(model.intent_given_query_group.prob({query, "g1"}, "t1") > 0.75);
  }
}

TEST_CASE("with a single group GA-SS collapses onto DA-SS downstream") {
  SynthConfig config;
  config.queries = 5;
  config.items = 25;
  config.intents = 3;
  config.groups = 1;
  config.interactions_per_group = 500;
  config.pool_size = 10;
  config.seed = 99;
  SynthData data = gen_synthetic(config);
  Model model = build_model(data.log, data.intent_given_item, data.relevance,
                            &data.candidates);
  ScoreTable scores = build_scores(model, "mpc");
  PolicyMap policies = gass::testing::static_policies(scores, model);
  EvalOptions options;
  options.epsilon = 0.0;
  MetricReport report = evaluate_report(model, policies, options);
  for (const auto& [query, qm] : report.per_query)
    CHECK(std::abs(qm.ga_ss_within - qm.da_ss_within) < 1e-12);
}

TEST_CASE("build_model derives candidate pools from the log") {
  InteractionLog log = make_log({{"gA", "q1", "d2", 1},
                                 {"gB", "q1", "d1", 2},
                                 {"gA", "q2", "d3", 1}});
  CondProbId intents;
  for (const Id& d : {"d1", "d2", "d3"})
    intents.set(d, Dist{{"t1", 1.0}});
  RelevanceTable relevance;
  Model model = build_model(log, intents, relevance);
  // catalog order follows first appearance in the log
  CHECK(model.catalog.items.items() == std::vector<Id>{"d2", "d1", "d3"});
  CHECK(model.candidates.at("q1") == std::vector<Id>{"d2", "d1"});
  CHECK(model.candidates.at("q2") == std::vector<Id>{"d3"});
}

}  // TEST_SUITE
