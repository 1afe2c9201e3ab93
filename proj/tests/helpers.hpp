// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#pragma once

#include <string>
#include <vector>

#include "gass/core.hpp"
#include "gass/estimate.hpp"
#include "gass/metrics.hpp"
#include "gass/rng.hpp"

namespace gass::testing {

// A fully populated random model: every (q,g) has item and intent rows,
// every query a candidate pool over all items. Valid by construction.
inline Model random_model(RngStream& rng, int nq, int nd, int nt, int ng) {
  Model model;
  std::vector<Id> qs, ds, ts, gs;
  for (int i = 0; i < nq; ++i) qs.push_back("q" + std::to_string(i));
  for (int i = 0; i < nd; ++i) ds.push_back("d" + std::to_string(i));
  for (int i = 0; i < nt; ++i) ts.push_back("t" + std::to_string(i));
  for (int i = 0; i < ng; ++i) gs.push_back("g" + std::to_string(i));
  for (const Id& q : qs) model.catalog.queries.add(q);
  for (const Id& d : ds) model.catalog.items.add(d);
  for (const Id& t : ts) model.catalog.intents.add(t);
  for (const Id& g : gs) model.catalog.groups.add(g);

  auto random_dist = [&rng](const std::vector<Id>& ids) {
    Dist dist;
    double total = 0.0;
    for (const Id& id : ids) {
      double w = rng.next_unit() + 0.01;
      dist[id] = w;
      total += w;
    }
    for (auto& [id, w] : dist) w /= total;
    return dist;
  };

  for (const Id& d : ds) model.intent_given_item.set(d, random_dist(ts));
  for (const Id& q : qs)
    for (const Id& g : gs)
      model.item_given_query_group.set({q, g}, random_dist(ds));
  model.intent_given_query_group = intent_given_query_group(
      model.intent_given_item, model.item_given_query_group);

  Dist q_prior = random_dist(qs);
  for (const auto& [q, p] : q_prior) model.query_prior.set(q, p);
  Dist g_prior = random_dist(gs);
  for (const auto& [g, p] : g_prior) model.group_prior.set(g, p);
  for (const Id& g : gs) model.query_given_group.set(g, random_dist(qs));
  for (const Id& q : qs) model.group_given_query.set(q, random_dist(gs));

  for (const Id& d : ds)
    for (const Id& t : ts) model.relevance.set(d, t, rng.next_unit());
  for (const Id& q : qs) model.candidates[q] = ds;
  return model;
}

// Random finite scores over every candidate pool of the model.
inline ScoreTable random_scores(RngStream& rng, const Model& model) {
  ScoreTable scores;
  for (const auto& [query, pool] : model.candidates) {
    ScoreTable::Row row;
    for (const Id& item : pool)
      row.emplace_back(item, 2.0 * rng.next_unit() - 1.0);
    scores.set(query, row);
  }
  return scores;
}

// Static-ranking policies for every query of the model.
inline PolicyMap static_policies(const ScoreTable& scores,
                                 const Model& model) {
  PolicyMap policies;
  for (const Id& query : model.catalog.queries.items())
    policies.emplace(query, static_ranking(scores, query));
  return policies;
}

inline EvalContext make_context(const Model& model, PolicyMap policies,
                                double gamma = 0.8, double epsilon = 0.0) {
  EvalContext ctx;
  ctx.model = &model;
  ctx.browse.gamma = gamma;
  ctx.epsilon = epsilon;
  ctx.policies = std::move(policies);
  return ctx;
}

}  // namespace gass::testing
