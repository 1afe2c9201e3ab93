// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include "gass/rankers.hpp"

#include <cmath>
#include <stdexcept>

namespace gass {

namespace {

const std::vector<Id>& candidate_pool(const Model& model, const Id& query) {
  if (!model.catalog.queries.contains(query))
    throw NotFoundError("unknown query '" + query + "'");
  auto it = model.candidates.find(query);
  if (it == model.candidates.end() || it->second.empty())
    throw NotFoundError("query '" + query + "' has no candidate pool");
  return it->second;
}

}  // namespace

ScoreTable::Row mpc_scores(const Model& model, const Id& query) {
  const std::vector<Id>& pool = candidate_pool(model, query);
  const Dist* group_weights = model.group_given_query.row(query);
  if (group_weights == nullptr)
    throw NotFoundError("no p(g|q) row for query '" + query + "'");

  ScoreTable::Row row;
  row.reserve(pool.size());
  for (const Id& item : pool) {
    double score = 0.0;
    for (const auto& [group, weight] : *group_weights)
      score += weight * model.item_given_query_group.prob({query, group}, item);
    row.emplace_back(item, score);
  }
  return row;
}

ScoreTable::Row gmpc_scores(const Model& model, const Id& query,
                            double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  const std::vector<Id>& pool = candidate_pool(model, query);
  const std::vector<Id>& groups = model.catalog.groups.items();

  ScoreTable::Row row;
  row.reserve(pool.size());
  std::vector<double> factors(groups.size());
  for (const Id& item : pool) {
    for (std::size_t g = 0; g < groups.size(); ++g)
      factors[g] =
          model.item_given_query_group.prob({query, groups[g]}, item) + epsilon;
    row.emplace_back(item, stable_product(factors));
  }
  return row;
}

std::string canonical_ranker(const std::string& ranker) {
  if (ranker == "mpv") return "mpc";
  if (ranker == "gmpv") return "gmpc";
  return ranker;
}

ScoreTable build_scores(const Model& model, const std::string& ranker,
                        double epsilon) {
  std::string name = canonical_ranker(ranker);
  if (name != "mpc" && name != "gmpc")
    throw std::invalid_argument("unknown ranker '" + ranker + "'");
  ScoreTable table;
  for (const Id& query : model.catalog.queries.items()) {
    if (model.candidates.find(query) == model.candidates.end()) continue;
    table.set(query, name == "mpc" ? mpc_scores(model, query)
                                   : gmpc_scores(model, query, epsilon));
  }
  return table;
}

}  // namespace gass
