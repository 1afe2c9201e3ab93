// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include "gass/core.hpp"

#include <charconv>
#include <cmath>

namespace gass {

int IdSet::add(const Id& id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  int idx = static_cast<int>(order_.size());
  order_.push_back(id);
  index_.emplace(id, idx);
  return idx;
}

std::optional<int> IdSet::find(const Id& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double dist_sum(const Dist& d) {
  double s = 0.0;
  for (const auto& [id, p] : d) s += p;
  return s;
}

void dist_normalize(Dist& d) {
  double s = dist_sum(d);
  if (s <= 0.0) return;
  for (auto& [id, p] : d) p /= s;
}

double stable_product(const std::vector<double>& factors) {
  if (factors.size() <= 8) {
    double prod = 1.0;
    for (double f : factors) prod *= f;
    return prod;
  }
  double log_sum = 0.0;
  for (double f : factors) {
    if (f == 0.0) return 0.0;
    log_sum += std::log(f);
  }
  return std::exp(log_sum);
}

std::string format_double(double value) {
  char buffer[40];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

void check_row(const std::string& table, const std::string& key,
               const Dist& dist, const IdSet& outcomes,
               const std::string& outcome_kind,
               std::vector<Violation>* out) {
  if (dist.empty()) return;  // absent tables carry no mass to check
  double sum = 0.0;
  for (const auto& [id, p] : dist) {
    if (!outcomes.contains(id))
      out->push_back({table, key, "unknown " + outcome_kind + " '" + id + "'"});
    if (!(p >= 0.0) || !(p <= 1.0) || !std::isfinite(p))
      out->push_back({table, key,
                      "probability " + format_double(p) + " for '" + id +
                          "' out of [0,1]"});
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    out->push_back({table, key, "sum=" + format_double(sum) + " for " + key});
}

std::string qg_key(const QueryGroupKey& k) {
  return "(" + k.query + "," + k.group + ")";
}

}  // namespace

std::vector<Violation> validate(const Model& model) {
  std::vector<Violation> v;
  const Catalog& cat = model.catalog;

  if (cat.queries.empty()) v.push_back({"catalog", "queries", "empty id set"});
  if (cat.items.empty()) v.push_back({"catalog", "items", "empty id set"});
  if (cat.intents.empty()) v.push_back({"catalog", "intents", "empty id set"});
  if (cat.groups.empty()) v.push_back({"catalog", "groups", "empty id set"});

  for (const auto& [key, dist] : model.item_given_query_group.rows()) {
    if (!cat.queries.contains(key.query))
      v.push_back({"p(d|q,g)", qg_key(key), "unknown query '" + key.query + "'"});
    if (!cat.groups.contains(key.group))
      v.push_back({"p(d|q,g)", qg_key(key), "unknown group '" + key.group + "'"});
    check_row("p(d|q,g)", qg_key(key), dist, cat.items, "item", &v);
  }
  for (const auto& [item, dist] : model.intent_given_item.rows()) {
    if (!cat.items.contains(item))
      v.push_back({"p(t|d)", item, "unknown item '" + item + "'"});
    check_row("p(t|d)", item, dist, cat.intents, "intent", &v);
  }
  for (const auto& [key, dist] : model.intent_given_query_group.rows()) {
    if (!cat.queries.contains(key.query))
      v.push_back({"p(t|q,g)", qg_key(key), "unknown query '" + key.query + "'"});
    if (!cat.groups.contains(key.group))
      v.push_back({"p(t|q,g)", qg_key(key), "unknown group '" + key.group + "'"});
    check_row("p(t|q,g)", qg_key(key), dist, cat.intents, "intent", &v);
  }
  check_row("p(q)", "*", model.query_prior.values(), cat.queries, "query", &v);
  check_row("p(g)", "*", model.group_prior.values(), cat.groups, "group", &v);
  for (const auto& [group, dist] : model.query_given_group.rows()) {
    if (!cat.groups.contains(group))
      v.push_back({"p(q|g)", group, "unknown group '" + group + "'"});
    check_row("p(q|g)", group, dist, cat.queries, "query", &v);
  }
  for (const auto& [query, dist] : model.group_given_query.rows()) {
    if (!cat.queries.contains(query))
      v.push_back({"p(g|q)", query, "unknown query '" + query + "'"});
    check_row("p(g|q)", query, dist, cat.groups, "group", &v);
  }
  for (const auto& [key, p] : model.relevance.entries()) {
    std::string rk = "(" + key.first + "," + key.second + ")";
    if (!cat.items.contains(key.first))
      v.push_back({"p(r|t)", rk, "unknown item '" + key.first + "'"});
    if (!cat.intents.contains(key.second))
      v.push_back({"p(r|t)", rk, "unknown intent '" + key.second + "'"});
    if (!(p >= 0.0) || !(p <= 1.0) || !std::isfinite(p))
      v.push_back({"p(r|t)", rk, "value " + format_double(p) + " out of [0,1]"});
  }
  for (const auto& [query, pool] : model.candidates) {
    if (!cat.queries.contains(query))
      v.push_back({"candidates", query, "unknown query '" + query + "'"});
    if (pool.empty())
      v.push_back({"candidates", query, "empty candidate pool"});
    std::map<Id, int> seen;
    for (const Id& item : pool) {
      if (!cat.items.contains(item))
        v.push_back({"candidates", query, "unknown item '" + item + "'"});
      if (++seen[item] == 2)
        v.push_back({"candidates", query, "duplicate item '" + item + "'"});
    }
  }
  return v;
}

std::vector<Violation> validate_scores(const ScoreTable& scores,
                                       const Catalog& catalog) {
  std::vector<Violation> v;
  for (const auto& [query, row] : scores.rows()) {
    if (!catalog.queries.contains(query))
      v.push_back({"scores", query, "unknown query '" + query + "'"});
    if (row.empty()) v.push_back({"scores", query, "no candidates"});
    for (const auto& [item, score] : row) {
      if (!catalog.items.contains(item))
        v.push_back({"scores", query, "unknown item '" + item + "'"});
      if (!std::isfinite(score))
        v.push_back({"scores", query, "non-finite score for '" + item + "'"});
    }
  }
  return v;
}

}  // namespace gass
