// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include "gass/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "gass/rng.hpp"

namespace gass {

EstimatedTables estimate_tables(const InteractionLog& log) {
  if (log.rows.empty())
    throw std::invalid_argument("interaction log is empty");

  std::map<std::tuple<Id, Id, Id>, long long> gqd;  // (g,q,d) -> count
  std::map<std::pair<Id, Id>, long long> gq;
  std::map<Id, long long> per_group;
  std::map<Id, long long> per_query;
  long long total = 0;
  for (const InteractionRow& row : log.rows) {
    if (row.count < 1)
      throw std::invalid_argument("interaction count must be >= 1");
    if (row.group.empty() || row.query.empty() || row.item.empty())
      throw std::invalid_argument("interaction ids must be non-empty");
    gqd[{row.group, row.query, row.item}] += row.count;
    gq[{row.group, row.query}] += row.count;
    per_group[row.group] += row.count;
    per_query[row.query] += row.count;
    total += row.count;
  }

  EstimatedTables t;
  {
    // p(d|q,g) rows grouped by (q,g) key.
    Dist dist;
    std::pair<Id, Id> current;
    bool open = false;
    auto flush = [&]() {
      if (open)
        t.item_given_query_group.set({current.second, current.first},
                                     std::move(dist));
      dist = Dist();
    };
    for (const auto& [key, count] : gqd) {
      std::pair<Id, Id> gq_key{std::get<0>(key), std::get<1>(key)};
      if (!open || gq_key != current) {
        flush();
        current = gq_key;
        open = true;
      }
      dist[std::get<2>(key)] =
          static_cast<double>(count) / static_cast<double>(gq.at(gq_key));
    }
    flush();
  }
  for (const auto& [query, count] : per_query)
    t.query_prior.set(query,
                      static_cast<double>(count) / static_cast<double>(total));
  for (const auto& [group, count] : per_group)
    t.group_prior.set(group,
                      static_cast<double>(count) / static_cast<double>(total));
  {
    std::map<Id, Dist> by_group;
    std::map<Id, Dist> by_query;
    for (const auto& [key, count] : gq) {
      by_group[key.first][key.second] =
          static_cast<double>(count) / static_cast<double>(per_group.at(key.first));
      by_query[key.second][key.first] =
          static_cast<double>(count) / static_cast<double>(per_query.at(key.second));
    }
    for (auto& [group, dist] : by_group)
      t.query_given_group.set(group, std::move(dist));
    for (auto& [query, dist] : by_query)
      t.group_given_query.set(query, std::move(dist));
  }
  return t;
}

CondProbQG intent_given_query_group(const CondProbId& intent_given_item,
                                    const CondProbQG& item_given_query_group) {
  CondProbQG out;
  for (const auto& [key, items] : item_given_query_group.rows()) {
    Dist intent_dist;
    for (const auto& [item, p_item] : items) {
      if (p_item <= 0.0) continue;
      const Dist* intents = intent_given_item.row(item);
      if (intents == nullptr)
        throw ValidationError("item '" + item +
                              "' carries p(d|q,g) mass but has no p(t|d) row");
      for (const auto& [intent, p_intent] : *intents)
        intent_dist[intent] += p_item * p_intent;
    }
    out.set(key, std::move(intent_dist));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic data.
// ---------------------------------------------------------------------------

namespace {

double normal_sample(RngStream& rng) {
  double u1 = rng.next_unit();
  while (u1 <= 0.0) u1 = rng.next_unit();
  double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Marsaglia-Tsang, with the alpha < 1 boost.
double gamma_sample(RngStream& rng, double alpha) {
  if (alpha < 1.0) {
    double u = rng.next_unit();
    while (u <= 0.0) u = rng.next_unit();
    return gamma_sample(rng, alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  double d = alpha - 1.0 / 3.0;
  double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal_sample(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = rng.next_unit();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v;
  }
}

std::vector<double> dirichlet_sample(RngStream& rng, int n, double alpha) {
  std::vector<double> values(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    values[i] = gamma_sample(rng, alpha);
    sum += values[i];
  }
  for (double& v : values) v /= sum;
  return values;
}

std::string padded_id(const char* prefix, int index, int count) {
  int width = 1;
  for (int c = count - 1; c >= 10; c /= 10) ++width;
  std::string digits = std::to_string(index);
  return std::string(prefix) +
         std::string(width - std::min<int>(width, digits.size()), '0') +
         digits;
}

// Walk the cumulative distribution of `weights`; assumes a positive total.
int pick_index(const std::vector<double>& weights, double total, double u) {
  double target = u * total;
  double cum = 0.0;
  int last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last = static_cast<int>(i);
    cum += weights[i];
    if (cum > target) return last;
  }
  return last;
}

}  // namespace

SynthData gen_synthetic(const SynthConfig& config) {
  if (config.queries < 1 || config.items < 1 || config.intents < 1 ||
      config.groups < 1 || config.interactions_per_group < 1 ||
      config.pool_size < 1)
    throw std::invalid_argument("synthetic counts must be >= 1");
  if (config.group_intent_concentration < 0.0 ||
      config.group_intent_concentration > 1.0)
    throw std::invalid_argument("group_intent_concentration must be in [0,1]");
  if (!(config.item_intent_concentration > 0.0))
    throw std::invalid_argument("item_intent_concentration must be > 0");

  std::vector<Id> queries(config.queries), items(config.items),
      intents(config.intents), groups(config.groups);
  for (int i = 0; i < config.queries; ++i)
    queries[i] = padded_id("q", i, config.queries);
  for (int i = 0; i < config.items; ++i)
    items[i] = padded_id("d", i, config.items);
  for (int i = 0; i < config.intents; ++i)
    intents[i] = padded_id("t", i, config.intents);
  for (int i = 0; i < config.groups; ++i)
    groups[i] = padded_id("g", i, config.groups);

  SynthData data;

  // Item-intent affinity: one Dirichlet row per item. The normalized row is
  // p(t|d); the max-scaled row is the Bernoulli relevance p(r_d|t), so each
  // item is fully relevant to its strongest intent.
  std::vector<std::vector<double>> affinity(config.items);
  for (int d = 0; d < config.items; ++d) {
    RngStream rng(config.seed, "item:" + items[d], 0);
    affinity[d] =
        dirichlet_sample(rng, config.intents, config.item_intent_concentration);
    double top = 0.0;
    for (double a : affinity[d]) top = std::max(top, a);
    Dist row;
    for (int t = 0; t < config.intents; ++t) {
      row[intents[t]] = affinity[d][t];
      data.relevance.set(items[d], intents[t], affinity[d][t] / top);
    }
    data.intent_given_item.set(items[d], std::move(row));
  }

  // Group intent demand. Intents are dealt to groups round-robin as "own"
  // blocks. Per (group, query) the demand is head-heavy: one dominant intent
  // from the group's own block plus a uniform background over all intents,
  // mixed by the concentration. 0 gives fully disjoint preferences, 1 makes
  // every group identical and uniform. Query logs look like this, and the
  // head is what gives the estimated p(d|q,g) something for the rankers to
  // disagree about.
  std::vector<std::vector<int>> own(config.groups);
  for (int t = 0; t < config.intents; ++t) own[t % config.groups].push_back(t);
  std::vector<std::vector<int>> dominant(config.groups,
                                         std::vector<int>(config.queries));
  for (int g = 0; g < config.groups; ++g) {
    RngStream rng(config.seed, "dominant:" + groups[g], 0);
    for (int q = 0; q < config.queries; ++q)
      dominant[g][q] =
          own[g].empty()
              ? static_cast<int>(rng.next_below(config.intents))
              : own[g][rng.next_below(own[g].size())];
  }

  // Per-query candidate pools, drawn without replacement.
  int pool_size = std::min(config.pool_size, config.items);
  std::vector<std::vector<int>> pools(config.queries);
  for (int q = 0; q < config.queries; ++q) {
    RngStream rng(config.seed, "pool:" + queries[q], 0);
    std::vector<bool> used(config.items, false);
    while (static_cast<int>(pools[q].size()) < pool_size) {
      int d = static_cast<int>(rng.next_below(config.items));
      if (used[d]) continue;
      used[d] = true;
      pools[q].push_back(d);
    }
    std::sort(pools[q].begin(), pools[q].end());
    std::vector<Id> pool_ids;
    pool_ids.reserve(pools[q].size());
    for (int d : pools[q]) pool_ids.push_back(items[d]);
    data.candidates[queries[q]] = std::move(pool_ids);
  }

  // Per-group query appetite: an Exp(1) weight per (g,q).
  std::vector<std::vector<double>> query_weight(
      config.groups, std::vector<double>(config.queries));
  std::vector<double> query_weight_total(config.groups, 0.0);
  for (int g = 0; g < config.groups; ++g) {
    RngStream rng(config.seed, "queries:" + groups[g], 0);
    for (int q = 0; q < config.queries; ++q) {
      double u = rng.next_unit();
      while (u <= 0.0) u = rng.next_unit();
      query_weight[g][q] = -std::log(u);
      query_weight_total[g] += query_weight[g][q];
    }
  }

  std::map<std::tuple<int, int, int>, long long> counts;  // (g,q,d)
  std::vector<double> item_weights(pool_size);
  auto draw_item = [&](RngStream& rng, int q, int t) {
    // Squared affinity concentrates the clicks on the strongest matches,
    // giving the head-heavy interaction counts real logs show.
    double total = 0.0;
    item_weights.resize(pools[q].size());
    for (std::size_t i = 0; i < pools[q].size(); ++i) {
      double a = affinity[pools[q][i]][t];
      item_weights[i] = a * a;
      total += item_weights[i];
    }
    int idx = total > 0.0
                  ? pick_index(item_weights, total, rng.next_unit())
                  : static_cast<int>(rng.next_below(pools[q].size()));
    return pools[q][idx];
  };

  for (int g = 0; g < config.groups; ++g) {
    RngStream rng(config.seed, "log:" + groups[g], 0);
    double c = config.group_intent_concentration;
    auto draw_intent = [&](int q) {
      if (rng.next_unit() >= c) return dominant[g][q];
      return static_cast<int>(rng.next_below(config.intents));
    };
    for (int i = 0; i < config.interactions_per_group; ++i) {
      int q = pick_index(query_weight[g], query_weight_total[g],
                         rng.next_unit());
      int t = draw_intent(q);
      int d = draw_item(rng, q, t);
      ++counts[{g, q, d}];
    }
    // Guarantee coverage: every (group, query) pair gets at least one row so
    // the estimated conditionals exist for the full grid.
    for (int q = 0; q < config.queries; ++q) {
      auto lo = counts.lower_bound({g, q, 0});
      if (lo != counts.end() && std::get<0>(lo->first) == g &&
          std::get<1>(lo->first) == q)
        continue;
      ++counts[{g, q, draw_item(rng, q, draw_intent(q))}];
    }
  }

  for (const auto& [key, count] : counts)
    data.log.rows.push_back({groups[std::get<0>(key)],
                             queries[std::get<1>(key)],
                             items[std::get<2>(key)], count});
  return data;
}

Model build_model(const InteractionLog& log,
                  const CondProbId& intent_given_item,
                  const RelevanceTable& relevance,
                  const std::map<Id, std::vector<Id>>* candidates) {
  Model model;
  for (const InteractionRow& row : log.rows) {
    model.catalog.groups.add(row.group);
    model.catalog.queries.add(row.query);
    model.catalog.items.add(row.item);
  }
  for (const auto& [item, dist] : intent_given_item.rows()) {
    model.catalog.items.add(item);
    for (const auto& [intent, p] : dist) model.catalog.intents.add(intent);
  }

  EstimatedTables tables = estimate_tables(log);
  model.item_given_query_group = std::move(tables.item_given_query_group);
  model.query_prior = std::move(tables.query_prior);
  model.query_given_group = std::move(tables.query_given_group);
  model.group_prior = std::move(tables.group_prior);
  model.group_given_query = std::move(tables.group_given_query);
  model.intent_given_item = intent_given_item;
  model.intent_given_query_group =
      gass::intent_given_query_group(intent_given_item,
                                     model.item_given_query_group);
  model.relevance = relevance;

  if (candidates != nullptr) {
    model.candidates = *candidates;
  } else {
    // Default pool: the items each query was interacted with, in catalog
    // order.
    std::map<Id, std::vector<char>> seen;
    for (const auto& [key, dist] : model.item_given_query_group.rows()) {
      auto& mask = seen[key.query];
      mask.resize(model.catalog.items.size(), 0);
      for (const auto& [item, p] : dist)
        if (p > 0.0) mask[*model.catalog.items.find(item)] = 1;
    }
    for (const auto& [query, mask] : seen) {
      std::vector<Id> pool;
      for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) pool.push_back(model.catalog.items.at(static_cast<int>(i)));
      model.candidates[query] = std::move(pool);
    }
  }
  return model;
}

}  // namespace gass
