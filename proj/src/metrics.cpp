// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include "gass/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gass {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

const QueryPolicy& policy_for(const EvalContext& ctx, const Id& query) {
  auto it = ctx.policies.find(query);
  if (it == ctx.policies.end())
    throw NotFoundError("no policy for query '" + query + "'");
  return it->second;
}

double policy_item_exposure(const QueryPolicy& policy, const Id& item,
                            const BrowsingModel& browse) {
  if (const Ranking* fixed = std::get_if<Ranking>(&policy))
    return exposure_static(*fixed, item, browse);
  return exposure_expected(std::get<PolicySample>(policy), item, browse);
}

// Expected exposure of every ranked item under the policy. Items that never
// appear keep exposure zero and are omitted.
std::map<Id, double> policy_exposure(const QueryPolicy& policy,
                                     const BrowsingModel& browse) {
  std::map<Id, double> exposure;
  if (const Ranking* fixed = std::get_if<Ranking>(&policy)) {
    double e = 1.0;
    for (const Id& item : fixed->items) {
      exposure[item] += e;
      e *= browse.gamma;
    }
    return exposure;
  }
  const PolicySample& sample = std::get<PolicySample>(policy);
  sample.check();
  for (std::size_t k = 0; k < sample.rankings.size(); ++k) {
    double e = sample.weights[k];
    for (const Id& item : sample.rankings[k].items) {
      exposure[item] += e;
      e *= browse.gamma;
    }
  }
  return exposure;
}

// p(s|t,q) for all intents given per-item expected exposure: complement
// products accumulated over the relevance rows of exposed items.
IntentSuccess intent_success_from_exposure(
    const Model& model, const std::map<Id, double>& exposure) {
  std::map<Id, double> miss;  // intent -> prod (1 - p(r|t) * exposure)
  const auto& relevance = model.relevance.entries();
  for (const auto& [item, e] : exposure) {
    if (e <= 0.0) continue;
    auto it = relevance.lower_bound({item, Id()});
    for (; it != relevance.end() && it->first.first == item; ++it) {
      const Id& intent = it->first.second;
      auto [slot, inserted] = miss.try_emplace(intent, 1.0);
      slot->second *= 1.0 - it->second * e;
    }
  }
  IntentSuccess success;
  for (const auto& [intent, m] : miss) success[intent] = 1.0 - m;
  return success;
}

double success_for(const IntentSuccess& success, const Id& intent) {
  auto it = success.find(intent);
  return it == success.end() ? 0.0 : it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// Success-level operations.
// ---------------------------------------------------------------------------

double group_query_success(const Model& model, const Id& group,
                           const Id& query, const IntentSuccess& success) {
  const Dist* row = model.intent_given_query_group.row({query, group});
  if (row == nullptr)
    throw NotFoundError("no p(t|q,g) row for (" + query + "," + group + ")");
  double s = 0.0;
  for (const auto& [intent, p] : *row) s += p * success_for(success, intent);
  return s;
}

double ga_ss_within(const Model& model, const Id& query,
                    const IntentSuccess& success, double epsilon) {
  std::vector<double> factors;
  factors.reserve(model.catalog.groups.size());
  for (const Id& group : model.catalog.groups.items())
    factors.push_back(group_query_success(model, group, query, success) +
                      epsilon);
  return clamp01(stable_product(factors));
}

double da_ss_within(const Model& model, const Id& query,
                    const IntentSuccess& success) {
  const Dist* group_weights = model.group_given_query.row(query);
  if (group_weights == nullptr)
    throw NotFoundError("no p(g|q) row for query '" + query + "'");
  // p(t|q): the p(g|q)-weighted marginal of p(t|q,g).
  Dist marginal;
  for (const auto& [group, w] : *group_weights) {
    if (w <= 0.0) continue;
    const Dist* row = model.intent_given_query_group.row({query, group});
    if (row == nullptr)
      throw NotFoundError("no p(t|q,g) row for (" + query + "," + group + ")");
    for (const auto& [intent, p] : *row) marginal[intent] += w * p;
  }
  double s = 0.0;
  for (const auto& [intent, p] : marginal)
    s += p * success_for(success, intent);
  return s;
}

double ga_ss_sum_of_product(const Model& model, const SuccessByQuery& success,
                            double epsilon) {
  double prior_sum = 0.0;
  for (const auto& [query, unused] : success)
    prior_sum += model.query_prior.prob(query);
  if (std::abs(prior_sum - 1.0) > kSumTolerance)
    throw ValidationError("p(q) sums to " + std::to_string(prior_sum) +
                          " over the evaluated queries");
  double total = 0.0;
  for (const auto& [query, intent_success] : success) {
    double w = model.query_prior.prob(query);
    if (w <= 0.0) continue;
    total += w * ga_ss_within(model, query, intent_success, epsilon);
  }
  return clamp01(total);
}

double ga_ss_product_of_sum(const Model& model, const SuccessByQuery& success,
                            double epsilon) {
  std::vector<double> factors;
  factors.reserve(model.catalog.groups.size());
  for (const Id& group : model.catalog.groups.items()) {
    const Dist* row = model.query_given_group.row(group);
    if (row == nullptr)
      throw NotFoundError("no p(q|g) row for group '" + group + "'");
    double total = 0.0;
    for (const auto& [query, intent_success] : success) {
      auto it = row->find(query);
      if (it == row->end() || it->second <= 0.0) continue;
      total += it->second *
               group_query_success(model, group, query, intent_success);
    }
    factors.push_back(total + epsilon);
  }
  return clamp01(stable_product(factors));
}

// ---------------------------------------------------------------------------
// Item-level operations.
// ---------------------------------------------------------------------------

double item_success(const EvalContext& ctx, const Id& item, const Id& intent,
                    const Id& query) {
  double relevance = ctx.model->relevance.prob(item, intent);
  if (relevance == 0.0) return 0.0;
  return relevance *
         policy_item_exposure(policy_for(ctx, query), item, ctx.browse);
}

double intent_query_success(const EvalContext& ctx, const Id& intent,
                            const Id& query) {
  double miss = 1.0;
  for (const Id& item : ctx.model->catalog.items.items())
    miss *= 1.0 - item_success(ctx, item, intent, query);
  return 1.0 - miss;
}

double group_query_success(const EvalContext& ctx, const Id& group,
                           const Id& query) {
  const Dist* row = ctx.model->intent_given_query_group.row({query, group});
  if (row == nullptr)
    throw NotFoundError("no p(t|q,g) row for (" + query + "," + group + ")");
  double s = 0.0;
  for (const auto& [intent, p] : *row)
    s += p * intent_query_success(ctx, intent, query);
  return s;
}

double ga_ss_within(const EvalContext& ctx, const Id& query) {
  std::vector<double> factors;
  factors.reserve(ctx.model->catalog.groups.size());
  for (const Id& group : ctx.model->catalog.groups.items())
    factors.push_back(group_query_success(ctx, group, query) + ctx.epsilon);
  return clamp01(stable_product(factors));
}

double da_ss_within(const EvalContext& ctx, const Id& query) {
  const Dist* group_weights = ctx.model->group_given_query.row(query);
  if (group_weights == nullptr)
    throw NotFoundError("no p(g|q) row for query '" + query + "'");
  Dist marginal;
  for (const auto& [group, w] : *group_weights) {
    if (w <= 0.0) continue;
    const Dist* row = ctx.model->intent_given_query_group.row({query, group});
    if (row == nullptr)
      throw NotFoundError("no p(t|q,g) row for (" + query + "," + group + ")");
    for (const auto& [intent, p] : *row) marginal[intent] += w * p;
  }
  double s = 0.0;
  for (const auto& [intent, p] : marginal)
    s += p * intent_query_success(ctx, intent, query);
  return s;
}

double ga_ss_sum_of_product(const EvalContext& ctx,
                            const std::vector<Id>& queries) {
  double prior_sum = 0.0;
  for (const Id& query : queries)
    prior_sum += ctx.model->query_prior.prob(query);
  if (std::abs(prior_sum - 1.0) > kSumTolerance)
    throw ValidationError("p(q) sums to " + std::to_string(prior_sum) +
                          " over the evaluated queries");
  double total = 0.0;
  for (const Id& query : queries) {
    double w = ctx.model->query_prior.prob(query);
    if (w <= 0.0) continue;
    total += w * ga_ss_within(ctx, query);
  }
  return clamp01(total);
}

double ga_ss_product_of_sum(const EvalContext& ctx,
                            const std::vector<Id>& queries) {
  std::vector<double> factors;
  factors.reserve(ctx.model->catalog.groups.size());
  for (const Id& group : ctx.model->catalog.groups.items()) {
    const Dist* row = ctx.model->query_given_group.row(group);
    if (row == nullptr)
      throw NotFoundError("no p(q|g) row for group '" + group + "'");
    double total = 0.0;
    for (const Id& query : queries) {
      auto it = row->find(query);
      if (it == row->end() || it->second <= 0.0) continue;
      total += it->second * group_query_success(ctx, group, query);
    }
    factors.push_back(total + ctx.epsilon);
  }
  return clamp01(stable_product(factors));
}

// ---------------------------------------------------------------------------
// Batch evaluation.
// ---------------------------------------------------------------------------

namespace {

QueryMetrics eval_one_query(const Model& model, const QueryPolicy& policy,
                            const EvalOptions& options, const Id& query) {
  std::map<Id, double> exposure = policy_exposure(policy, options.browse);
  IntentSuccess success = intent_success_from_exposure(model, exposure);

  QueryMetrics qm;
  std::vector<double> factors;
  factors.reserve(model.catalog.groups.size());
  for (const Id& group : model.catalog.groups.items()) {
    double s = group_query_success(model, group, query, success);
    qm.group_success[group] = s;
    factors.push_back(s + options.epsilon);
  }
  qm.ga_ss_within = clamp01(stable_product(factors));
  qm.da_ss_within = da_ss_within(model, query, success);
  return qm;
}

MetricReport aggregate(const Model& model,
                       std::map<Id, QueryMetrics> per_query,
                       const EvalOptions& options) {
  MetricReport report;
  report.per_query = std::move(per_query);

  double prior_sum = 0.0;
  for (const auto& [query, qm] : report.per_query)
    prior_sum += model.query_prior.prob(query);
  if (std::abs(prior_sum - 1.0) > kSumTolerance)
    throw ValidationError("p(q) sums to " + std::to_string(prior_sum) +
                          " over the evaluated queries");

  // Within-query means, then the two across-query aggregations. All reduces
  // run over the sorted per-query map so results do not depend on thread
  // count.
  double da_mean = 0.0;
  double ga_mean = 0.0;
  double sum_of_product = 0.0;
  for (const auto& [query, qm] : report.per_query) {
    double w = options.weighting == QueryWeighting::Prior
                   ? model.query_prior.prob(query)
                   : 1.0 / static_cast<double>(report.per_query.size());
    da_mean += w * qm.da_ss_within;
    ga_mean += w * qm.ga_ss_within;
    sum_of_product += model.query_prior.prob(query) * qm.ga_ss_within;
  }
  report.da_ss_within_mean = da_mean;
  report.ga_ss_within_mean = ga_mean;
  report.ga_ss_sum_of_product = clamp01(sum_of_product);

  std::vector<double> factors;
  factors.reserve(model.catalog.groups.size());
  for (const Id& group : model.catalog.groups.items()) {
    const Dist* row = model.query_given_group.row(group);
    if (row == nullptr)
      throw NotFoundError("no p(q|g) row for group '" + group + "'");
    double total = 0.0;
    for (const auto& [query, qm] : report.per_query) {
      auto it = row->find(query);
      if (it == row->end() || it->second <= 0.0) continue;
      total += it->second * qm.group_success.at(group);
    }
    factors.push_back(total + options.epsilon);
  }
  report.ga_ss_product_of_sum = clamp01(stable_product(factors));
  return report;
}

}  // namespace

MetricReport evaluate_report(const Model& model, const PolicyMap& policies,
                             const EvalOptions& options) {
  std::vector<const std::pair<const Id, QueryPolicy>*> entries;
  entries.reserve(policies.size());
  for (const auto& kv : policies) entries.push_back(&kv);

  std::vector<QueryMetrics> results(entries.size());
  std::size_t n = entries.size();
#ifdef _OPENMP
  int nthreads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 8)
#endif
  for (std::size_t i = 0; i < n; ++i)
    results[i] =
        eval_one_query(model, entries[i]->second, options, entries[i]->first);

  std::map<Id, QueryMetrics> per_query;
  for (std::size_t i = 0; i < n; ++i)
    per_query.emplace(entries[i]->first, std::move(results[i]));
  return aggregate(model, std::move(per_query), options);
}

MetricReport evaluate_report_reference(const Model& model,
                                       const PolicyMap& policies,
                                       const EvalOptions& options) {
  EvalContext ctx;
  ctx.model = &model;
  ctx.browse = options.browse;
  ctx.epsilon = options.epsilon;
  ctx.policies = policies;

  std::map<Id, QueryMetrics> per_query;
  for (const auto& [query, policy] : policies) {
    QueryMetrics qm;
    for (const Id& group : model.catalog.groups.items())
      qm.group_success[group] = group_query_success(ctx, group, query);
    qm.ga_ss_within = ga_ss_within(ctx, query);
    qm.da_ss_within = da_ss_within(ctx, query);
    per_query.emplace(query, std::move(qm));
  }
  return aggregate(model, std::move(per_query), options);
}

BetaSpec BetaSpec::parse(const std::string& text) {
  BetaSpec spec;
  if (text == "static") {
    spec.is_static = true;
    return spec;
  }
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("beta must be 'static' or a positive real");
  }
  if (consumed != text.size() || !(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument("beta must be 'static' or a positive real");
  spec.value = value;
  return spec;
}

PolicyMap build_policies(const Model& model, const ScoreTable& scores,
                         const BetaSpec& beta, const PLConfig& config,
                         int threads) {
  std::vector<Id> queries;
  for (const Id& query : model.catalog.queries.items())
    if (scores.has_row(query)) queries.push_back(query);

  PolicyMap policies;
  if (beta.is_static) {
    for (const Id& query : queries)
      policies.emplace(query, static_ranking(scores, query, config.depth));
    return policies;
  }

  PLConfig pl = config;
  pl.beta = beta.value;
  std::vector<PolicySample> samples(queries.size());
  std::size_t n = queries.size();
#ifdef _OPENMP
  int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 4)
#endif
  for (std::size_t i = 0; i < n; ++i)
    samples[i] = pl_sample_policy(scores, queries[i], pl, 1);

  for (std::size_t i = 0; i < n; ++i)
    policies.emplace(queries[i], std::move(samples[i]));
  return policies;
}

}  // namespace gass
