// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gass/browse.hpp"
#include "gass/core.hpp"
#include "gass/policy.hpp"

namespace gass {

/// Per-query policy under evaluation: a fixed ranking or an empirical
/// stochastic policy.
using QueryPolicy = std::variant<Ranking, PolicySample>;
using PolicyMap = std::map<Id, QueryPolicy>;

/// Everything a metric evaluation reads: the model, the browsing model, the
/// group-success smoothing constant, and one policy per evaluated query.
struct EvalContext {
  const Model* model = nullptr;
  BrowsingModel browse;
  double epsilon = kDefaultEpsilon;
  PolicyMap policies;
};

/// p(s|t,q) for every intent of one query.
using IntentSuccess = std::map<Id, double>;
/// query -> intent -> p(s|t,q).
using SuccessByQuery = std::map<Id, IntentSuccess>;

// ---------------------------------------------------------------------------
// Item-level operations (success computed from relevance x exposure).
// ---------------------------------------------------------------------------

// p(s_d|t,q) = p(r_d|t) * exposure, where exposure is the static rank
// exposure for a fixed ranking and the expected exposure for a policy.
double item_success(const EvalContext& ctx, const Id& item, const Id& intent,
                    const Id& query);

// p(s|t,q) = 1 - prod_d (1 - p(s_d|t,q)): at least one exposed relevant item.
double intent_query_success(const EvalContext& ctx, const Id& intent,
                            const Id& query);

// p(s|q,g) = sum_t p(t|q,g) * p(s|t,q). Throws NotFoundError when the
// (q,g) intent row is missing.
double group_query_success(const EvalContext& ctx, const Id& group,
                           const Id& query);

// prod_g (p(s|q,g) + epsilon), clamped to [0,1].
double ga_ss_within(const EvalContext& ctx, const Id& query);

// sum_t p(t|q) * p(s|t,q) with p(t|q) the p(g|q)-weighted marginal of
// p(t|q,g).
double da_ss_within(const EvalContext& ctx, const Id& query);

// sum_q [prod_g (p(s|q,g) + epsilon)] * p(q). Throws ValidationError when
// p(q) does not sum to 1 over `queries` within 1e-9.
double ga_ss_sum_of_product(const EvalContext& ctx,
                            const std::vector<Id>& queries);

// prod_g (sum_q p(s|q,g) * p(q|g) + epsilon), clamped to [0,1]. Throws
// NotFoundError when a group has no p(q|g) row.
double ga_ss_product_of_sum(const EvalContext& ctx,
                            const std::vector<Id>& queries);

// ---------------------------------------------------------------------------
// Success-level operations. The same group/query aggregation with
// p(s|t,q) supplied directly; the item-level operations forward here once
// exposure is folded in. Also the entry point for the analytic toy scenario,
// where intent success is 0/1 by construction.
// ---------------------------------------------------------------------------

double group_query_success(const Model& model, const Id& group,
                           const Id& query, const IntentSuccess& success);
double ga_ss_within(const Model& model, const Id& query,
                    const IntentSuccess& success, double epsilon);
double da_ss_within(const Model& model, const Id& query,
                    const IntentSuccess& success);
double ga_ss_sum_of_product(const Model& model, const SuccessByQuery& success,
                            double epsilon);
double ga_ss_product_of_sum(const Model& model, const SuccessByQuery& success,
                            double epsilon);

// ---------------------------------------------------------------------------
// Batch evaluation.
// ---------------------------------------------------------------------------

enum class QueryWeighting { Prior, Uniform };

struct QueryMetrics {
  double ga_ss_within = 0.0;
  double da_ss_within = 0.0;
  std::map<Id, double> group_success;  // p(s|q,g) per group
};

struct ReportMeta {
  std::string ranker;
  std::string beta;  // decimal value or "static"
  double gamma = 0.8;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 42;
  int samples = 100;
  std::optional<int> depth;
  std::string weighting = "prior";
};

struct MetricReport {
  std::map<Id, QueryMetrics> per_query;
  double da_ss_within_mean = 0.0;
  double ga_ss_within_mean = 0.0;
  double ga_ss_sum_of_product = 0.0;
  double ga_ss_product_of_sum = 0.0;
  ReportMeta meta;
};

struct EvalOptions {
  BrowsingModel browse;
  double epsilon = kDefaultEpsilon;
  QueryWeighting weighting = QueryWeighting::Prior;
  int threads = 0;  // <= 0 means the OpenMP default
};

// Evaluates every query in `policies` and aggregates. Queries are processed
// in parallel; the reduction runs serially over sorted query ids, so reports
// are identical for any thread count.
MetricReport evaluate_report(const Model& model, const PolicyMap& policies,
                             const EvalOptions& options);

// Serial reference evaluation composed from the single-query operations
// above. Kept as the oracle the parallel path is tested against.
MetricReport evaluate_report_reference(const Model& model,
                                       const PolicyMap& policies,
                                       const EvalOptions& options);

// One policy per catalog query from ranker scores: the static ranking when
// beta.is_static, otherwise config.samples Plackett-Luce draws.
struct BetaSpec {
  bool is_static = false;
  double value = 1.0;

  // Accepts "static" or a positive real.
  static BetaSpec parse(const std::string& text);
};

PolicyMap build_policies(const Model& model, const ScoreTable& scores,
                         const BetaSpec& beta, const PLConfig& config,
                         int threads = 0);

}  // namespace gass
