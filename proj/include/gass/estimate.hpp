// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#pragma once

#include <cstdint>
#include <vector>

#include "gass/core.hpp"

namespace gass {

/// Raw interaction log: one row per (group, query, item) with a positive
/// aggregate count.
struct InteractionRow {
  Id group;
  Id query;
  Id item;
  long long count = 1;
};

struct InteractionLog {
  std::vector<InteractionRow> rows;
};

/// The frequency tables estimated from a log.
struct EstimatedTables {
  CondProbQG item_given_query_group;  // p(d|q,g)
  MarginalProb query_prior;           // p(q)
  CondProbId query_given_group;       // p(q|g)
  MarginalProb group_prior;           // p(g)
  CondProbId group_given_query;       // p(g|q)
};

// Maximum-likelihood frequency estimates. (q,g) pairs absent from the log
// yield no row. Throws std::invalid_argument on an empty log or non-positive
// counts.
EstimatedTables estimate_tables(const InteractionLog& log);

// p(t|q,g) = sum_d p(t|d) * p(d|q,g). Rows sum to 1 when the inputs are
// normalized. Throws ValidationError when an item carrying p(d|q,g) mass has
// no p(t|d) row.
CondProbQG intent_given_query_group(const CondProbId& intent_given_item,
                                    const CondProbQG& item_given_query_group);

/// Synthetic dataset shape. Low group_intent_concentration makes the groups'
/// intent preferences disjoint; 1 makes them identical and uniform.
struct SynthConfig {
  int queries = 100;
  int items = 500;
  int intents = 10;
  int groups = 2;
  double group_intent_concentration = 0.2;  // in [0,1]
  double item_intent_concentration = 0.5;   // Dirichlet-style spread, > 0
  int interactions_per_group = 5000;
  std::uint64_t seed = 42;
  int pool_size = 20;  // candidate items per query
};

struct SynthData {
  InteractionLog log;
  CondProbId intent_given_item;  // p(t|d)
  RelevanceTable relevance;      // p(r_d|t), set to the intent-item affinity
  std::map<Id, std::vector<Id>> candidates;
};

// Reproducible synthetic generator. Every (group, query) pair is guaranteed
// at least one interaction so all conditional rows exist downstream.
SynthData gen_synthetic(const SynthConfig& config);

// Assembles a full Model from a log plus the two precomputed input tables.
// Runs estimation and the p(t|q,g) derivation; candidate pools default to
// each query's interacted items. Does not validate; callers decide.
Model build_model(const InteractionLog& log,
                  const CondProbId& intent_given_item,
                  const RelevanceTable& relevance,
                  const std::map<Id, std::vector<Id>>* candidates = nullptr);

}  // namespace gass
