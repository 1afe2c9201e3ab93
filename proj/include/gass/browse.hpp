// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#pragma once

#include <vector>

#include "gass/core.hpp"

namespace gass {

/// User browsing model mapping rank positions to exposure probabilities.
/// Only RBP is shipped; the enum keeps the extension point explicit.
struct BrowsingModel {
  enum class Kind { RBP };
  Kind kind = Kind::RBP;
  double gamma = 0.8;  // patience factor, must lie in (0,1)
};

/// One ranked list of distinct items for a query. Rank 1 is the top.
struct Ranking {
  Id query;
  std::vector<Id> items;

  // 1-based rank of `item`, or 0 when the item is not ranked.
  int rank_of(const Id& item) const;
};

struct PolicySample;  // defined in policy.hpp

// gamma^(rank-1). Rank must be >= 1.
double exposure_at_rank(int rank, const BrowsingModel& model);

// Exposure of `item` under a single fixed ranking; 0 when unranked.
double exposure_static(const Ranking& ranking, const Id& item,
                       const BrowsingModel& model);

// Expected exposure of `item` under a stochastic policy: the policy-weighted
// mean of the per-ranking exposures.
double exposure_expected(const PolicySample& policy, const Id& item,
                         const BrowsingModel& model);

// RBP mass a depth-K truncation discards: gamma^K (diagnostic).
double truncation_mass(int depth, const BrowsingModel& model);

}  // namespace gass
