// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#pragma once

#include <string>

#include "gass/core.hpp"

namespace gass {

// Most Popular Completion: score(d) = p(d|q) reconstructed as the
// p(g|q)-mixture of the group-conditional tables. Scores sum to 1 over the
// candidate pool. Throws NotFoundError for unknown queries.
ScoreTable::Row mpc_scores(const Model& model, const Id& query);

// Group-aware MPC: score(d) = prod_g (p(d|q,g) + epsilon) over every catalog
// group. Computed in log space above 8 groups.
ScoreTable::Row gmpc_scores(const Model& model, const Id& query,
                            double epsilon = kDefaultEpsilon);

// Builds the full score table for one ranker over every catalog query with a
// candidate pool. `ranker` is "mpc" or "gmpc" (aliases "mpv"/"gmpv" name the
// same models for the recommendation task). Throws std::invalid_argument on
// unknown ranker names.
ScoreTable build_scores(const Model& model, const std::string& ranker,
                        double epsilon = kDefaultEpsilon);

// Maps "mpv" -> "mpc", "gmpv" -> "gmpc"; other names pass through.
std::string canonical_ranker(const std::string& ranker);

}  // namespace gass
