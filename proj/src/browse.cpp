// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include "gass/browse.hpp"

#include <cmath>
#include <stdexcept>

#include "gass/policy.hpp"

namespace gass {

int Ranking::rank_of(const Id& item) const {
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i] == item) return static_cast<int>(i) + 1;
  return 0;
}

double exposure_at_rank(int rank, const BrowsingModel& model) {
  if (rank < 1)
    throw std::invalid_argument("rank must be >= 1, got " +
                                std::to_string(rank));
  return std::pow(model.gamma, rank - 1);
}

double exposure_static(const Ranking& ranking, const Id& item,
                       const BrowsingModel& model) {
  int rank = ranking.rank_of(item);
  if (rank == 0) return 0.0;
  return exposure_at_rank(rank, model);
}

double exposure_expected(const PolicySample& policy, const Id& item,
                         const BrowsingModel& model) {
  if (policy.rankings.empty())
    throw std::invalid_argument("empty policy for query '" + policy.query +
                                "'");
  double expected = 0.0;
  for (std::size_t k = 0; k < policy.rankings.size(); ++k)
    expected += policy.weights[k] * exposure_static(policy.rankings[k], item, model);
  return expected;
}

double truncation_mass(int depth, const BrowsingModel& model) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  return std::pow(model.gamma, depth);
}

}  // namespace gass
