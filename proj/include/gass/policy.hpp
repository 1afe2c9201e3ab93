// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gass/browse.hpp"
#include "gass/core.hpp"
#include "gass/rng.hpp"

namespace gass {

/// Plackett-Luce sampling configuration.
struct PLConfig {
  double beta = 1.0;        // softmax temperature, > 0
  int samples = 100;        // rankings drawn per query, >= 1
  std::uint64_t seed = 42;  // master seed; streams derive from it per sample
  std::optional<int> depth;  // optional truncation K
};

/// Empirical stochastic ranking policy: a weighted multiset of rankings.
struct PolicySample {
  Id query;
  std::vector<Ranking> rankings;
  std::vector<double> weights;  // positive, sum to 1 within 1e-9
  double beta = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;

  std::size_t size() const { return rankings.size(); }
  // Throws std::invalid_argument if empty, sizes mismatch, or weights are
  // not a distribution.
  void check() const;
};

// Candidates sorted by score descending, ties broken by item id ascending,
// truncated to `depth` if given. Throws NotFoundError for unknown queries.
Ranking static_ranking(const ScoreTable& scores, const Id& query,
                       std::optional<int> depth = std::nullopt);

// Draws one ranking by sampling candidates without replacement from the
// softmax over remaining scores at temperature beta. The softmax subtracts
// the running max score so small beta cannot overflow.
Ranking pl_sample_one(const ScoreTable& scores, const Id& query, double beta,
                      RngStream& rng, std::optional<int> depth = std::nullopt);

// config.samples independent draws, each with weight 1/samples. Sample k
// uses the stream keyed by (seed, query, k), so the result is reproducible
// under any scheduling order. threads <= 0 means the OpenMP default.
PolicySample pl_sample_policy(const ScoreTable& scores, const Id& query,
                              const PLConfig& config, int threads = 1);

// Exact PL policy: all n! permutations of the candidate set with their exact
// sequential-softmax probabilities. Throws CapacityError when the candidate
// count exceeds max_n.
PolicySample pl_exact_policy(const ScoreTable& scores, const Id& query,
                             double beta, int max_n = 7);

// Probability the PL model assigns to one full permutation of the candidate
// set. Throws std::invalid_argument if `ranking` is not such a permutation.
double pl_permutation_prob(const ScoreTable& scores, const Id& query,
                           double beta, const Ranking& ranking);

// Degenerate policy holding only the static ranking with weight 1.
PolicySample static_policy(const ScoreTable& scores, const Id& query,
                           std::optional<int> depth = std::nullopt);

}  // namespace gass
