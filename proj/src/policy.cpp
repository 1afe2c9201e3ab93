// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include "gass/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gass {

void PolicySample::check() const {
  if (rankings.empty())
    throw std::invalid_argument("policy for query '" + query + "' is empty");
  if (rankings.size() != weights.size())
    throw std::invalid_argument("policy rankings/weights size mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0))
      throw std::invalid_argument("policy weight must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument("policy weights sum to " + std::to_string(sum));
}

Ranking static_ranking(const ScoreTable& scores, const Id& query,
                       std::optional<int> depth) {
  const ScoreTable::Row& row = scores.row(query);
  if (row.empty()) throw NotFoundError("query '" + query + "' has no candidates");
  ScoreTable::Row sorted = row;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Ranking ranking;
  ranking.query = query;
  std::size_t limit = sorted.size();
  if (depth && *depth >= 0)
    limit = std::min(limit, static_cast<std::size_t>(*depth));
  ranking.items.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) ranking.items.push_back(sorted[i].first);
  return ranking;
}

namespace {

// One sampling step: softmax over the remaining candidates with the running
// max subtracted, then a CDF walk on u. Returns the picked position.
std::size_t pl_pick(const ScoreTable::Row& row, const std::vector<bool>& taken,
                    double beta, double u, std::vector<double>* weights) {
  double max_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < row.size(); ++i)
    if (!taken[i]) max_score = std::max(max_score, row[i].second);
  double total = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    double w = taken[i] ? 0.0 : std::exp((row[i].second - max_score) / beta);
    (*weights)[i] = w;
    total += w;
  }
  double target = u * total;
  double cum = 0.0;
  std::size_t last_free = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (taken[i]) continue;
    last_free = i;
    cum += (*weights)[i];
    if (cum > target) return i;
  }
  return last_free;  // fp edge: u*total == total
}

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("beta must be positive and finite");
}

}  // namespace

Ranking pl_sample_one(const ScoreTable& scores, const Id& query, double beta,
                      RngStream& rng, std::optional<int> depth) {
  require_beta(beta);
  const ScoreTable::Row& row = scores.row(query);
  std::size_t n = row.size();
  std::size_t k = n;
  if (depth && *depth >= 0) k = std::min(n, static_cast<std::size_t>(*depth));

  Ranking ranking;
  ranking.query = query;
  ranking.items.reserve(k);
  std::vector<bool> taken(n, false);
  std::vector<double> weights(n, 0.0);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = pl_pick(row, taken, beta, rng.next_unit(), &weights);
    taken[pick] = true;
    ranking.items.push_back(row[pick].first);
  }
  return ranking;
}

PolicySample pl_sample_policy(const ScoreTable& scores, const Id& query,
                              const PLConfig& config, int threads) {
  require_beta(config.beta);
  if (config.samples < 1)
    throw std::invalid_argument("samples must be >= 1");
  scores.row(query);  // not-found check up front

  PolicySample policy;
  policy.query = query;
  policy.beta = config.beta;
  policy.seed = config.seed;
  policy.samples = config.samples;
  policy.rankings.resize(config.samples);
  policy.weights.assign(config.samples, 1.0 / config.samples);

#ifdef _OPENMP
  int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nthreads) schedule(static)
#endif
  for (int k = 0; k < config.samples; ++k) {
    RngStream rng(config.seed, query, static_cast<std::uint64_t>(k));
    policy.rankings[k] =
        pl_sample_one(scores, query, config.beta, rng, config.depth);
  }
  return policy;
}

PolicySample pl_exact_policy(const ScoreTable& scores, const Id& query,
                             double beta, int max_n) {
  require_beta(beta);
  const ScoreTable::Row& row = scores.row(query);
  int n = static_cast<int>(row.size());
  if (n > max_n)
    throw CapacityError("exact policy over " + std::to_string(n) +
                        " candidates exceeds limit " + std::to_string(max_n));

  PolicySample policy;
  policy.query = query;
  policy.beta = beta;
  policy.samples = 0;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> taken(n, false);
  do {
    Ranking ranking;
    ranking.query = query;
    ranking.items.reserve(n);
    for (int idx : perm) ranking.items.push_back(row[idx].first);

    std::fill(taken.begin(), taken.end(), false);
    double prob = 1.0;
    for (int idx : perm) {
      double max_score = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i)
        if (!taken[i]) max_score = std::max(max_score, row[i].second);
      double total = 0.0;
      for (int i = 0; i < n; ++i)
        if (!taken[i]) total += std::exp((row[i].second - max_score) / beta);
      prob *= std::exp((row[idx].second - max_score) / beta) / total;
      taken[idx] = true;
    }
    policy.rankings.push_back(std::move(ranking));
    policy.weights.push_back(prob);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return policy;
}

double pl_permutation_prob(const ScoreTable& scores, const Id& query,
                           double beta, const Ranking& ranking) {
  require_beta(beta);
  const ScoreTable::Row& row = scores.row(query);
  std::size_t n = row.size();
  if (ranking.items.size() != n)
    throw std::invalid_argument(
        "ranking is not a permutation of the candidate set");

  std::vector<std::size_t> positions;
  positions.reserve(n);
  std::vector<bool> used(n, false);
  for (const Id& item : ranking.items) {
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i] && row[i].first == item) {
        positions.push_back(i);
        used[i] = true;
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument(
          "ranking is not a permutation of the candidate set");
  }

  std::vector<bool> taken(n, false);
  double prob = 1.0;
  for (std::size_t pos : positions) {
    double max_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
      if (!taken[i]) max_score = std::max(max_score, row[i].second);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (!taken[i]) total += std::exp((row[i].second - max_score) / beta);
    prob *= std::exp((row[pos].second - max_score) / beta) / total;
    taken[pos] = true;
  }
  return prob;
}

PolicySample static_policy(const ScoreTable& scores, const Id& query,
                           std::optional<int> depth) {
  PolicySample policy;
  policy.query = query;
  policy.rankings.push_back(static_ranking(scores, query, depth));
  policy.weights.push_back(1.0);
  policy.samples = 1;
  return policy;
}

}  // namespace gass
