// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#pragma once

#include <array>
#include <string>
#include <vector>

#include "gass/core.hpp"
#include "gass/metrics.hpp"

namespace gass {

// The four reported metric series, in fixed column order.
inline constexpr std::array<const char*, 4> kMetricNames = {
    "da_ss_within_mean", "ga_ss_within_mean", "ga_ss_sum_of_product",
    "ga_ss_product_of_sum"};

struct SweepCell {
  std::string ranker;  // display name as requested (mpc/gmpc/mpv/gmpv)
  BetaSpec beta;
  double da_ss_within_mean = 0.0;
  double ga_ss_within_mean = 0.0;
  double ga_ss_sum_of_product = 0.0;
  double ga_ss_product_of_sum = 0.0;

  double metric(int index) const;
};

struct SweepConfig {
  BrowsingModel browse;
  double epsilon = kDefaultEpsilon;
  int samples = 100;
  std::uint64_t seed = 42;
  std::optional<int> depth;
  QueryWeighting weighting = QueryWeighting::Prior;
  int threads = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // complete grid, rankers x betas
  SweepConfig config;
};

// The paper's stochasticity grid.
std::vector<BetaSpec> default_beta_grid();

// Evaluates the four metrics for every (ranker, beta) cell. Evaluation
// errors are rethrown with the cell coordinates attached.
SweepResult sweep(const Model& model, const std::vector<std::string>& rankers,
                  const std::vector<BetaSpec>& betas,
                  const SweepConfig& config);

// (x - min) / (max - min); a constant series maps to all zeros.
std::vector<double> min_max_normalize(const std::vector<double>& series);

// Kendall tau-b over all pairs. Two fully tied series count as perfectly
// concordant (1.0); a single fully tied series yields 0. Throws
// std::invalid_argument on length mismatch or length < 2.
double kendall_tau(const std::vector<double>& xs,
                   const std::vector<double>& ys);

// Pairwise tau over the four metric series of a sweep; symmetric, unit
// diagonal. Throws std::invalid_argument when the sweep has < 2 cells.
std::array<std::array<double, 4>, 4> correlation_matrix(
    const SweepResult& sweep);

/// One row of the built-in analytic scenario: what each query retrieves and
/// the resulting exact metric values.
struct ToyRow {
  std::string q1_retrieved;  // "t1", "t2", or "t1+t2"
  std::string q2_retrieved;
  double ga_ss_within_q1 = 0.0;
  double ga_ss_within_q2 = 0.0;
  double ga_ss_sum_of_product = 0.0;
  double ga_ss_product_of_sum = 0.0;
};

// The fixed two-query scenario: equal query priors, two intents, two
// equal-size groups each devoted to one intent, ideal success on retrieved
// intents and zero smoothing. All 9 retrieval systems are evaluated; values
// are exact rationals.
std::vector<ToyRow> toy_table();

}  // namespace gass
