// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include "gass/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "gass/rankers.hpp"

namespace gass {

double SweepCell::metric(int index) const {
  switch (index) {
    case 0: return da_ss_within_mean;
    case 1: return ga_ss_within_mean;
    case 2: return ga_ss_sum_of_product;
    case 3: return ga_ss_product_of_sum;
    default: throw std::out_of_range("metric index");
  }
}

std::vector<BetaSpec> default_beta_grid() {
  std::vector<BetaSpec> grid;
  for (double b : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0})
    grid.push_back(BetaSpec{false, b});
  return grid;
}

SweepResult sweep(const Model& model, const std::vector<std::string>& rankers,
                  const std::vector<BetaSpec>& betas,
                  const SweepConfig& config) {
  SweepResult result;
  result.config = config;
  result.cells.reserve(rankers.size() * betas.size());

  EvalOptions options;
  options.browse = config.browse;
  options.epsilon = config.epsilon;
  options.weighting = config.weighting;
  options.threads = config.threads;

  PLConfig pl;
  pl.samples = config.samples;
  pl.seed = config.seed;
  pl.depth = config.depth;

  for (const std::string& ranker : rankers) {
    ScoreTable scores = build_scores(model, ranker, config.epsilon);
    for (const BetaSpec& beta : betas) {
      try {
        PolicyMap policies =
            build_policies(model, scores, beta, pl, config.threads);
        MetricReport report = evaluate_report(model, policies, options);
        SweepCell cell;
        cell.ranker = ranker;
        cell.beta = beta;
        cell.da_ss_within_mean = report.da_ss_within_mean;
        cell.ga_ss_within_mean = report.ga_ss_within_mean;
        cell.ga_ss_sum_of_product = report.ga_ss_sum_of_product;
        cell.ga_ss_product_of_sum = report.ga_ss_product_of_sum;
        result.cells.push_back(std::move(cell));
      } catch (const std::exception& e) {
        std::string beta_text =
            beta.is_static ? std::string("static") : std::to_string(beta.value);
        throw std::runtime_error("cell (" + ranker + ", beta=" + beta_text +
                                 "): " + e.what());
      }
    }
  }
  return result;
}

std::vector<double> min_max_normalize(const std::vector<double>& series) {
  if (series.empty()) throw std::invalid_argument("series is empty");
  double lo = series[0];
  double hi = series[0];
  for (double v : series) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> out(series.size(), 0.0);
  if (hi > lo)
    for (std::size_t i = 0; i < series.size(); ++i)
      out[i] = (series[i] - lo) / (hi - lo);
  return out;
}

double kendall_tau(const std::vector<double>& xs,
                   const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("series lengths differ");
  std::size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("need at least 2 observations");

  long long concordant = 0;
  long long discordant = 0;
  long long ties_x = 0;
  long long ties_y = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = xs[i] - xs[j];
      double dy = ys[i] - ys[j];
      if (dx == 0.0 && dy == 0.0) {
        ++ties_x;
        ++ties_y;
      } else if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  if (ties_x == pairs && ties_y == pairs) return 1.0;  // both constant
  double denom = std::sqrt(static_cast<double>(pairs - ties_x) *
                           static_cast<double>(pairs - ties_y));
  if (denom == 0.0) return 0.0;  // one series constant
  return static_cast<double>(concordant - discordant) / denom;
}

std::array<std::array<double, 4>, 4> correlation_matrix(
    const SweepResult& sweep) {
  if (sweep.cells.size() < 2)
    throw std::invalid_argument("sweep needs at least 2 cells");
  std::array<std::vector<double>, 4> series;
  for (int m = 0; m < 4; ++m) {
    series[m].reserve(sweep.cells.size());
    for (const SweepCell& cell : sweep.cells) series[m].push_back(cell.metric(m));
  }
  std::array<std::array<double, 4>, 4> matrix{};
  for (int a = 0; a < 4; ++a) {
    matrix[a][a] = 1.0;
    for (int b = a + 1; b < 4; ++b) {
      double tau = kendall_tau(series[a], series[b]);
      matrix[a][b] = tau;
      matrix[b][a] = tau;
    }
  }
  return matrix;
}

std::vector<ToyRow> toy_table() {
  // Two queries with p(q) = 1/2 each, two intents, two equal groups: gA only
  // wants t1, gB only wants t2; p(q|g) is uniform for both groups. Retrieved
  // intents succeed with probability exactly 1, everything else 0.
  Model model;
  const Id q1 = "q1", q2 = "q2", t1 = "t1", t2 = "t2", gA = "gA", gB = "gB";
  const Id d1 = "d1", d2 = "d2";
  model.catalog.queries.add(q1);
  model.catalog.queries.add(q2);
  model.catalog.items.add(d1);
  model.catalog.items.add(d2);
  model.catalog.intents.add(t1);
  model.catalog.intents.add(t2);
  model.catalog.groups.add(gA);
  model.catalog.groups.add(gB);
  model.query_prior.set(q1, 0.5);
  model.query_prior.set(q2, 0.5);
  model.group_prior.set(gA, 0.5);
  model.group_prior.set(gB, 0.5);
  for (const Id& q : {q1, q2}) {
    model.intent_given_query_group.set({q, gA}, Dist{{t1, 1.0}});
    model.intent_given_query_group.set({q, gB}, Dist{{t2, 1.0}});
    model.group_given_query.set(q, Dist{{gA, 0.5}, {gB, 0.5}});
  }
  for (const Id& g : {gA, gB})
    model.query_given_group.set(g, Dist{{q1, 0.5}, {q2, 0.5}});

  const std::vector<std::pair<std::string, IntentSuccess>> options = {
      {"t1", {{t1, 1.0}}},
      {"t2", {{t2, 1.0}}},
      {"t1+t2", {{t1, 1.0}, {t2, 1.0}}},
  };

  std::vector<ToyRow> rows;
  rows.reserve(options.size() * options.size());
  for (const auto& [label1, success1] : options) {
    for (const auto& [label2, success2] : options) {
      SuccessByQuery success{{q1, success1}, {q2, success2}};
      ToyRow row;
      row.q1_retrieved = label1;
      row.q2_retrieved = label2;
      row.ga_ss_within_q1 = ga_ss_within(model, q1, success1, 0.0);
      row.ga_ss_within_q2 = ga_ss_within(model, q2, success2, 0.0);
      row.ga_ss_sum_of_product = ga_ss_sum_of_product(model, success, 0.0);
      row.ga_ss_product_of_sum = ga_ss_product_of_sum(model, success, 0.0);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace gass
