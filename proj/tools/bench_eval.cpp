// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

// Times the parallel evaluation kernels against the serial reference on a
// synthetic workload. Run with an optional thread count list, e.g.
//   gass_bench 1 2 4 8

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gass/estimate.hpp"
#include "gass/io.hpp"
#include "gass/metrics.hpp"
#include "gass/rankers.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> thread_counts;
  for (int i = 1; i < argc; ++i) thread_counts.push_back(std::atoi(argv[i]));
  if (thread_counts.empty()) {
#ifdef _OPENMP
    thread_counts = {1, omp_get_max_threads()};
#else
    thread_counts = {1};
#endif
  }

  gass::SynthConfig synth;
  synth.queries = 200;
  synth.items = 1000;
  synth.intents = 10;
  synth.groups = 2;
  synth.interactions_per_group = 20000;
  synth.pool_size = 30;
  synth.seed = 7;
  std::printf("generating synthetic data (%d queries, %d items)...\n",
              synth.queries, synth.items);
  gass::SynthData data = gen_synthetic(synth);
  gass::Model model = gass::build_model(data.log, data.intent_given_item,
                                        data.relevance, &data.candidates);

  gass::ScoreTable scores = gass::build_scores(model, "gmpc");
  gass::PLConfig pl;
  pl.samples = 100;
  pl.seed = 42;
  gass::BetaSpec beta{false, 1.0};

  gass::EvalOptions options;
  options.browse.gamma = 0.8;

  std::printf("%-28s %10s %10s\n", "kernel", "threads", "seconds");

  auto start = Clock::now();
  gass::PolicyMap policies = gass::build_policies(model, scores, beta, pl, 1);
  double sample_serial = seconds_since(start);
  std::printf("%-28s %10d %10.3f\n", "pl_sample (per-query loop)", 1,
              sample_serial);

  start = Clock::now();
  gass::MetricReport reference =
      gass::evaluate_report_reference(model, policies, options);
  std::printf("%-28s %10d %10.3f\n", "evaluate (serial reference)", 1,
              seconds_since(start));

  for (int threads : thread_counts) {
    gass::EvalOptions opts = options;
    opts.threads = threads;

    start = Clock::now();
    gass::PolicyMap sampled =
        gass::build_policies(model, scores, beta, pl, threads);
    std::printf("%-28s %10d %10.3f\n", "pl_sample (parallel)", threads,
                seconds_since(start));

    start = Clock::now();
    gass::MetricReport report = gass::evaluate_report(model, sampled, opts);
    std::printf("%-28s %10d %10.3f\n", "evaluate (parallel)", threads,
                seconds_since(start));

    double diff =
        std::abs(report.ga_ss_product_of_sum - reference.ga_ss_product_of_sum);
    if (diff > 1e-9) {
      std::printf("MISMATCH vs reference: %g\n", diff);
      return 1;
    }
  }
  std::printf("all kernels agree with the serial reference\n");
  return 0;
}
