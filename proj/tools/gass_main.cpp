// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gass/analysis.hpp"
#include "gass/core.hpp"
#include "gass/estimate.hpp"
#include "gass/io.hpp"
#include "gass/metrics.hpp"
#include "gass/rankers.hpp"

namespace {

// GASS_THREADS caps the worker count; 0 falls through to the OpenMP default.
int env_threads() {
  const char* value = std::getenv("GASS_THREADS");
  if (value == nullptr) return 0;
  int n = std::atoi(value);
  return n >= 1 ? n : 0;
}

std::string csv_sibling(const std::string& json_path) {
  std::string path = json_path;
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
    return path.substr(0, path.size() - 5) + ".csv";
  return path + ".csv";
}

struct IngestOptions {
  std::string log_path, intents_path, relevance_path, out_path;
  bool renormalize = false;
};

int run_ingest(const IngestOptions& opt) {
  gass::InteractionLog log = gass::io::read_log_tsv(opt.log_path);
  gass::CondProbId intents = gass::io::read_intent_table(opt.intents_path);
  gass::RelevanceTable relevance =
      gass::io::read_relevance_table(opt.relevance_path);
  gass::Model model = gass::build_model(log, intents, relevance);
  if (opt.renormalize) {
    model.item_given_query_group.renormalize();
    model.intent_given_item.renormalize();
    model.intent_given_query_group.renormalize();
    model.query_given_group.renormalize();
    model.group_given_query.renormalize();
    model.query_prior.renormalize();
    model.group_prior.renormalize();
  }
  std::vector<gass::Violation> violations = gass::validate(model);
  if (!violations.empty()) {
    for (const gass::Violation& v : violations)
      std::cerr << v.to_string() << '\n';
    throw gass::ValidationError("model failed validation with " +
                                std::to_string(violations.size()) +
                                " violation(s)");
  }
  gass::io::write_model(model, opt.out_path);
  std::cout << "wrote " << opt.out_path << " (" << model.catalog.queries.size()
            << " queries, " << model.catalog.items.size() << " items, "
            << model.catalog.intents.size() << " intents, "
            << model.catalog.groups.size() << " groups)\n";
  return 0;
}

struct EvalOptionsCli {
  std::string model_path, ranker, beta = "1", out_path;
  double gamma = 0.8;
  double epsilon = gass::kDefaultEpsilon;
  int samples = 100;
  std::uint64_t seed = 42;
  int depth = 0;  // 0 = unlimited
  std::string weighting = "prior";
};

int run_eval(const EvalOptionsCli& opt) {
  gass::Model model = gass::io::read_model(opt.model_path);
  std::vector<gass::Violation> violations = gass::validate(model);
  if (!violations.empty()) {
    for (const gass::Violation& v : violations)
      std::cerr << v.to_string() << '\n';
    throw gass::ValidationError("model failed validation");
  }

  gass::BetaSpec beta = gass::BetaSpec::parse(opt.beta);
  gass::ScoreTable scores =
      gass::build_scores(model, opt.ranker, opt.epsilon);

  gass::PLConfig pl;
  pl.samples = opt.samples;
  pl.seed = opt.seed;
  if (opt.depth > 0) pl.depth = opt.depth;

  int threads = env_threads();
  gass::PolicyMap policies =
      gass::build_policies(model, scores, beta, pl, threads);

  gass::EvalOptions options;
  options.browse.gamma = opt.gamma;
  options.epsilon = opt.epsilon;
  options.weighting = opt.weighting == "uniform"
                          ? gass::QueryWeighting::Uniform
                          : gass::QueryWeighting::Prior;
  options.threads = threads;

  gass::MetricReport report = gass::evaluate_report(model, policies, options);
  report.meta.ranker = opt.ranker;
  report.meta.beta = gass::io::format_beta(beta);
  report.meta.gamma = opt.gamma;
  report.meta.epsilon = opt.epsilon;
  report.meta.seed = opt.seed;
  report.meta.samples = opt.samples;
  if (opt.depth > 0) report.meta.depth = opt.depth;
  report.meta.weighting = opt.weighting;

  gass::io::write_report_json(report, opt.out_path);
  gass::io::write_report_csv(report, csv_sibling(opt.out_path));
  std::cout << "ga_ss_within_mean=" << gass::io::format_double(report.ga_ss_within_mean)
            << " da_ss_within_mean=" << gass::io::format_double(report.da_ss_within_mean)
            << " sum_of_product=" << gass::io::format_double(report.ga_ss_sum_of_product)
            << " product_of_sum=" << gass::io::format_double(report.ga_ss_product_of_sum)
            << '\n';
  return 0;
}

struct SweepOptionsCli {
  std::string model_path, out_path, json_path, plot_path;
  std::vector<std::string> rankers{"mpc", "gmpc"};
  std::vector<std::string> betas;
  bool include_static = false;
  double gamma = 0.8;
  double epsilon = gass::kDefaultEpsilon;
  int samples = 100;
  std::uint64_t seed = 42;
  int depth = 0;
  std::string weighting = "prior";
};

int run_sweep(const SweepOptionsCli& opt) {
  gass::Model model = gass::io::read_model(opt.model_path);

  std::vector<gass::BetaSpec> betas;
  if (opt.betas.empty()) {
    betas = gass::default_beta_grid();
  } else {
    for (const std::string& text : opt.betas)
      betas.push_back(gass::BetaSpec::parse(text));
  }
  if (opt.include_static) betas.push_back(gass::BetaSpec{true, 0.0});

  gass::SweepConfig config;
  config.browse.gamma = opt.gamma;
  config.epsilon = opt.epsilon;
  config.samples = opt.samples;
  config.seed = opt.seed;
  if (opt.depth > 0) config.depth = opt.depth;
  config.weighting = opt.weighting == "uniform"
                         ? gass::QueryWeighting::Uniform
                         : gass::QueryWeighting::Prior;
  config.threads = env_threads();

  gass::SweepResult result = gass::sweep(model, opt.rankers, betas, config);
  gass::io::write_sweep_csv(result, opt.out_path);
  if (!opt.json_path.empty()) gass::io::write_sweep_json(result, opt.json_path);
  if (!opt.plot_path.empty())
    gass::io::write_plot_data_csv(result, opt.plot_path);
  std::cout << "wrote " << result.cells.size() << " cells to " << opt.out_path
            << '\n';
  return 0;
}

struct CorrelateOptionsCli {
  std::string sweep_path, out_path, json_path;
};

int run_correlate(const CorrelateOptionsCli& opt) {
  gass::SweepResult sweep = gass::io::read_sweep_csv(opt.sweep_path);
  auto matrix = gass::correlation_matrix(sweep);
  if (opt.out_path.empty()) {
    std::cout << gass::io::correlation_csv_string(matrix);
  } else {
    gass::io::write_correlation_csv(matrix, opt.out_path);
  }
  if (!opt.json_path.empty())
    gass::io::write_correlation_json(matrix, opt.json_path);
  return 0;
}

int run_toy(const std::string& out_path) {
  std::string csv = gass::io::toy_table_csv_string(gass::toy_table());
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw gass::ParseError(out_path, 0, "cannot open for writing");
    out << csv;
  }
  return 0;
}

struct SynthOptionsCli {
  gass::SynthConfig config;
  std::string out_dir;
};

int run_synth(const SynthOptionsCli& opt) {
  gass::SynthData data = gen_synthetic(opt.config);
  std::filesystem::create_directories(opt.out_dir);
  std::filesystem::path dir(opt.out_dir);
  gass::io::write_log_tsv(data.log, (dir / "log.tsv").string());
  gass::io::write_intent_table(data.intent_given_item,
                               (dir / "intents.json").string());
  gass::io::write_relevance_table(data.relevance,
                                  (dir / "relevance.json").string());
  std::cout << "wrote log.tsv, intents.json, relevance.json to " << opt.out_dir
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-aware search success (GA-SS) evaluation toolkit"};
  app.require_subcommand(1);

  IngestOptions ingest;
  CLI::App* cmd_ingest =
      app.add_subcommand("ingest", "Estimate a model bundle from raw inputs");
  cmd_ingest->add_option("--log", ingest.log_path, "Interaction log (TSV)")
      ->required();
  cmd_ingest
      ->add_option("--intents", ingest.intents_path, "p(t|d) table (JSON)")
      ->required();
  cmd_ingest
      ->add_option("--relevance", ingest.relevance_path,
                   "p(r_d|t) table (JSON)")
      ->required();
  cmd_ingest->add_option("--out", ingest.out_path, "Output model bundle path")
      ->required();
  cmd_ingest->add_flag("--renormalize", ingest.renormalize,
                       "Renormalize table rows before validation");

  EvalOptionsCli eval;
  CLI::App* cmd_eval =
      app.add_subcommand("eval", "Evaluate all metrics for one policy");
  cmd_eval->add_option("--model", eval.model_path, "Model bundle")->required();
  cmd_eval
      ->add_option("--ranker", eval.ranker,
                   "Static ranker: mpc, gmpc (aliases mpv, gmpv)")
      ->required()
      ->check(CLI::IsMember({"mpc", "gmpc", "mpv", "gmpv"}));
  cmd_eval->add_option("--beta", eval.beta,
                       "Softmax temperature, or 'static'")
      ->required();
  cmd_eval->add_option("--samples", eval.samples, "Rankings per query")
      ->check(CLI::PositiveNumber);
  cmd_eval->add_option("--gamma", eval.gamma, "RBP patience factor")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  cmd_eval->add_option("--epsilon", eval.epsilon, "Group-success smoothing")
      ->check(CLI::NonNegativeNumber);
  cmd_eval->add_option("--seed", eval.seed, "Master sampling seed");
  cmd_eval->add_option("--depth", eval.depth, "Ranking truncation depth")
      ->check(CLI::NonNegativeNumber);
  cmd_eval
      ->add_option("--weighting", eval.weighting,
                   "Within-query mean weighting")
      ->check(CLI::IsMember({"prior", "uniform"}));
  cmd_eval->add_option("--out", eval.out_path, "Report path (.json; CSV written alongside)")
      ->required();

  SweepOptionsCli sweep;
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "Evaluate the (ranker x beta) stochasticity grid");
  cmd_sweep->add_option("--model", sweep.model_path, "Model bundle")
      ->required();
  cmd_sweep
      ->add_option("--rankers", sweep.rankers,
                   "Rankers to sweep (default: mpc gmpc)")
      ->delimiter(',');
  cmd_sweep
      ->add_option("--betas", sweep.betas,
                   "Beta grid (default: 0.125,0.25,0.5,1,2,4,8)")
      ->delimiter(',');
  cmd_sweep->add_flag("--include-static", sweep.include_static,
                      "Append the static policy as a reference column");
  cmd_sweep->add_option("--samples", sweep.samples, "Rankings per query")
      ->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--gamma", sweep.gamma, "RBP patience factor")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  cmd_sweep->add_option("--epsilon", sweep.epsilon, "Group-success smoothing")
      ->check(CLI::NonNegativeNumber);
  cmd_sweep->add_option("--seed", sweep.seed, "Master sampling seed");
  cmd_sweep->add_option("--depth", sweep.depth, "Ranking truncation depth")
      ->check(CLI::NonNegativeNumber);
  cmd_sweep
      ->add_option("--weighting", sweep.weighting,
                   "Within-query mean weighting")
      ->check(CLI::IsMember({"prior", "uniform"}));
  cmd_sweep->add_option("--out", sweep.out_path, "Sweep CSV path")->required();
  cmd_sweep->add_option("--json", sweep.json_path, "Also write sweep JSON");
  cmd_sweep->add_option("--plot-data", sweep.plot_path,
                        "Also write normalized plot-data CSV");

  CorrelateOptionsCli correlate;
  CLI::App* cmd_correlate = app.add_subcommand(
      "correlate", "Kendall correlation matrix of a sweep's metrics");
  cmd_correlate->add_option("--sweep", correlate.sweep_path, "Sweep CSV")
      ->required();
  cmd_correlate->add_option("--out", correlate.out_path,
                            "Matrix CSV path (default: stdout)");
  cmd_correlate->add_option("--json", correlate.json_path,
                            "Also write matrix JSON");

  std::string toy_out;
  CLI::App* cmd_toy = app.add_subcommand(
      "toy", "Print the built-in two-query analytic scenario table");
  cmd_toy->add_option("--out", toy_out, "CSV path (default: stdout)");

  SynthOptionsCli synth;
  CLI::App* cmd_synth =
      app.add_subcommand("synth", "Generate a synthetic dataset");
  cmd_synth->add_option("--queries", synth.config.queries, "Query count")
      ->check(CLI::PositiveNumber);
  cmd_synth->add_option("--items", synth.config.items, "Item count")
      ->check(CLI::PositiveNumber);
  cmd_synth->add_option("--intents", synth.config.intents, "Intent count")
      ->check(CLI::PositiveNumber);
  cmd_synth->add_option("--groups", synth.config.groups, "Group count")
      ->check(CLI::PositiveNumber);
  cmd_synth
      ->add_option("--group-concentration",
                   synth.config.group_intent_concentration,
                   "0 = disjoint group preferences, 1 = identical")
      ->check(CLI::Range(0.0, 1.0));
  cmd_synth
      ->add_option("--item-concentration",
                   synth.config.item_intent_concentration,
                   "Dirichlet spread of item-intent affinity")
      ->check(CLI::PositiveNumber);
  cmd_synth
      ->add_option("--interactions", synth.config.interactions_per_group,
                   "Interactions per group")
      ->check(CLI::PositiveNumber);
  cmd_synth->add_option("--pool-size", synth.config.pool_size,
                        "Candidate items per query")
      ->check(CLI::PositiveNumber);
  cmd_synth->add_option("--seed", synth.config.seed, "Generator seed");
  cmd_synth->add_option("--out", synth.out_dir, "Output directory")
      ->required();

  try {
    app.parse(argc, argv);
    if (cmd_ingest->parsed()) return run_ingest(ingest);
    if (cmd_eval->parsed()) return run_eval(eval);
    if (cmd_sweep->parsed()) return run_sweep(sweep);
    if (cmd_correlate->parsed()) return run_correlate(correlate);
    if (cmd_toy->parsed()) return run_toy(toy_out);
    if (cmd_synth->parsed()) return run_synth(synth);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends: exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const gass::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const gass::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 3;
  } catch (const gass::NotFoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const gass::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
