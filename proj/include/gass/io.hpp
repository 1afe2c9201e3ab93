// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#pragma once

#include <string>

#include "gass/analysis.hpp"
#include "gass/core.hpp"
#include "gass/estimate.hpp"
#include "gass/metrics.hpp"

namespace gass::io {

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

// "static" or the shortest decimal form of the value.
std::string format_beta(const BetaSpec& beta);

// --- interaction log (TSV: header `group query item count`, LF) -----------

InteractionLog read_log_tsv(const std::string& path);
void write_log_tsv(const InteractionLog& log, const std::string& path);

// --- precomputed tables (JSON, outer key then outcome key) ----------------

// {"item": {"intent": p, ...}, ...}
CondProbId read_intent_table(const std::string& path);
void write_intent_table(const CondProbId& table, const std::string& path);

// {"item": {"intent": p, ...}, ...}; Bernoulli values, not a distribution.
RelevanceTable read_relevance_table(const std::string& path);
void write_relevance_table(const RelevanceTable& table,
                           const std::string& path);

// --- model bundle ----------------------------------------------------------

// Single self-describing JSON bundle: catalog plus every table. Probabilities
// survive a round-trip bit-exactly.
void write_model(const Model& model, const std::string& path);
Model read_model(const std::string& path);

// --- reports ---------------------------------------------------------------

void write_report_json(const MetricReport& report, const std::string& path);
void write_report_csv(const MetricReport& report, const std::string& path);

void write_sweep_json(const SweepResult& sweep, const std::string& path);
void write_sweep_csv(const SweepResult& sweep, const std::string& path);
std::string sweep_csv_string(const SweepResult& sweep);
SweepResult read_sweep_csv(const std::string& path);

// Min-max-normalized metric series per (ranker, metric), long format:
// ranker,metric,beta,value.
void write_plot_data_csv(const SweepResult& sweep, const std::string& path);

void write_correlation_json(const std::array<std::array<double, 4>, 4>& m,
                            const std::string& path);
std::string correlation_csv_string(const std::array<std::array<double, 4>, 4>& m);
void write_correlation_csv(const std::array<std::array<double, 4>, 4>& m,
                           const std::string& path);

std::string toy_table_csv_string(const std::vector<ToyRow>& rows);

}  // namespace gass::io
