// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#include "gass/io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace gass::io {

using nlohmann::json;

std::string format_double(double value) { return gass::format_double(value); }

std::string format_beta(const BetaSpec& beta) {
  return beta.is_static ? "static" : format_double(beta.value);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, 0, "cannot open for writing");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Strips one trailing CR so CRLF inputs parse too.
void chomp(std::string* line) {
  if (!line->empty() && line->back() == '\r') line->pop_back();
}

}  // namespace

// ---------------------------------------------------------------------------
// Interaction log.
// ---------------------------------------------------------------------------

InteractionLog read_log_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open");

  std::string line;
  long line_number = 0;
  if (!std::getline(in, line)) throw ParseError(path, 1, "empty log file");
  ++line_number;
  chomp(&line);
  std::vector<std::string> header = split(line, '\t');
  if (header != std::vector<std::string>{"group", "query", "item", "count"})
    throw ParseError(path, 1, "expected header 'group\\tquery\\titem\\tcount'");

  InteractionLog log;
  while (std::getline(in, line)) {
    ++line_number;
    chomp(&line);
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 4)
      throw ParseError(path, line_number, "expected 4 tab-separated fields");
    InteractionRow row;
    row.group = fields[0];
    row.query = fields[1];
    row.item = fields[2];
    if (row.group.empty() || row.query.empty() || row.item.empty())
      throw ParseError(path, line_number, "empty id");
    auto [ptr, ec] = std::from_chars(
        fields[3].data(), fields[3].data() + fields[3].size(), row.count);
    if (ec != std::errc() || ptr != fields[3].data() + fields[3].size() ||
        row.count < 1)
      throw ParseError(path, line_number,
                       "count must be a positive integer, got '" + fields[3] +
                           "'");
    log.rows.push_back(std::move(row));
  }
  if (log.rows.empty()) throw ParseError(path, line_number, "log has no rows");
  return log;
}

void write_log_tsv(const InteractionLog& log, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "group\tquery\titem\tcount\n";
  for (const InteractionRow& row : log.rows)
    out << row.group << '\t' << row.query << '\t' << row.item << '\t'
        << row.count << '\n';
}

// ---------------------------------------------------------------------------
// Precomputed tables.
// ---------------------------------------------------------------------------

namespace {

json nested_to_json(const std::map<Id, Dist>& rows) {
  json out = json::object();
  for (const auto& [key, dist] : rows) {
    json row = json::object();
    for (const auto& [outcome, p] : dist) row[outcome] = p;
    out[key] = std::move(row);
  }
  return out;
}

void json_to_nested(const json& obj, const std::string& path,
                    const std::string& what,
                    const std::function<void(const Id&, const Id&, double)>&
                        sink) {
  if (!obj.is_object())
    throw ParseError(path, 0, what + " must be a JSON object");
  for (const auto& [key, row] : obj.items()) {
    if (!row.is_object())
      throw ParseError(path, 0, what + " row '" + key + "' must be an object");
    for (const auto& [outcome, p] : row.items()) {
      if (!p.is_number())
        throw ParseError(path, 0,
                         what + " value for ('" + key + "','" + outcome +
                             "') must be a number");
      sink(key, outcome, p.get<double>());
    }
  }
}

}  // namespace

CondProbId read_intent_table(const std::string& path) {
  json obj = parse_json_file(path);
  std::map<Id, Dist> rows;
  json_to_nested(obj, path, "intent table",
                 [&](const Id& item, const Id& intent, double p) {
                   rows[item][intent] = p;
                 });
  CondProbId table;
  for (auto& [item, dist] : rows) table.set(item, std::move(dist));
  return table;
}

void write_intent_table(const CondProbId& table, const std::string& path) {
  open_out(path) << nested_to_json(table.rows()).dump(2) << '\n';
}

RelevanceTable read_relevance_table(const std::string& path) {
  json obj = parse_json_file(path);
  RelevanceTable table;
  json_to_nested(obj, path, "relevance table",
                 [&](const Id& item, const Id& intent, double p) {
                   table.set(item, intent, p);
                 });
  return table;
}

void write_relevance_table(const RelevanceTable& table,
                           const std::string& path) {
  std::map<Id, Dist> rows;
  for (const auto& [key, p] : table.entries()) rows[key.first][key.second] = p;
  open_out(path) << nested_to_json(rows).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Model bundle.
// ---------------------------------------------------------------------------

namespace {

json qg_to_json(const CondProbQG& table) {
  json out = json::object();
  for (const auto& [key, dist] : table.rows()) {
    json row = json::object();
    for (const auto& [outcome, p] : dist) row[outcome] = p;
    out[key.query][key.group] = std::move(row);
  }
  return out;
}

CondProbQG json_to_qg(const json& obj, const std::string& path,
                      const std::string& what) {
  CondProbQG table;
  if (!obj.is_object()) throw ParseError(path, 0, what + " must be an object");
  for (const auto& [query, groups] : obj.items()) {
    if (!groups.is_object())
      throw ParseError(path, 0, what + "['" + query + "'] must be an object");
    for (const auto& [group, row] : groups.items()) {
      Dist dist;
      for (const auto& [outcome, p] : row.items())
        dist[outcome] = p.get<double>();
      table.set({query, group}, std::move(dist));
    }
  }
  return table;
}

json idset_to_json(const IdSet& set) {
  json arr = json::array();
  for (const Id& id : set.items()) arr.push_back(id);
  return arr;
}

void json_to_idset(const json& arr, IdSet* set) {
  for (const auto& id : arr) set->add(id.get<Id>());
}

}  // namespace

void write_model(const Model& model, const std::string& path) {
  json bundle;
  bundle["format"] = "gass-model";
  bundle["version"] = 1;
  bundle["tool_version"] = kToolVersion;
  bundle["catalog"]["queries"] = idset_to_json(model.catalog.queries);
  bundle["catalog"]["items"] = idset_to_json(model.catalog.items);
  bundle["catalog"]["intents"] = idset_to_json(model.catalog.intents);
  bundle["catalog"]["groups"] = idset_to_json(model.catalog.groups);
  bundle["item_given_query_group"] = qg_to_json(model.item_given_query_group);
  bundle["intent_given_item"] = nested_to_json(model.intent_given_item.rows());
  bundle["intent_given_query_group"] =
      qg_to_json(model.intent_given_query_group);
  bundle["query_prior"] = json(model.query_prior.values());
  bundle["query_given_group"] = nested_to_json(model.query_given_group.rows());
  bundle["group_prior"] = json(model.group_prior.values());
  bundle["group_given_query"] = nested_to_json(model.group_given_query.rows());
  std::map<Id, Dist> relevance_rows;
  for (const auto& [key, p] : model.relevance.entries())
    relevance_rows[key.first][key.second] = p;
  bundle["relevance"] = nested_to_json(relevance_rows);
  json candidates = json::object();
  for (const auto& [query, pool] : model.candidates) {
    json arr = json::array();
    for (const Id& item : pool) arr.push_back(item);
    candidates[query] = std::move(arr);
  }
  bundle["candidates"] = std::move(candidates);
  open_out(path) << bundle.dump(2) << '\n';
}

Model read_model(const std::string& path) {
  json bundle = parse_json_file(path);
  if (!bundle.is_object() || bundle.value("format", "") != "gass-model")
    throw ParseError(path, 0, "not a gass-model bundle");
  if (bundle.value("version", 0) != 1)
    throw ParseError(path, 0, "unsupported bundle version");

  Model model;
  const json& catalog = bundle.at("catalog");
  json_to_idset(catalog.at("queries"), &model.catalog.queries);
  json_to_idset(catalog.at("items"), &model.catalog.items);
  json_to_idset(catalog.at("intents"), &model.catalog.intents);
  json_to_idset(catalog.at("groups"), &model.catalog.groups);

  model.item_given_query_group =
      json_to_qg(bundle.at("item_given_query_group"), path,
                 "item_given_query_group");
  model.intent_given_query_group =
      json_to_qg(bundle.at("intent_given_query_group"), path,
                 "intent_given_query_group");
  {
    std::map<Id, Dist> rows;
    for (const auto& [item, row] : bundle.at("intent_given_item").items())
      for (const auto& [intent, p] : row.items())
        rows[item][intent] = p.get<double>();
    for (auto& [item, dist] : rows)
      model.intent_given_item.set(item, std::move(dist));
  }
  for (const auto& [query, p] : bundle.at("query_prior").items())
    model.query_prior.set(query, p.get<double>());
  for (const auto& [group, p] : bundle.at("group_prior").items())
    model.group_prior.set(group, p.get<double>());
  {
    std::map<Id, Dist> rows;
    for (const auto& [group, row] : bundle.at("query_given_group").items())
      for (const auto& [query, p] : row.items())
        rows[group][query] = p.get<double>();
    for (auto& [group, dist] : rows)
      model.query_given_group.set(group, std::move(dist));
  }
  {
    std::map<Id, Dist> rows;
    for (const auto& [query, row] : bundle.at("group_given_query").items())
      for (const auto& [group, p] : row.items())
        rows[query][group] = p.get<double>();
    for (auto& [query, dist] : rows)
      model.group_given_query.set(query, std::move(dist));
  }
  for (const auto& [item, row] : bundle.at("relevance").items())
    for (const auto& [intent, p] : row.items())
      model.relevance.set(item, intent, p.get<double>());
  for (const auto& [query, pool] : bundle.at("candidates").items()) {
    std::vector<Id> items;
    for (const auto& item : pool) items.push_back(item.get<Id>());
    model.candidates[query] = std::move(items);
  }
  return model;
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

namespace {

json meta_to_json(const ReportMeta& meta) {
  json out;
  out["ranker"] = meta.ranker;
  out["beta"] = meta.beta;
  out["gamma"] = meta.gamma;
  out["epsilon"] = meta.epsilon;
  out["seed"] = meta.seed;
  out["samples"] = meta.samples;
  out["depth"] = meta.depth ? json(*meta.depth) : json(nullptr);
  out["weighting"] = meta.weighting;
  out["tool_version"] = kToolVersion;
  return out;
}

}  // namespace

void write_report_json(const MetricReport& report, const std::string& path) {
  json out;
  out["metadata"] = meta_to_json(report.meta);
  json per_query = json::object();
  for (const auto& [query, qm] : report.per_query) {
    json row;
    row["da_ss_within"] = qm.da_ss_within;
    row["ga_ss_within"] = qm.ga_ss_within;
    json groups = json::object();
    for (const auto& [group, s] : qm.group_success) groups[group] = s;
    row["group_success"] = std::move(groups);
    per_query[query] = std::move(row);
  }
  out["per_query"] = std::move(per_query);
  out["aggregate"]["da_ss_within_mean"] = report.da_ss_within_mean;
  out["aggregate"]["ga_ss_within_mean"] = report.ga_ss_within_mean;
  out["aggregate"]["ga_ss_sum_of_product"] = report.ga_ss_sum_of_product;
  out["aggregate"]["ga_ss_product_of_sum"] = report.ga_ss_product_of_sum;
  open_out(path) << out.dump(2) << '\n';
}

void write_report_csv(const MetricReport& report, const std::string& path) {
  std::ofstream out = open_out(path);
  std::vector<Id> groups;
  if (!report.per_query.empty())
    for (const auto& [group, s] : report.per_query.begin()->second.group_success)
      groups.push_back(group);

  out << "query,da_ss_within,ga_ss_within,ga_ss_sum_of_product,"
         "ga_ss_product_of_sum";
  for (const Id& group : groups) out << ",success:" << group;
  out << '\n';
  for (const auto& [query, qm] : report.per_query) {
    out << query << ',' << format_double(qm.da_ss_within) << ','
        << format_double(qm.ga_ss_within) << ",,";
    for (const Id& group : groups)
      out << ',' << format_double(qm.group_success.at(group));
    out << '\n';
  }
  // Aggregate row: empty query id, across-query fields filled.
  out << ',' << format_double(report.da_ss_within_mean) << ','
      << format_double(report.ga_ss_within_mean) << ','
      << format_double(report.ga_ss_sum_of_product) << ','
      << format_double(report.ga_ss_product_of_sum);
  for (std::size_t i = 0; i < groups.size(); ++i) out << ',';
  out << '\n';
}

void write_sweep_json(const SweepResult& sweep, const std::string& path) {
  json out;
  out["metadata"]["gamma"] = sweep.config.browse.gamma;
  out["metadata"]["epsilon"] = sweep.config.epsilon;
  out["metadata"]["samples"] = sweep.config.samples;
  out["metadata"]["seed"] = sweep.config.seed;
  out["metadata"]["depth"] =
      sweep.config.depth ? json(*sweep.config.depth) : json(nullptr);
  out["metadata"]["weighting"] =
      sweep.config.weighting == QueryWeighting::Prior ? "prior" : "uniform";
  out["metadata"]["tool_version"] = kToolVersion;
  json cells = json::array();
  for (const SweepCell& cell : sweep.cells) {
    json row;
    row["ranker"] = cell.ranker;
    row["beta"] = format_beta(cell.beta);
    row["da_ss_within_mean"] = cell.da_ss_within_mean;
    row["ga_ss_within_mean"] = cell.ga_ss_within_mean;
    row["ga_ss_sum_of_product"] = cell.ga_ss_sum_of_product;
    row["ga_ss_product_of_sum"] = cell.ga_ss_product_of_sum;
    cells.push_back(std::move(row));
  }
  out["cells"] = std::move(cells);
  open_out(path) << out.dump(2) << '\n';
}

std::string sweep_csv_string(const SweepResult& sweep) {
  std::ostringstream out;
  out << "ranker,beta,da_ss_within_mean,ga_ss_within_mean,"
         "ga_ss_sum_of_product,ga_ss_product_of_sum\n";
  for (const SweepCell& cell : sweep.cells)
    out << cell.ranker << ',' << format_beta(cell.beta) << ','
        << format_double(cell.da_ss_within_mean) << ','
        << format_double(cell.ga_ss_within_mean) << ','
        << format_double(cell.ga_ss_sum_of_product) << ','
        << format_double(cell.ga_ss_product_of_sum) << '\n';
  return out.str();
}

void write_sweep_csv(const SweepResult& sweep, const std::string& path) {
  open_out(path) << sweep_csv_string(sweep);
}

SweepResult read_sweep_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open");
  std::string line;
  long line_number = 0;
  if (!std::getline(in, line)) throw ParseError(path, 1, "empty sweep file");
  ++line_number;
  chomp(&line);
  if (split(line, ',') !=
      std::vector<std::string>{"ranker", "beta", "da_ss_within_mean",
                               "ga_ss_within_mean", "ga_ss_sum_of_product",
                               "ga_ss_product_of_sum"})
    throw ParseError(path, 1, "unexpected sweep CSV header");

  SweepResult sweep;
  while (std::getline(in, line)) {
    ++line_number;
    chomp(&line);
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 6)
      throw ParseError(path, line_number, "expected 6 fields");
    SweepCell cell;
    cell.ranker = fields[0];
    try {
      cell.beta = BetaSpec::parse(fields[1]);
      cell.da_ss_within_mean = std::stod(fields[2]);
      cell.ga_ss_within_mean = std::stod(fields[3]);
      cell.ga_ss_sum_of_product = std::stod(fields[4]);
      cell.ga_ss_product_of_sum = std::stod(fields[5]);
    } catch (const std::exception& e) {
      throw ParseError(path, line_number, e.what());
    }
    sweep.cells.push_back(std::move(cell));
  }
  if (sweep.cells.empty())
    throw ParseError(path, line_number, "sweep has no cells");
  return sweep;
}

void write_plot_data_csv(const SweepResult& sweep, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "ranker,metric,beta,normalized_value\n";
  for (int m = 0; m < 4; ++m) {
    std::vector<double> series;
    series.reserve(sweep.cells.size());
    for (const SweepCell& cell : sweep.cells) series.push_back(cell.metric(m));
    std::vector<double> normalized = min_max_normalize(series);
    for (std::size_t i = 0; i < sweep.cells.size(); ++i)
      out << sweep.cells[i].ranker << ',' << kMetricNames[m] << ','
          << format_beta(sweep.cells[i].beta) << ','
          << format_double(normalized[i]) << '\n';
  }
}

void write_correlation_json(const std::array<std::array<double, 4>, 4>& m,
                            const std::string& path) {
  json out;
  json names = json::array();
  for (const char* name : kMetricNames) names.push_back(name);
  out["metrics"] = std::move(names);
  json matrix = json::array();
  for (int a = 0; a < 4; ++a) {
    json row = json::array();
    for (int b = 0; b < 4; ++b) row.push_back(m[a][b]);
    matrix.push_back(std::move(row));
  }
  out["kendall_tau"] = std::move(matrix);
  open_out(path) << out.dump(2) << '\n';
}

std::string correlation_csv_string(
    const std::array<std::array<double, 4>, 4>& m) {
  std::ostringstream out;
  out << "metric";
  for (const char* name : kMetricNames) out << ',' << name;
  out << '\n';
  for (int a = 0; a < 4; ++a) {
    out << kMetricNames[a];
    for (int b = 0; b < 4; ++b) out << ',' << format_double(m[a][b]);
    out << '\n';
  }
  return out.str();
}

void write_correlation_csv(const std::array<std::array<double, 4>, 4>& m,
                           const std::string& path) {
  open_out(path) << correlation_csv_string(m);
}

std::string toy_table_csv_string(const std::vector<ToyRow>& rows) {
  std::ostringstream out;
  out << "q1_retrieved,q2_retrieved,ga_ss_within_q1,ga_ss_within_q2,"
         "ga_ss_sum_of_product,ga_ss_product_of_sum\n";
  for (const ToyRow& row : rows)
    out << row.q1_retrieved << ',' << row.q2_retrieved << ','
        << format_double(row.ga_ss_within_q1) << ','
        << format_double(row.ga_ss_within_q2) << ','
        << format_double(row.ga_ss_sum_of_product) << ','
        << format_double(row.ga_ss_product_of_sum) << '\n';
  return out.str();
}

}  // namespace gass::io
