// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gass {

using Id = std::string;

// Error taxonomy shared by all modules. The CLI maps these onto exit codes.
struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  ParseError(const std::string& file, long line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
        line_number(line) {}
  explicit ParseError(const std::string& what)
      : std::runtime_error(what), line_number(0) {}
  long line_number;
};

// Probability rows must sum to one within this tolerance to validate.
inline constexpr double kSumTolerance = 1e-9;

// Default smoothing added inside group products (metrics) and the gMPC score
// product so exact zeros do not annihilate them.
inline constexpr double kDefaultEpsilon = 1e-6;

/// Ordered set of opaque string ids. Iteration follows insertion order;
/// dense indices are assigned in that order.
class IdSet {
 public:
  // Returns the dense index of `id`, inserting it if new.
  int add(const Id& id);
  std::optional<int> find(const Id& id) const;
  bool contains(const Id& id) const { return find(id).has_value(); }
  const std::vector<Id>& items() const { return order_; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  const Id& at(int index) const { return order_.at(index); }

 private:
  std::vector<Id> order_;
  std::map<Id, int> index_;
};

/// The id registries Q, D, tau, G shared by every table.
struct Catalog {
  IdSet queries;
  IdSet items;
  IdSet intents;
  IdSet groups;
};

/// One probability distribution over outcome ids. std::map keeps iteration
/// (and serialization) deterministic.
using Dist = std::map<Id, double>;

// Sum of all probabilities in a row.
double dist_sum(const Dist& d);
// Scales a row so it sums to exactly one. No-op on an all-zero row.
void dist_normalize(Dist& d);

struct QueryGroupKey {
  Id query;
  Id group;
  auto operator<=>(const QueryGroupKey&) const = default;
};

/// Keyed conditional distribution: condition key -> distribution over
/// outcome ids. Missing (key, outcome) probabilities read as zero.
template <class Key>
class CondProb {
 public:
  const Dist* row(const Key& key) const {
    auto it = rows_.find(key);
    return it == rows_.end() ? nullptr : &it->second;
  }
  double prob(const Key& key, const Id& outcome) const {
    const Dist* r = row(key);
    if (r == nullptr) return 0.0;
    auto it = r->find(outcome);
    return it == r->end() ? 0.0 : it->second;
  }
  void set(const Key& key, Dist dist) { rows_[key] = std::move(dist); }
  bool has_row(const Key& key) const { return rows_.count(key) > 0; }
  const std::map<Key, Dist>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  void renormalize() {
    for (auto& [key, dist] : rows_) dist_normalize(dist);
  }

 private:
  std::map<Key, Dist> rows_;
};

using CondProbQG = CondProb<QueryGroupKey>;  // p(.|q,g)
using CondProbId = CondProb<Id>;             // p(.|single id)

/// Marginal distribution over one id set, e.g. p(q) or p(g).
class MarginalProb {
 public:
  double prob(const Id& id) const {
    auto it = probs_.find(id);
    return it == probs_.end() ? 0.0 : it->second;
  }
  void set(const Id& id, double p) { probs_[id] = p; }
  const Dist& values() const { return probs_; }
  void renormalize() { dist_normalize(probs_); }

 private:
  Dist probs_;
};

/// Bernoulli relevance per (item, intent). Not a distribution: entries are
/// independent event probabilities, missing entries read as 0.
class RelevanceTable {
 public:
  double prob(const Id& item, const Id& intent) const {
    auto it = probs_.find({item, intent});
    return it == probs_.end() ? 0.0 : it->second;
  }
  void set(const Id& item, const Id& intent, double p) {
    probs_[{item, intent}] = p;
  }
  const std::map<std::pair<Id, Id>, double>& entries() const { return probs_; }

 private:
  std::map<std::pair<Id, Id>, double> probs_;
};

/// Static ranker scores r_{d,q} with the per-query candidate pool.
/// Candidate order is the stored order; rankers sort on top of it.
class ScoreTable {
 public:
  using Row = std::vector<std::pair<Id, double>>;
  const Row& row(const Id& query) const {
    auto it = rows_.find(query);
    if (it == rows_.end())
      throw NotFoundError("no score row for query '" + query + "'");
    return it->second;
  }
  bool has_row(const Id& query) const { return rows_.count(query) > 0; }
  void set(const Id& query, Row row) { rows_[query] = std::move(row); }
  const std::map<Id, Row>& rows() const { return rows_; }

 private:
  std::map<Id, Row> rows_;
};

/// The full probability model an evaluation runs against.
struct Model {
  Catalog catalog;
  CondProbQG item_given_query_group;    // p(d|q,g)
  CondProbId intent_given_item;         // p(t|d), keyed by item
  CondProbQG intent_given_query_group;  // p(t|q,g)
  MarginalProb query_prior;             // p(q)
  CondProbId query_given_group;         // p(q|g), keyed by group
  MarginalProb group_prior;             // p(g)
  CondProbId group_given_query;         // p(g|q), keyed by query
  RelevanceTable relevance;             // p(r_d|t)
  std::map<Id, std::vector<Id>> candidates;  // retrieval pool per query
};

/// One failed invariant: which table, which key, what rule broke.
struct Violation {
  std::string table;
  std::string key;
  std::string rule;
  std::string to_string() const { return table + "[" + key + "]: " + rule; }
};

// Checks every invariant of every table against the catalog. Violations are
// data, not exceptions: an empty result means the model is valid.
std::vector<Violation> validate(const Model& model);

// Score-table checks (finite scores, non-empty candidate rows, known ids).
// Kept separate because scores are built at evaluation time, not ingested.
std::vector<Violation> validate_scores(const ScoreTable& scores,
                                       const Catalog& catalog);

/// Product of factors that switches to summed logarithms above 8 factors.
/// Exact zeros short-circuit to zero in either mode.
double stable_product(const std::vector<double>& factors);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace gass
