#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellfac/rational.hpp"

namespace bellfac {

/// Thrown on unknown ids and other lookup failures.
class LookupError : public std::runtime_error {
 public:
  explicit LookupError(const std::string& what) : std::runtime_error(what) {}
};

/// A measurement belonging to one party, with an ordered outcome list and
/// optional numeric outcome values (e.g. +1/-1) used by correlations.
struct Measurement {
  std::string id;
  std::string party;
  std::vector<std::string> outcomes;
  std::optional<std::vector<Rational>> values;
};

struct LambdaPoint {
  std::string id;
  Rational weight;
};

/// Finite hidden-variable space with a rational prior.
struct LambdaSpace {
  std::vector<LambdaPoint> points;
};

/// A set of jointly measured observables, one per party, with a per-lambda
/// joint outcome table. Tables are stored dense, indexed by the canonical
/// mixed-radix rank of the outcome tuple (measurements in declared order,
/// outcome indices in declared order). Missing file entries are exact zeros.
struct Context {
  std::string id;
  std::vector<std::string> measurement_ids;
  std::map<std::string, std::vector<Rational>> table;  // lambda-id -> dense joint
};

struct Scenario {
  std::string name;
  LambdaSpace lambda;
  std::vector<std::string> parties;
  std::vector<Measurement> measurements;
  std::vector<Context> contexts;

  const Measurement& measurement(const std::string& id) const;
  const Context& context(const std::string& id) const;
  const Measurement* find_measurement(const std::string& id) const;
  const Context* find_context(const std::string& id) const;

  /// Outcome counts of a context's measurements, in context order.
  std::vector<std::size_t> context_shape(const Context& ctx) const;
};

/// Mixed-radix tuple <-> rank helpers; rank order is the canonical
/// enumeration order used everywhere ties or orderings matter.
std::size_t tuple_count(const std::vector<std::size_t>& shape);
std::vector<std::size_t> rank_to_tuple(std::size_t rank, const std::vector<std::size_t>& shape);
std::size_t tuple_to_rank(const std::vector<std::size_t>& tuple,
                          const std::vector<std::size_t>& shape);

/// Outcome-tuple text form, e.g. "+1,-1": labels joined by commas in context
/// measurement order. This is also the table key syntax in scenario files.
std::string tuple_label(const Scenario& s, const Context& ctx, std::size_t rank);
std::size_t label_to_rank(const Scenario& s, const Context& ctx, const std::string& label);

struct ValidationIssue {
  std::string path;     // e.g. "contexts[AB].table[l0]"
  std::string message;  // e.g. "entries sum to 3/4, expected 1"
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Checks every structural invariant and returns all violations found.
ValidationReport validate(const Scenario& s);

/// Thrown by operations whose precondition is a valid scenario.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const ValidationReport& report);
  ValidationReport report;
};

/// Per-lambda single-measurement marginal of a context's joint table,
/// indexed by the measurement's outcome order. Sums to exactly 1.
std::vector<Rational> marginal(const Scenario& s, const Context& ctx,
                               const std::string& measurement_id,
                               const std::string& lambda_id);

}  // namespace bellfac
