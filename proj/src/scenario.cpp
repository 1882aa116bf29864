#include "bellfac/scenario.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bellfac {

const Measurement* Scenario::find_measurement(const std::string& id) const {
  for (const auto& m : measurements)
    if (m.id == id) return &m;
  return nullptr;
}

const Context* Scenario::find_context(const std::string& id) const {
  for (const auto& c : contexts)
    if (c.id == id) return &c;
  return nullptr;
}

const Measurement& Scenario::measurement(const std::string& id) const {
  if (const auto* m = find_measurement(id)) return *m;
  throw LookupError("unknown measurement id '" + id + "'");
}

const Context& Scenario::context(const std::string& id) const {
  if (const auto* c = find_context(id)) return *c;
  throw LookupError("unknown context id '" + id + "'");
}

std::vector<std::size_t> Scenario::context_shape(const Context& ctx) const {
  std::vector<std::size_t> shape;
  shape.reserve(ctx.measurement_ids.size());
  for (const auto& mid : ctx.measurement_ids) shape.push_back(measurement(mid).outcomes.size());
  return shape;
}

std::size_t tuple_count(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t r : shape) n *= r;
  return n;
}

std::vector<std::size_t> rank_to_tuple(std::size_t rank, const std::vector<std::size_t>& shape) {
  std::vector<std::size_t> tuple(shape.size(), 0);
  for (std::size_t i = shape.size(); i-- > 0;) {
    tuple[i] = rank % shape[i];
    rank /= shape[i];
  }
  return tuple;
}

std::size_t tuple_to_rank(const std::vector<std::size_t>& tuple,
                          const std::vector<std::size_t>& shape) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) rank = rank * shape[i] + tuple[i];
  return rank;
}

std::string tuple_label(const Scenario& s, const Context& ctx, std::size_t rank) {
  auto shape = s.context_shape(ctx);
  auto tuple = rank_to_tuple(rank, shape);
  std::string label;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) label += ',';
    label += s.measurement(ctx.measurement_ids[i]).outcomes[tuple[i]];
  }
  return label;
}

std::size_t label_to_rank(const Scenario& s, const Context& ctx, const std::string& label) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : label) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != ctx.measurement_ids.size())
    throw LookupError("outcome tuple '" + label + "' has " + std::to_string(parts.size()) +
                      " entries, context '" + ctx.id + "' expects " +
                      std::to_string(ctx.measurement_ids.size()));
  auto shape = s.context_shape(ctx);
  std::vector<std::size_t> tuple(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& m = s.measurement(ctx.measurement_ids[i]);
    auto it = std::find(m.outcomes.begin(), m.outcomes.end(), parts[i]);
    if (it == m.outcomes.end())
      throw LookupError("unknown outcome '" + parts[i] + "' for measurement '" + m.id + "'");
    tuple[i] = static_cast<std::size_t>(it - m.outcomes.begin());
  }
  return tuple_to_rank(tuple, shape);
}

ValidationError::ValidationError(const ValidationReport& r)
    : std::runtime_error(r.issues.empty() ? "invalid scenario"
                                          : "invalid scenario: " + r.issues.front().path + ": " +
                                                r.issues.front().message),
      report(r) {}

namespace {

std::size_t party_index(const Scenario& s, const std::string& party) {
  auto it = std::find(s.parties.begin(), s.parties.end(), party);
  return it == s.parties.end() ? s.parties.size() : static_cast<std::size_t>(it - s.parties.begin());
}

}  // namespace

ValidationReport validate(const Scenario& s) {
  ValidationReport report;
  auto add = [&](std::string path, std::string message) {
    report.issues.push_back({std::move(path), std::move(message)});
  };

  std::set<std::string> party_set(s.parties.begin(), s.parties.end());
  if (party_set.size() != s.parties.size()) add("parties", "duplicate party names");

  std::set<std::string> mids;
  for (const auto& m : s.measurements) {
    std::string path = "measurements[" + m.id + "]";
    if (!mids.insert(m.id).second) add(path, "duplicate measurement id");
    if (!party_set.count(m.party)) add(path, "unknown party '" + m.party + "'");
    if (m.outcomes.size() < 2) add(path, "fewer than 2 outcomes");
    std::set<std::string> labels(m.outcomes.begin(), m.outcomes.end());
    if (labels.size() != m.outcomes.size()) add(path, "duplicate outcome labels");
    if (m.values && m.values->size() != m.outcomes.size())
      add(path, "outcome value count differs from outcome count");
  }

  std::set<std::string> lids;
  Rational total(0);
  for (const auto& p : s.lambda.points) {
    std::string path = "lambda[" + p.id + "]";
    if (!lids.insert(p.id).second) add(path, "duplicate lambda id");
    if (!(p.weight > Rational(0))) add(path, "weight " + p.weight.str() + " is not positive");
    total += p.weight;
  }
  if (total != Rational(1)) add("lambda", "weights sum to " + total.str() + ", expected 1");

  std::set<std::string> cids;
  for (const auto& ctx : s.contexts) {
    std::string path = "contexts[" + ctx.id + "]";
    if (!cids.insert(ctx.id).second) add(path, "duplicate context id");
    if (ctx.measurement_ids.size() < 2) add(path, "fewer than 2 measurements");
    bool refs_ok = true;
    std::set<std::string> ctx_parties;
    std::size_t prev_party = 0;
    bool first = true;
    for (const auto& mid : ctx.measurement_ids) {
      const auto* m = s.find_measurement(mid);
      if (!m) {
        add(path, "unknown measurement '" + mid + "'");
        refs_ok = false;
        continue;
      }
      if (!ctx_parties.insert(m->party).second)
        add(path, "two measurements from party '" + m->party + "'");
      std::size_t pi = party_index(s, m->party);
      if (!first && pi <= prev_party)
        add(path, "measurements not listed in party declaration order");
      prev_party = pi;
      first = false;
    }
    if (!refs_ok) continue;

    auto shape = s.context_shape(ctx);
    std::size_t n = tuple_count(shape);
    for (const auto& p : s.lambda.points) {
      auto it = ctx.table.find(p.id);
      std::string lpath = path + ".table[" + p.id + "]";
      if (it == ctx.table.end()) {
        add(lpath, "missing table for lambda point");
        continue;
      }
      if (it->second.size() != n) {
        add(lpath, "table has " + std::to_string(it->second.size()) + " entries, expected " +
                       std::to_string(n));
        continue;
      }
      Rational sum(0);
      for (std::size_t r = 0; r < n; ++r) {
        const auto& v = it->second[r];
        if (v < Rational(0))
          add(lpath, "negative probability " + v.str() + " at (" + tuple_label(s, ctx, r) + ")");
        sum += v;
      }
      if (sum != Rational(1)) add(lpath, "entries sum to " + sum.str() + ", expected 1");
    }
    for (const auto& [lid, _] : ctx.table)
      if (!lids.count(lid)) add(path + ".table[" + lid + "]", "unknown lambda id");
  }

  // Cross-context marginal consistency: a measurement appearing in several
  // contexts must have identical per-lambda marginals in all of them.
  if (report.ok()) {
    std::map<std::string, const Context*> seen;  // measurement id -> first context
    for (const auto& ctx : s.contexts) {
      for (const auto& mid : ctx.measurement_ids) {
        auto [it, inserted] = seen.emplace(mid, &ctx);
        if (inserted) continue;
        const Context& first = *it->second;
        for (const auto& p : s.lambda.points) {
          auto a = marginal(s, first, mid, p.id);
          auto b = marginal(s, ctx, mid, p.id);
          if (a != b) {
            std::string la, lb;
            for (std::size_t k = 0; k < a.size(); ++k) {
              la += (k ? "," : "") + a[k].str();
              lb += (k ? "," : "") + b[k].str();
            }
            add("contexts[" + ctx.id + "]",
                "inconsistent marginal for measurement '" + mid + "' at lambda '" + p.id +
                    "': (" + lb + ") vs (" + la + ") in context '" + first.id + "'");
          }
        }
      }
    }
  }
  return report;
}

std::vector<Rational> marginal(const Scenario& s, const Context& ctx,
                               const std::string& measurement_id,
                               const std::string& lambda_id) {
  auto pos_it = std::find(ctx.measurement_ids.begin(), ctx.measurement_ids.end(), measurement_id);
  if (pos_it == ctx.measurement_ids.end())
    throw LookupError("measurement '" + measurement_id + "' not in context '" + ctx.id + "'");
  std::size_t pos = static_cast<std::size_t>(pos_it - ctx.measurement_ids.begin());
  auto row_it = ctx.table.find(lambda_id);
  if (row_it == ctx.table.end())
    throw LookupError("unknown lambda id '" + lambda_id + "' in context '" + ctx.id + "'");

  auto shape = s.context_shape(ctx);
  std::vector<Rational> out(shape[pos], Rational(0));
  for (std::size_t r = 0; r < row_it->second.size(); ++r)
    out[rank_to_tuple(r, shape)[pos]] += row_it->second[r];
  return out;
}

}  // namespace bellfac
