#include "bellfac/analysis.hpp"

namespace bellfac {

std::pair<bool, std::optional<DeterminismWitness>> is_deterministic(const Scenario& s) {
  for (const auto& ctx : s.contexts) {
    for (const auto& p : s.lambda.points) {
      const auto& row = ctx.table.at(p.id);
      for (std::size_t r = 0; r < row.size(); ++r) {
        const auto& v = row[r];
        if (v.is_zero() || v.is_one()) continue;
        DeterminismWitness w{ctx.id, p.id, r, tuple_label(s, ctx, r), v};
        return {false, std::move(w)};
      }
    }
  }
  return {true, std::nullopt};
}

std::pair<bool, std::optional<FactorabilityWitness>> is_ch_factorizable(const Scenario& s) {
  for (const auto& ctx : s.contexts) {
    auto shape = s.context_shape(ctx);
    for (const auto& p : s.lambda.points) {
      std::vector<std::vector<Rational>> marginals;
      marginals.reserve(ctx.measurement_ids.size());
      for (const auto& mid : ctx.measurement_ids)
        marginals.push_back(marginal(s, ctx, mid, p.id));
      const auto& row = ctx.table.at(p.id);
      for (std::size_t r = 0; r < row.size(); ++r) {
        auto tuple = rank_to_tuple(r, shape);
        Rational product(1);
        for (std::size_t i = 0; i < tuple.size(); ++i) product *= marginals[i][tuple[i]];
        if (row[r] != product) {
          FactorabilityWitness w{ctx.id, p.id, r, tuple_label(s, ctx, r), row[r], product};
          return {false, std::move(w)};
        }
      }
    }
  }
  return {true, std::nullopt};
}

AnalysisReport analyze(const Scenario& s, bool determinism, bool factorability) {
  AnalysisReport report;
  if (determinism) {
    auto [det, w] = is_deterministic(s);
    report.deterministic = det;
    report.determinism_witness = std::move(w);
  }
  if (factorability) {
    auto [fac, w] = is_ch_factorizable(s);
    report.ch_factorizable = fac;
    report.ch_witness = std::move(w);
  }
  return report;
}

namespace {

// Product of outcome values along a tuple; throws if any measurement of the
// context lacks outcome values.
Rational tuple_value(const Scenario& s, const Context& ctx, const std::vector<std::size_t>& tuple) {
  Rational v(1);
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const auto& m = s.measurement(ctx.measurement_ids[i]);
    if (!m.values)
      throw LookupError("measurement '" + m.id + "' has no outcome values; correlation undefined");
    v *= (*m.values)[tuple[i]];
  }
  return v;
}

}  // namespace

Rational correlation(const Scenario& s, const std::string& context_id) {
  const Context& ctx = s.context(context_id);
  auto shape = s.context_shape(ctx);
  Rational e(0);
  for (const auto& p : s.lambda.points) {
    const auto& row = ctx.table.at(p.id);
    Rational per_lambda(0);
    for (std::size_t r = 0; r < row.size(); ++r) {
      if (row[r].is_zero()) continue;
      per_lambda += tuple_value(s, ctx, rank_to_tuple(r, shape)) * row[r];
    }
    e += p.weight * per_lambda;
  }
  return e;
}

Rational chsh(const Scenario& s, const std::array<std::string, 4>& context_ids) {
  std::array<const Context*, 4> ctx{};
  for (std::size_t i = 0; i < 4; ++i) {
    ctx[i] = &s.context(context_ids[i]);
    if (ctx[i]->measurement_ids.size() != 2)
      throw LookupError("context '" + context_ids[i] + "' is not bipartite");
  }
  const auto& a1 = ctx[0]->measurement_ids[0];
  const auto& b1 = ctx[0]->measurement_ids[1];
  const auto& b2 = ctx[1]->measurement_ids[1];
  const auto& a2 = ctx[2]->measurement_ids[0];
  auto expect = [&](std::size_t i, const std::string& ma, const std::string& mb) {
    if (ctx[i]->measurement_ids[0] != ma || ctx[i]->measurement_ids[1] != mb)
      throw LookupError("contexts do not form a CHSH pattern: expected ('" + ma + "','" + mb +
                        "') at position " + std::to_string(i + 1) + ", got ('" +
                        ctx[i]->measurement_ids[0] + "','" + ctx[i]->measurement_ids[1] + "')");
  };
  if (b2 == b1)
    throw LookupError("contexts do not form a CHSH pattern: second context repeats '" + b1 + "'");
  if (a2 == a1)
    throw LookupError("contexts do not form a CHSH pattern: third context repeats '" + a1 + "'");
  expect(1, a1, b2);
  expect(2, a2, b1);
  expect(3, a2, b2);

  return correlation(s, context_ids[0]) + correlation(s, context_ids[1]) +
         correlation(s, context_ids[2]) - correlation(s, context_ids[3]);
}

}  // namespace bellfac
