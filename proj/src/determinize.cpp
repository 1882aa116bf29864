#include "bellfac/determinize.hpp"

#include <set>

#include "bellfac/analysis.hpp"

namespace bellfac {

std::vector<std::size_t> response_cells(const NoisePartition& noise,
                                        const std::vector<Rational>& probabilities) {
  std::vector<std::size_t> out(noise.cell_count());
  std::size_t k = 0;
  Rational cum = probabilities.empty() ? Rational(1) : probabilities[0];
  for (std::size_t j = 0; j < noise.cell_count(); ++j) {
    const Rational& left = noise.breakpoints[j];
    while (k + 1 < probabilities.size() && cum <= left) {
      ++k;
      cum += probabilities[k];
    }
    out[j] = k;
  }
  return out;
}

AugmentedScenario determinize(const Scenario& s, const std::optional<std::string>& context_id) {
  if (auto report = validate(s); !report.ok()) throw ValidationError(report);

  AugmentedScenario aug;
  aug.base = s;
  if (context_id) {
    const Context& ctx = s.context(*context_id);  // throws on unknown id
    aug.base.contexts = {ctx};
  }

  std::set<Rational> points{Rational(0), Rational(1)};
  for (const auto& ctx : aug.base.contexts) {
    for (const auto& p : s.lambda.points) {
      Rational cum(0);
      for (const auto& v : ctx.table.at(p.id)) {
        if (v.is_zero()) continue;
        cum += v;
        points.insert(cum);
      }
    }
  }
  aug.noise.breakpoints.assign(points.begin(), points.end());

  for (const auto& ctx : aug.base.contexts) {
    ResponseTable rt;
    for (const auto& p : s.lambda.points)
      rt.rows[p.id] = response_cells(aug.noise, ctx.table.at(p.id));
    aug.responses[ctx.id] = std::move(rt);
  }
  return aug;
}

Scenario marginalize(const AugmentedScenario& aug) {
  Scenario s = aug.base;
  for (auto& ctx : s.contexts) {
    const ResponseTable& rt = aug.responses.at(ctx.id);
    std::size_t n = tuple_count(s.context_shape(ctx));
    for (auto& [lid, row] : ctx.table) {
      row.assign(n, Rational(0));
      const auto& cells = rt.rows.at(lid);
      for (std::size_t j = 0; j < cells.size(); ++j) row[cells[j]] += aug.noise.cell_weight(j);
    }
  }
  return s;
}

Scenario induced_scenario(const AugmentedScenario& aug) {
  Scenario s;
  s.name = aug.base.name + "@gamma";
  s.parties = aug.base.parties;
  s.measurements = aug.base.measurements;

  for (const auto& p : aug.base.lambda.points) {
    for (std::size_t j = 0; j < aug.noise.cell_count(); ++j) {
      std::string gid = p.id + "#" + std::to_string(j);
      s.lambda.points.push_back({gid, p.weight * aug.noise.cell_weight(j)});
    }
  }

  for (const auto& base_ctx : aug.base.contexts) {
    Context ctx;
    ctx.id = base_ctx.id;
    ctx.measurement_ids = base_ctx.measurement_ids;
    std::size_t n = tuple_count(aug.base.context_shape(base_ctx));
    const ResponseTable& rt = aug.responses.at(base_ctx.id);
    for (const auto& p : aug.base.lambda.points) {
      const auto& cells = rt.rows.at(p.id);
      for (std::size_t j = 0; j < cells.size(); ++j) {
        std::vector<Rational> row(n, Rational(0));
        row[cells[j]] = Rational(1);
        ctx.table[p.id + "#" + std::to_string(j)] = std::move(row);
      }
    }
    s.contexts.push_back(std::move(ctx));
  }
  return s;
}

bool is_gamma_factorizable(const AugmentedScenario& aug) {
  return is_ch_factorizable(induced_scenario(aug)).first;
}

}  // namespace bellfac
