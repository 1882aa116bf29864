#include "bellfac/factorize.hpp"

#include <set>

namespace bellfac {

std::variant<FactorizedModel, NotFactorizable> factorize_independent(const Scenario& s) {
  if (auto report = validate(s); !report.ok()) throw ValidationError(report);

  if (auto [fac, witness] = is_ch_factorizable(s); !fac)
    return NotFactorizable{std::move(*witness)};

  FactorizedModel fm;
  fm.base = s;

  // First context carrying each measurement; marginals agree across
  // contexts by the validated consistency invariant.
  std::map<std::string, const Context*> home;
  for (const auto& ctx : s.contexts)
    for (const auto& mid : ctx.measurement_ids) home.emplace(mid, &ctx);

  for (const auto& party : s.parties) {
    std::set<Rational> points{Rational(0), Rational(1)};
    std::vector<const Measurement*> members;
    for (const auto& m : s.measurements) {
      if (m.party != party || !home.count(m.id)) continue;
      members.push_back(&m);
      for (const auto& p : s.lambda.points) {
        Rational cum(0);
        for (const auto& v : marginal(s, *home.at(m.id), m.id, p.id)) {
          if (v.is_zero()) continue;
          cum += v;
          points.insert(cum);
        }
      }
    }
    NoisePartition noise;
    noise.breakpoints.assign(points.begin(), points.end());
    for (const auto* m : members) {
      ResponseTable rt;
      for (const auto& p : s.lambda.points)
        rt.rows[p.id] = response_cells(noise, marginal(s, *home.at(m->id), m->id, p.id));
      fm.responses[m->id] = std::move(rt);
    }
    fm.xi[party] = std::move(noise);
  }

  for (const auto& ctx : s.contexts)
    for (const auto& p : s.lambda.points)
      if (reconstruct(fm, ctx.id, p.id) != ctx.table.at(p.id))
        throw std::logic_error("factorized reconstruction mismatch in context '" + ctx.id +
                               "' at lambda '" + p.id + "'");
  return fm;
}

std::vector<Rational> reconstruct(const FactorizedModel& fm, const std::string& context_id,
                                  const std::string& lambda_id) {
  const Scenario& s = fm.base;
  const Context& ctx = s.context(context_id);
  auto shape = s.context_shape(ctx);

  std::vector<const NoisePartition*> noises;
  std::vector<const std::vector<std::size_t>*> cells;
  for (const auto& mid : ctx.measurement_ids) {
    const auto& m = s.measurement(mid);
    auto xit = fm.xi.find(m.party);
    auto rit = fm.responses.find(mid);
    if (xit == fm.xi.end() || rit == fm.responses.end())
      throw LookupError("no factorized responses for measurement '" + mid + "'");
    auto row = rit->second.rows.find(lambda_id);
    if (row == rit->second.rows.end())
      throw LookupError("unknown lambda id '" + lambda_id + "'");
    noises.push_back(&xit->second);
    cells.push_back(&row->second);
  }

  std::vector<Rational> out(tuple_count(shape), Rational(0));
  std::vector<std::size_t> idx(noises.size(), 0);
  std::vector<std::size_t> tuple(noises.size(), 0);
  for (;;) {
    Rational w(1);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      w *= noises[i]->cell_weight(idx[i]);
      tuple[i] = (*cells[i])[idx[i]];
    }
    out[tuple_to_rank(tuple, shape)] += w;

    std::size_t i = idx.size();
    while (i-- > 0) {
      if (++idx[i] < noises[i]->cell_count()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

bool verify_lemma_iii(const FactorizedModel& fm) {
  const Scenario& s = fm.base;
  for (const auto& ctx : s.contexts) {
    auto shape = s.context_shape(ctx);
    for (const auto& p : s.lambda.points) {
      auto joint = reconstruct(fm, ctx.id, p.id);
      std::vector<std::vector<Rational>> marg(shape.size());
      for (std::size_t i = 0; i < shape.size(); ++i) marg[i].assign(shape[i], Rational(0));
      for (std::size_t r = 0; r < joint.size(); ++r) {
        auto tuple = rank_to_tuple(r, shape);
        for (std::size_t i = 0; i < shape.size(); ++i) marg[i][tuple[i]] += joint[r];
      }
      for (std::size_t r = 0; r < joint.size(); ++r) {
        auto tuple = rank_to_tuple(r, shape);
        Rational product(1);
        for (std::size_t i = 0; i < shape.size(); ++i) product *= marg[i][tuple[i]];
        if (joint[r] != product) return false;
      }
    }
  }
  return true;
}

AugmentedScenario build_shared_noise(const Scenario& s) {
  AugmentedScenario aug = determinize(s);
  aug.shared_noise = true;
  return aug;
}

}  // namespace bellfac
