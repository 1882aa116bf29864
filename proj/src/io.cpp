#include "bellfac/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bellfac/demos.hpp"

namespace bellfac {

namespace {

Rational rational_field(const ordered_json& j, const std::string& where) {
  if (!j.is_string())
    throw FileFormatError(where + ": probabilities and weights must be \"p/q\" strings");
  return Rational::parse(j.get<std::string>());
}

const ordered_json& require(const ordered_json& j, const std::string& key,
                            const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw FileFormatError(where + ": missing key \"" + key + "\"");
  return *it;
}

std::string require_string(const ordered_json& j, const std::string& key,
                           const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_string()) throw FileFormatError(where + ": key \"" + key + "\" must be a string");
  return v.get<std::string>();
}

ordered_json breakpoints_to_json(const NoisePartition& noise) {
  ordered_json arr = ordered_json::array();
  for (const auto& b : noise.breakpoints) arr.push_back(b.str());
  return arr;
}

NoisePartition breakpoints_from_json(const ordered_json& j, const std::string& where) {
  if (!j.is_array()) throw FileFormatError(where + ": breakpoints must be an array");
  NoisePartition noise;
  for (const auto& b : j) noise.breakpoints.push_back(rational_field(b, where));
  if (noise.breakpoints.size() < 2 || noise.breakpoints.front() != Rational(0) ||
      noise.breakpoints.back() != Rational(1))
    throw FileFormatError(where + ": breakpoints must start at 0 and end at 1");
  for (std::size_t i = 0; i + 1 < noise.breakpoints.size(); ++i)
    if (!(noise.breakpoints[i] < noise.breakpoints[i + 1]))
      throw FileFormatError(where + ": breakpoints must be strictly increasing");
  return noise;
}

}  // namespace

ordered_json scenario_to_json(const Scenario& s) {
  ordered_json j;
  j["name"] = s.name;
  j["lambda"] = ordered_json::array();
  for (const auto& p : s.lambda.points)
    j["lambda"].push_back({{"id", p.id}, {"weight", p.weight.str()}});
  j["parties"] = s.parties;
  j["measurements"] = ordered_json::array();
  for (const auto& m : s.measurements) {
    ordered_json mj{{"id", m.id}, {"party", m.party}, {"outcomes", m.outcomes}};
    if (m.values) {
      ordered_json vals = ordered_json::array();
      for (const auto& v : *m.values) vals.push_back(v.str());
      mj["values"] = std::move(vals);
    }
    j["measurements"].push_back(std::move(mj));
  }
  j["contexts"] = ordered_json::array();
  for (const auto& ctx : s.contexts) {
    ordered_json cj{{"id", ctx.id}, {"measurements", ctx.measurement_ids}};
    ordered_json table = ordered_json::object();
    for (const auto& p : s.lambda.points) {
      auto it = ctx.table.find(p.id);
      if (it == ctx.table.end()) continue;
      ordered_json row = ordered_json::object();
      for (std::size_t r = 0; r < it->second.size(); ++r)
        if (!it->second[r].is_zero()) row[tuple_label(s, ctx, r)] = it->second[r].str();
      table[p.id] = std::move(row);
    }
    cj["table"] = std::move(table);
    j["contexts"].push_back(std::move(cj));
  }
  return j;
}

Scenario scenario_from_json(const ordered_json& j) {
  Scenario s;
  s.name = require_string(j, "name", "scenario");
  for (const auto& pj : require(j, "lambda", "scenario")) {
    LambdaPoint p;
    p.id = require_string(pj, "id", "lambda");
    p.weight = rational_field(require(pj, "weight", "lambda[" + p.id + "]"),
                              "lambda[" + p.id + "].weight");
    s.lambda.points.push_back(std::move(p));
  }
  for (const auto& pj : require(j, "parties", "scenario")) {
    if (!pj.is_string()) throw FileFormatError("parties: entries must be strings");
    s.parties.push_back(pj.get<std::string>());
  }
  for (const auto& mj : require(j, "measurements", "scenario")) {
    Measurement m;
    m.id = require_string(mj, "id", "measurement");
    std::string where = "measurements[" + m.id + "]";
    m.party = require_string(mj, "party", where);
    for (const auto& o : require(mj, "outcomes", where)) {
      if (!o.is_string()) throw FileFormatError(where + ": outcomes must be strings");
      m.outcomes.push_back(o.get<std::string>());
    }
    if (auto it = mj.find("values"); it != mj.end()) {
      std::vector<Rational> vals;
      for (const auto& v : *it) vals.push_back(rational_field(v, where + ".values"));
      m.values = std::move(vals);
    }
    s.measurements.push_back(std::move(m));
  }
  for (const auto& cj : require(j, "contexts", "scenario")) {
    Context ctx;
    ctx.id = require_string(cj, "id", "context");
    std::string where = "contexts[" + ctx.id + "]";
    for (const auto& mid : require(cj, "measurements", where)) {
      if (!mid.is_string()) throw FileFormatError(where + ": measurement ids must be strings");
      ctx.measurement_ids.push_back(mid.get<std::string>());
    }
    std::size_t n = 1;
    for (const auto& mid : ctx.measurement_ids) {
      const auto* m = s.find_measurement(mid);
      if (!m) throw FileFormatError(where + ": unknown measurement '" + mid + "'");
      n *= m->outcomes.size();
    }
    const auto& table = require(cj, "table", where);
    if (!table.is_object()) throw FileFormatError(where + ": table must be an object");
    for (auto it = table.begin(); it != table.end(); ++it) {
      std::vector<Rational> row(n, Rational(0));
      std::string lwhere = where + ".table[" + it.key() + "]";
      for (auto e = it->begin(); e != it->end(); ++e) {
        std::size_t rank;
        try {
          rank = label_to_rank(s, ctx, e.key());
        } catch (const LookupError& err) {
          throw FileFormatError(lwhere + ": " + err.what());
        }
        row[rank] = rational_field(*e, lwhere + "[" + e.key() + "]");
      }
      ctx.table[it.key()] = std::move(row);
    }
    s.contexts.push_back(std::move(ctx));
  }
  return s;
}

ordered_json augmented_to_json(const AugmentedScenario& aug) {
  ordered_json j = scenario_to_json(aug.base);
  ordered_json noise{{"breakpoints", breakpoints_to_json(aug.noise)}};
  if (aug.shared_noise) noise["shared"] = true;
  j["noise"] = std::move(noise);
  ordered_json responses = ordered_json::object();
  for (const auto& ctx : aug.base.contexts) {
    auto it = aug.responses.find(ctx.id);
    if (it == aug.responses.end()) continue;
    ordered_json rows = ordered_json::object();
    for (const auto& p : aug.base.lambda.points) {
      ordered_json cells = ordered_json::array();
      for (std::size_t rank : it->second.rows.at(p.id))
        cells.push_back(tuple_label(aug.base, ctx, rank));
      rows[p.id] = std::move(cells);
    }
    responses[ctx.id] = std::move(rows);
  }
  j["responses"] = std::move(responses);
  return j;
}

AugmentedScenario augmented_from_json(const ordered_json& j) {
  AugmentedScenario aug;
  aug.base = scenario_from_json(j);
  const auto& noise = require(j, "noise", "augmented scenario");
  aug.noise = breakpoints_from_json(require(noise, "breakpoints", "noise"), "noise.breakpoints");
  if (auto it = noise.find("shared"); it != noise.end() && it->is_boolean())
    aug.shared_noise = it->get<bool>();
  const auto& responses = require(j, "responses", "augmented scenario");
  for (auto it = responses.begin(); it != responses.end(); ++it) {
    const auto* ctx = aug.base.find_context(it.key());
    if (!ctx) throw FileFormatError("responses: unknown context '" + it.key() + "'");
    ResponseTable rt;
    for (auto row = it->begin(); row != it->end(); ++row) {
      std::vector<std::size_t> cells;
      for (const auto& label : *row) {
        if (!label.is_string())
          throw FileFormatError("responses[" + it.key() + "]: outcomes must be strings");
        cells.push_back(label_to_rank(aug.base, *ctx, label.get<std::string>()));
      }
      if (cells.size() != aug.noise.cell_count())
        throw FileFormatError("responses[" + it.key() + "][" + row.key() +
                              "]: expected one outcome per noise cell");
      rt.rows[row.key()] = std::move(cells);
    }
    aug.responses[it.key()] = std::move(rt);
  }
  return aug;
}

ordered_json factorized_to_json(const FactorizedModel& fm) {
  ordered_json j = scenario_to_json(fm.base);
  ordered_json xi = ordered_json::object();
  for (const auto& party : fm.base.parties) {
    auto it = fm.xi.find(party);
    if (it != fm.xi.end()) xi[party] = {{"breakpoints", breakpoints_to_json(it->second)}};
  }
  j["xi"] = std::move(xi);
  ordered_json responses = ordered_json::object();
  for (const auto& m : fm.base.measurements) {
    auto it = fm.responses.find(m.id);
    if (it == fm.responses.end()) continue;
    ordered_json rows = ordered_json::object();
    for (const auto& p : fm.base.lambda.points) {
      ordered_json cells = ordered_json::array();
      for (std::size_t idx : it->second.rows.at(p.id)) cells.push_back(m.outcomes[idx]);
      rows[p.id] = std::move(cells);
    }
    responses[m.id] = std::move(rows);
  }
  j["responses"] = std::move(responses);
  return j;
}

FactorizedModel factorized_from_json(const ordered_json& j) {
  FactorizedModel fm;
  fm.base = scenario_from_json(j);
  const auto& xi = require(j, "xi", "factorized model");
  for (auto it = xi.begin(); it != xi.end(); ++it)
    fm.xi[it.key()] = breakpoints_from_json(require(*it, "breakpoints", "xi[" + it.key() + "]"),
                                            "xi[" + it.key() + "].breakpoints");
  const auto& responses = require(j, "responses", "factorized model");
  for (auto it = responses.begin(); it != responses.end(); ++it) {
    const auto* m = fm.base.find_measurement(it.key());
    if (!m) throw FileFormatError("responses: unknown measurement '" + it.key() + "'");
    auto xit = fm.xi.find(m->party);
    if (xit == fm.xi.end())
      throw FileFormatError("responses[" + it.key() + "]: no xi partition for party '" +
                            m->party + "'");
    ResponseTable rt;
    for (auto row = it->begin(); row != it->end(); ++row) {
      std::vector<std::size_t> cells;
      for (const auto& label : *row) {
        if (!label.is_string())
          throw FileFormatError("responses[" + it.key() + "]: outcomes must be strings");
        auto pos = std::find(m->outcomes.begin(), m->outcomes.end(), label.get<std::string>());
        if (pos == m->outcomes.end())
          throw FileFormatError("responses[" + it.key() + "]: unknown outcome '" +
                                label.get<std::string>() + "'");
        cells.push_back(static_cast<std::size_t>(pos - m->outcomes.begin()));
      }
      if (cells.size() != xit->second.cell_count())
        throw FileFormatError("responses[" + it.key() + "][" + row.key() +
                              "]: expected one outcome per noise cell");
      rt.rows[row.key()] = std::move(cells);
    }
    fm.responses[it.key()] = std::move(rt);
  }
  return fm;
}

std::string model_to_text(const Model& m) {
  ordered_json j = std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Scenario>) return scenario_to_json(v);
        if constexpr (std::is_same_v<T, AugmentedScenario>) return augmented_to_json(v);
        if constexpr (std::is_same_v<T, FactorizedModel>) return factorized_to_json(v);
      },
      m);
  return j.dump(2) + "\n";
}

Model model_from_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FileFormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FileFormatError("top level must be a JSON object");
  if (j.contains("xi")) return factorized_from_json(j);
  if (j.contains("noise")) return augmented_from_json(j);
  return scenario_from_json(j);
}

Model read_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileFormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return model_from_text(buf.str());
  } catch (const FileFormatError& e) {
    throw FileFormatError(path + ": " + e.what());
  } catch (const RationalError& e) {
    throw FileFormatError(path + ": " + e.what());
  }
}

void write_model_file(const Model& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileFormatError("cannot write '" + path + "'");
  out << model_to_text(m);
}

Model load_input(const std::string& path_or_demo) {
  if (path_or_demo.rfind("demo:", 0) == 0) return build_demo(path_or_demo.substr(5));
  return read_model_file(path_or_demo);
}

std::string render_report_text(const AnalysisReport& report) {
  std::ostringstream out;
  if (report.deterministic) {
    out << "deterministic: " << (*report.deterministic ? "yes" : "no") << "\n";
    if (report.determinism_witness) {
      const auto& w = *report.determinism_witness;
      out << "  witness: context " << w.context_id << ", lambda " << w.lambda_id << ", outcome ("
          << w.outcome_label << "): p = " << w.p.str() << " (~" << w.p.approx() << ")\n";
    }
  }
  if (report.ch_factorizable) {
    out << "CH-factorizable: " << (*report.ch_factorizable ? "yes" : "no") << "\n";
    if (report.ch_witness) {
      const auto& w = *report.ch_witness;
      out << "  witness: context " << w.context_id << ", lambda " << w.lambda_id << ", outcome ("
          << w.outcome_label << "): " << w.lhs.str() << " != " << w.rhs.str()
          << " (joint ~" << w.lhs.approx() << " vs product ~" << w.rhs.approx() << ")\n";
    }
  }
  return out.str();
}

ordered_json render_report_json(const AnalysisReport& report) {
  ordered_json j = ordered_json::object();
  if (report.deterministic) {
    j["deterministic"] = *report.deterministic;
    if (report.determinism_witness) {
      const auto& w = *report.determinism_witness;
      j["determinism_witness"] = {{"context", w.context_id},
                                  {"lambda", w.lambda_id},
                                  {"outcome", w.outcome_label},
                                  {"p", w.p.str()},
                                  {"p_approx", w.p.approx()}};
    }
  }
  if (report.ch_factorizable) {
    j["ch_factorizable"] = *report.ch_factorizable;
    if (report.ch_witness) {
      const auto& w = *report.ch_witness;
      j["ch_witness"] = {{"context", w.context_id}, {"lambda", w.lambda_id},
                         {"outcome", w.outcome_label}, {"lhs", w.lhs.str()},
                         {"rhs", w.rhs.str()},         {"lhs_approx", w.lhs.approx()},
                         {"rhs_approx", w.rhs.approx()}};
    }
  }
  return j;
}

}  // namespace bellfac
