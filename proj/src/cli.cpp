#include "bellfac/cli.hpp"

#include <array>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bellfac/analysis.hpp"
#include "bellfac/demos.hpp"
#include "bellfac/determinize.hpp"
#include "bellfac/factorize.hpp"
#include "bellfac/io.hpp"

namespace bellfac::cli {

namespace {

struct Options {
  std::string format = "text";
  std::string input;
  std::string output;
  std::string demo_name;
  std::optional<std::string> context_id;
  std::string contexts_csv;
  bool determinism = false;
  bool factorability = false;
};

bool machine(const Options& opt) { return opt.format == "machine"; }

// Scenario to analyze: plain models as-is, determinized models at the
// gamma level, factorized models at the base lambda level.
Scenario analysis_target(const Model& m) {
  if (const auto* s = std::get_if<Scenario>(&m)) return *s;
  if (const auto* aug = std::get_if<AugmentedScenario>(&m)) return induced_scenario(*aug);
  return std::get<FactorizedModel>(m).base;
}

const Scenario& base_of(const Model& m) {
  if (const auto* s = std::get_if<Scenario>(&m)) return *s;
  if (const auto* aug = std::get_if<AugmentedScenario>(&m)) return aug->base;
  return std::get<FactorizedModel>(m).base;
}

int require_valid(const Scenario& s, std::ostream& err) {
  auto report = validate(s);
  if (report.ok()) return 0;
  err << "invalid scenario: " << report.issues.front().path << ": "
      << report.issues.front().message << "\n";
  return 2;
}

int cmd_validate(const Options& opt, std::ostream& out) {
  auto report = validate(base_of(load_input(opt.input)));
  if (machine(opt)) {
    ordered_json j{{"valid", report.ok()}, {"issues", ordered_json::array()}};
    for (const auto& issue : report.issues)
      j["issues"].push_back({{"path", issue.path}, {"message", issue.message}});
    out << j.dump(2) << "\n";
  } else if (report.ok()) {
    out << "valid\n";
  } else {
    for (const auto& issue : report.issues) out << issue.path << ": " << issue.message << "\n";
  }
  return report.ok() ? 0 : 1;
}

int cmd_check(const Options& opt, std::ostream& out, std::ostream& err) {
  Model m = load_input(opt.input);
  if (int rc = require_valid(base_of(m), err)) return rc;
  bool det = opt.determinism || !opt.factorability;
  bool fac = opt.factorability || !opt.determinism;
  AnalysisReport report = analyze(analysis_target(m), det, fac);
  if (machine(opt))
    out << render_report_json(report).dump(2) << "\n";
  else
    out << render_report_text(report);
  bool affirmative = report.deterministic.value_or(true) && report.ch_factorizable.value_or(true);
  return affirmative ? 0 : 1;
}

int cmd_determinize(const Options& opt, std::ostream& out, std::ostream& err) {
  Model m = load_input(opt.input);
  const auto* s = std::get_if<Scenario>(&m);
  if (!s) {
    err << "determinize expects a plain scenario, not an augmented model\n";
    return 2;
  }
  AugmentedScenario aug = determinize(*s, opt.context_id);
  write_model_file(aug, opt.output);
  if (!machine(opt))
    out << "wrote " << opt.output << " (" << aug.noise.cell_count() << " noise cells)\n";
  else
    out << ordered_json{{"output", opt.output}, {"cells", aug.noise.cell_count()}}.dump(2) << "\n";
  return 0;
}

int cmd_factorize(const Options& opt, std::ostream& out, std::ostream& err) {
  Model m = load_input(opt.input);
  const auto* s = std::get_if<Scenario>(&m);
  if (!s) {
    err << "factorize expects a plain scenario, not an augmented model\n";
    return 2;
  }
  auto result = factorize_independent(*s);
  if (const auto* nf = std::get_if<NotFactorizable>(&result)) {
    AnalysisReport report;
    report.ch_factorizable = false;
    report.ch_witness = nf->witness;
    if (machine(opt))
      out << render_report_json(report).dump(2) << "\n";
    else
      out << render_report_text(report);
    return 1;
  }
  const auto& fm = std::get<FactorizedModel>(result);
  write_model_file(fm, opt.output);
  if (!machine(opt))
    out << "wrote " << opt.output << "\n";
  else
    out << ordered_json{{"output", opt.output}}.dump(2) << "\n";
  return 0;
}

int cmd_chsh(const Options& opt, std::ostream& out, std::ostream& err) {
  Model m = load_input(opt.input);
  const Scenario& s = base_of(m);
  if (int rc = require_valid(s, err)) return rc;

  std::array<std::string, 4> ids;
  if (!opt.contexts_csv.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(opt.contexts_csv);
    std::string part;
    while (std::getline(ss, part, ',')) parts.push_back(part);
    if (parts.size() != 4) {
      err << "--contexts expects exactly 4 comma-separated context ids\n";
      return 2;
    }
    std::copy(parts.begin(), parts.end(), ids.begin());
  } else if (s.contexts.size() == 4) {
    for (std::size_t i = 0; i < 4; ++i) ids[i] = s.contexts[i].id;
  } else {
    err << "scenario has " << s.contexts.size() << " contexts; pass --contexts C11,C12,C21,C22\n";
    return 2;
  }

  Rational value = chsh(s, ids);
  if (machine(opt))
    out << ordered_json{{"S", value.str()}, {"S_approx", value.approx()}}.dump(2) << "\n";
  else
    out << "S = " << value.str() << " (~" << value.approx() << ")\n";
  return 0;
}

int cmd_demo(const Options& opt, std::ostream& out) {
  Scenario s = build_demo(opt.demo_name);
  if (opt.output.empty()) {
    out << model_to_text(s);
  } else {
    write_model_file(s, opt.output);
    out << "wrote " << opt.output << "\n";
  }
  return 0;
}

int cmd_list_demos(const Options& opt, std::ostream& out) {
  if (machine(opt)) {
    ordered_json j = ordered_json::array();
    for (const auto& d : demo_list()) j.push_back({{"name", d.name}, {"description", d.description}});
    out << j.dump(2) << "\n";
  } else {
    for (const auto& d : demo_list()) out << d.name << ": " << d.description << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact workbench for finite hidden-variable models: determinism, "
               "Clauser-Horne factorability, determinizing noise, and CHSH values"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "Check every structural invariant");
  validate_cmd->add_option("input", opt.input, "Scenario file or demo:NAME")->required();

  auto* check_cmd = app.add_subcommand("check", "Decide determinism and CH factorability");
  check_cmd->add_option("input", opt.input, "Scenario file or demo:NAME")->required();
  check_cmd->add_flag("--determinism", opt.determinism, "Only the determinism check");
  check_cmd->add_flag("--factorability", opt.factorability, "Only the factorability check");

  auto* det_cmd = app.add_subcommand("determinize", "Construct the determinizing noise");
  det_cmd->add_option("input", opt.input, "Scenario file or demo:NAME")->required();
  det_cmd->add_option("-o,--output", opt.output, "Augmented output file")->required();
  std::string ctx_opt;
  auto* ctx_flag = det_cmd->add_option("--context", ctx_opt, "Determinize this context only");

  auto* fac_cmd = app.add_subcommand("factorize", "Construct independent per-party noises");
  fac_cmd->add_option("input", opt.input, "Scenario file or demo:NAME")->required();
  fac_cmd->add_option("-o,--output", opt.output, "Factorized output file")->required();

  auto* chsh_cmd = app.add_subcommand("chsh", "Exact CHSH value S");
  chsh_cmd->add_option("input", opt.input, "Scenario file or demo:NAME")->required();
  chsh_cmd->add_option("--contexts", opt.contexts_csv,
                       "Context ids as C11,C12,C21,C22 (default: the scenario's 4 contexts)");

  auto* demo_cmd = app.add_subcommand("demo", "Write a built-in scenario");
  demo_cmd->add_option("name", opt.demo_name, "Demo name")->required();
  demo_cmd->add_option("-o,--output", opt.output, "Output file (default: stdout)");

  app.add_subcommand("list-demos", "List built-in scenarios");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (*ctx_flag) opt.context_id = ctx_opt;

  try {
    if (validate_cmd->parsed()) return cmd_validate(opt, out);
    if (check_cmd->parsed()) return cmd_check(opt, out, err);
    if (det_cmd->parsed()) return cmd_determinize(opt, out, err);
    if (fac_cmd->parsed()) return cmd_factorize(opt, out, err);
    if (chsh_cmd->parsed()) return cmd_chsh(opt, out, err);
    if (demo_cmd->parsed()) return cmd_demo(opt, out);
    return cmd_list_demos(opt, out);
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
}

}  // namespace bellfac::cli
