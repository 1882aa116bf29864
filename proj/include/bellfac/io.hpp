#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "bellfac/analysis.hpp"
#include "bellfac/determinize.hpp"
#include "bellfac/factorize.hpp"
#include "bellfac/scenario.hpp"

namespace bellfac {

using ordered_json = nlohmann::ordered_json;

/// Thrown when a model file is structurally malformed.
class FileFormatError : public std::runtime_error {
 public:
  explicit FileFormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Any loadable model: a plain scenario, a determinized scenario (extra keys
/// "noise" and "responses"), or a factorized one (keys "xi" and "responses").
using Model = std::variant<Scenario, AugmentedScenario, FactorizedModel>;

ordered_json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const ordered_json& j);

ordered_json augmented_to_json(const AugmentedScenario& aug);
AugmentedScenario augmented_from_json(const ordered_json& j);

ordered_json factorized_to_json(const FactorizedModel& fm);
FactorizedModel factorized_from_json(const ordered_json& j);

/// Canonical text form: keys in schema order, table entries in canonical
/// enumeration order, zeros omitted, 2-space indent, trailing newline.
/// Write-then-read round-trips byte-identically.
std::string model_to_text(const Model& m);
Model model_from_text(const std::string& text);

Model read_model_file(const std::string& path);
void write_model_file(const Model& m, const std::string& path);

/// Resolves "demo:NAME" through the built-in scenarios, anything else as a
/// file path.
Model load_input(const std::string& path_or_demo);

std::string render_report_text(const AnalysisReport& report);
ordered_json render_report_json(const AnalysisReport& report);

}  // namespace bellfac
