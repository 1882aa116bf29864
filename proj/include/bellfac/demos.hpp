#pragma once

#include <string>
#include <vector>

#include "bellfac/scenario.hpp"

namespace bellfac {

struct DemoInfo {
  std::string name;
  std::string description;
};

/// Names and one-line descriptions of the built-in scenarios.
const std::vector<DemoInfo>& demo_list();

/// Builds a built-in scenario by name. Throws LookupError listing the
/// available names when the name is unknown.
Scenario build_demo(const std::string& name);

}  // namespace bellfac
