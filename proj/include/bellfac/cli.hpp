#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bellfac::cli {

/// Runs one CLI invocation. Exit codes: 0 success or affirmative verdict,
/// 1 negative verdict (indeterministic / not factorizable / invalid model),
/// 2 usage, IO, or malformed-input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bellfac::cli
