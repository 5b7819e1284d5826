#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arithdyn {

constexpr int kExitDefinite = 0;
constexpr int kExitInputError = 1;
constexpr int kExitUnknown = 2;

/// Runs one command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`. Returns 0 on a definite answer, 2 on Unknown, 1 on
/// input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "log(N)" or a decimal.
double parse_height_bound(const std::string& text);

}  // namespace arithdyn
