#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polyrad::cli {

enum ExitCode : int { Ok = 0, Violation = 1, InputError = 2, NumericalError = 3 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyrad::cli
