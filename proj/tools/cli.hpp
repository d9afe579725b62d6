#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curveflow::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kNumerical = 2;
constexpr int kIo = 3;

/// Runs one command line (without the program name). Normal output goes to
/// out; failures print a single "error: <Kind>: <message>" line to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curveflow::cli
