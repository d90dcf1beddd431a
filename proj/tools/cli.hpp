#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace incidence::cli {

enum ExitCode : int {
  kPass = 0,
  kViolation = 1,
  kUsage = 2,
  kUnknownOrPrecondition = 3,
  kIo = 4,
};

/// Runs one command line (without the program name). Category files are read
/// from paths ("-" is stdin); results go to `out` or to the --output file.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace incidence::cli
