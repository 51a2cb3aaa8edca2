#ifndef BERGM_TOOLS_CLI_HPP_
#define BERGM_TOOLS_CLI_HPP_

#include <ostream>

namespace bergm::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,  // bad flags, model/attribute mismatch, illegal dyads
  kParse = 2,
  kIo = 3,
  kEstimation = 4,
  kDegeneracy = 5,  // only with --strict-degeneracy
};

/// Runs one invocation of the command-line tool. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bergm::cli

#endif  // BERGM_TOOLS_CLI_HPP_
