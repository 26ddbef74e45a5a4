#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zpindex/json.hpp"

namespace zpindex::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kValidation = 2,
  kBudget = 3,
  kConsistency = 4,
};

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// {"subcommand", "params": {name: scalar}, "output", "seed", "budget": {"nodes", "cells"}}.
/// Parameters are validated by the same parser as the command line.
int run_manifest(const Json& manifest, std::ostream& out, std::ostream& err);

/// Manifest fields turned into command-line arguments.
std::vector<std::string> manifest_arguments(const Json& manifest);

}  // namespace zpindex::cli
