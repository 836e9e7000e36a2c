#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pcsp/cli/json_io.hpp"
#include "pcsp/core/homomorphism.hpp"

namespace pcsp::cli {

enum ExitCode : int { Found = 0, NotFound = 1, Failure = 2, Timeout = 3 };

/// Caps and deadline, read from a JSON config file with optional keys
/// cells, arity, tuples, chains and deadline (seconds).
struct Settings {
    Caps caps;
    double deadline_seconds = 60.0;
};

Settings load_settings(const std::string& path);

/// A structure path, or "named:<name>[:<param>]" for a built-in structure.
Structure load_structure(const std::string& spec);

/// Runs one verb; `args` excludes the program name. Reports go to `out`
/// (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcsp::cli
