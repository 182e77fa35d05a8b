#pragma once

#include <iosfwd>

#include "carleson/cli/manifest.hpp"

namespace carleson::cli {

enum ExitStatus { kPass = 0, kFail = 1, kError = 2 };

const char* tool_version();

// Runs one subcommand. The verdict table goes to out, followed by the CSV series
// (or their file names when --out-dir is set); diagnostics go to err.
int run(const Invocation& inv, std::ostream& out, std::ostream& err);

// argv front end: parses options, records a manifest with --manifest FILE, or
// replays one when --manifest is given without a subcommand.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace carleson::cli
