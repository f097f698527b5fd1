#pragma once

#include <iosfwd>
#include <string>

#include "spfem/config.hpp"

namespace spfem {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitSolver = 2 };

/// Full text of the output file for `cfg`: commented metadata header
/// followed by the mode's body. Throws on any failure.
std::string render(const RunConfig& cfg);

/// Renders and writes the output file. The file only appears once it is
/// complete; on failure nothing is left behind. Returns an ExitCode.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace spfem
