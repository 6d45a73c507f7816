#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nashatom {

// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerdictFailure = 2;

// Output directory used when --out is not given.
inline constexpr const char* kOutDirEnv = "NASHATOM_OUT_DIR";

// Entry point of the `nashatom` command; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nashatom
