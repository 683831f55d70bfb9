#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wrinkle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // domain or model failure
inline constexpr int kExitUsage = 2;    // bad arguments or config

/// First line of every sweep CSV.
inline constexpr const char* kSweepSchema = "# wrinkle-sweep v1";

/// Runs the command line; args exclude the program name. Output files go to
/// --out, else $WRINKLE_OUTPUT_DIR, else the config's sweep.output_dir.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wrinkle::cli
