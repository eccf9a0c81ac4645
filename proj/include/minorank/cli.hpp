#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace minorank {

// Runs one command line (args exclude the program name). The JSON report goes
// to `out`, diagnostics to `err`. Exit codes: 0 success, 1 usage or input
// error, 2 RankTooLow / Infeasible / Obstructed, 3 ScaleExceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace minorank
