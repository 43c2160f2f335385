#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace iotrisk::cli {

// Process exit codes.
enum ExitStatus : int {
    kSuccess = 0,
    kAssessmentError = 1,  // invalid model or failed assessment
    kUsageError = 2,       // bad arguments or flag values
};

// Runs the command line `args` (without the program name). The report goes
// to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iotrisk::cli
