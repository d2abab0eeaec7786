#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ladder::cli {

enum ExitCode : int {
    kOk = 0,
    kToleranceViolation = 1,
    kDomainError = 2,
    kConfigError = 3,
};

/// Runs one command line (program name excluded). The report goes to `out`
/// or to the --out path; diagnostics go to `err`. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ladder::cli
