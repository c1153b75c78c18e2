#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arbor::cli {

/// Runs one CLI invocation. `args` excludes the program name. Results are
/// written to `out` as JSON; failures produce a machine-readable error
/// object {"error":{"code":...,"message":...}} on `err`.
/// Exit status: 0 success, 2 validation error, 3 resource limit.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

} // namespace arbor::cli
