#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropdiff {

// Front-end entry point: `args` excludes the program name. Writes one JSON
// object (single line) to `out` on success and a structured diagnostic on
// failure. Returns the process exit code: 0 for results (including negative
// verdicts), 2 for domain errors, 1 for parse/usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace tropdiff
