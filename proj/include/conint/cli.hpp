#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conint {

/// The `conint` command line: scan, vqe, spectrum, fcidump, selftest.
/// `args` excludes the program name. Returns 0 on success, 2 for usage
/// errors (unknown flags, malformed config) and 1 for runtime failures;
/// every failure writes one diagnostic line to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conint
