#ifndef SCHLICHT_CLI_HPP
#define SCHLICHT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace schlicht::cli
{

enum ExitCode : int { success = 0, audit_violation = 1, usage_error = 2 };

// Parses `args` (without the program name) and runs the selected command.
// The artifact goes to `out` unless --output names a file, which is then
// written atomically. Diagnostics go to `err`.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace schlicht::cli

#endif
