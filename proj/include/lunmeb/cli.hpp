#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lunmeb {

// Runs the command-line driver on an argv-style argument list (program name
// excluded) and writes human-readable or JSON reports to `out`.
//
// Exit codes:
//   0  success (for `basis verify`: every condition passed)
//   1  malformed input (unreadable file, bad JSON, unparsable option value)
//   2  well-formed but invalid input (validation or verification failure)
//   3  extension search exhausted without finding a new member
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lunmeb
