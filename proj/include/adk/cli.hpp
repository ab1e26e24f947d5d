#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adk::cli {

/// Runs one subcommand with `args` being argv without the program name.
/// All structured report lines go to `out`; usage and progress text goes to
/// `err`. Returns the process exit status:
///   0  clean result, no violation found
///   1  a violation, mismatch, or counterexample was found
///   2  usage, parse, or input errors
///   3  refused because the exact oracle's state-space budget was exceeded
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace adk::cli
