#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thetaglue::cli {

/*
 * Runs one invocation of the command-line interface.  `args` is argv without
 * the program name.  All regular output goes to `out` (or to the file named
 * by --out), errors to `err`.
 *
 * Exit codes: 0 ok, 1 a checked identity or cross-method comparison failed,
 * 2 unusable invocation (unknown verb/series/method, malformed spec file),
 * 3 an out-of-range numeric argument, 4 work exceeded an internal budget.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}
