#ifndef QSTAT_CLI_HPP
#define QSTAT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

// Command-line front end. Subcommands: state, sweep, regions, char-temps,
// verify, preset <id>. Exit codes: 0 success, 1 verification failure,
// 2 configuration error, 3 numerical failure.

namespace qstat::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qstat::cli

#endif
