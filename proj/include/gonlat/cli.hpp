#ifndef GONLAT_CLI_HPP
#define GONLAT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gonlat {

/// Runs one `gonlat` invocation. Exit codes: 0 success, 1 property violation
/// (verify), 2 usage or configuration error.
int parse_and_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gonlat

#endif  // GONLAT_CLI_HPP
