#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wgschwarz/config.hpp"

namespace wgs {

extern const std::vector<std::string>& command_names();

// Runs one CLI command against a resolved config. Outputs land in
// config.out_dir together with a manifest; --dry-run only validates and
// reports. Exit codes: 0 ok, 2 config error, 3 numeric error, 4 check failed.
int run_command(const std::string& command, const RunConfig& config, std::ostream& out,
                std::ostream& err);

}  // namespace wgs
