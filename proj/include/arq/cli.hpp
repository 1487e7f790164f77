// Command-line surface. Every subcommand assembles one JSON report; the text
// format is rendered from that JSON. Exit codes: 0 pass, 1 verification
// failure, 2 usage or precondition error, 3 enumeration cap exceeded.

#pragma once

#include <string>
#include <vector>

namespace arq {

int run_cli(const std::vector<std::string>& args);

}  // namespace arq
