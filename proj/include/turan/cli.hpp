#pragma once
// Command-line front end. run() is the whole program so tests can drive
// subcommands in-process. Exit codes: 0 ok, 1 check failed, 2 input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace turan::cli {

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, char** argv);

}  // namespace turan::cli
