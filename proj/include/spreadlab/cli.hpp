#pragma once
// Command-line front end. Exit codes: 0 all expectations met, 1 an
// expectation failed, 2 usage or input error.

#include <ostream>
#include <string>
#include <vector>

namespace spreadlab::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spreadlab::cli
