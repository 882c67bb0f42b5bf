#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anonq::cli {

// Exit codes: 0 = all checks pass, 1 = violation/witness found, 2 = bad
// input, parse error or inconclusive verdict. stdout carries exactly one JSON
// document per invocation; diagnostics go to stderr.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

}  // namespace anonq::cli
