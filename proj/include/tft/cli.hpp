#pragma once

// Command-line front end. run() takes the arguments after the program name
// and writes the whole report to `out`; the last line is always
// "RESULT: PASS ..." or "RESULT: FAIL ...".
//
// Exit codes: 0 pass, 1 an axiom or property failed, 2 bad input (syntax,
// typing, labels, unreadable files, unknown flags).

#include <ostream>
#include <string>
#include <vector>

namespace tft::cli {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace tft::cli
