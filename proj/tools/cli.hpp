#pragma once

#include "walshlab/report.hpp"

#include <iosfwd>

namespace walshlab::cli {

/// Runs one parsed command. Returns 0 iff every check in scope passed.
/// Reports go to config.out when set, otherwise after the summary on `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to run(). Exit 2 on bad arguments, 3 on
/// capacity errors.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace walshlab::cli
