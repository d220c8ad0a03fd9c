#pragma once

#include <ostream>

namespace aspher {

/// Entry point of the `aspher` tool. Exit codes: 0 success or Pass, 1 logical
/// failure, 2 input error, 3 inconclusive.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace aspher
