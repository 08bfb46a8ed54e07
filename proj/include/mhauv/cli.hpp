#pragma once

#include <iosfwd>

namespace mhauv::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,     // bad input: config, flags, ranges
    kDiverged = 2,    // simulate: run aborted, partial log written
    kUnsatisfied = 3, // check-gains: twisting conditions violated
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mhauv::cli
