#pragma once

#include <iosfwd>

namespace ridgeforge {

// Full command-line surface; reports go to out, diagnostics and errors to
// err. Returns the process exit code: 0 success, 2 usage, 3 numeric
// failure, 4 data error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace ridgeforge
